#pragma once

#include <optional>
#include <vector>

#include "affst/convex.hpp"

namespace affst {

/// Polar section: { y : x.y < 1 for all x in the closure of omega }.
ShapeSpec polar_shape(const Shape& omega);
GridDomainPtr polar_domain(const GridDomain& omega, int resolution);

/// The model cone C over a section Omega together with its computed polar
/// section Omega*; both sections contain the origin.
struct ConeSpec {
    GridDomainPtr omega;
    GridDomainPtr omega_star;

    ConeSpec(GridDomainPtr omega_, int star_resolution);

    /// Membership of a direction in the open cone: last > 0, head/last in Omega.
    bool in_cone(const Vec3& V, double slack = 0.0) const;
};

enum class Causality { Spacelike, Null, Other };

struct CausalClass {
    Causality kind = Causality::Other;
    Vec3 covector;              // the query, as given
    std::optional<Vec2> section;  // normalised point of Omega* when defined
};

/// Classify the linear hyperplane Y-perp: Spacelike (misses the closed cone),
/// Null (touches it in a half-line) or Other. Sign-invariant in Y; covectors
/// with vanishing last coordinate are Other (they contain the cone axis
/// direction for a cone over a bounded section).
CausalClass classify_hyperplane(const ConeSpec& cone, const Vec3& Y);

/// Support function s of a C-convex domain K = epi(s*), as a convex
/// GridFunction on Omega* (optionally with its boundary trace).
struct SupportFunction {
    ConeSpec cone;
    GridFunction s;
    /// Per-node validity (empty = all valid); transported grids mask nodes
    /// whose pull-back leaves the chart.
    std::vector<unsigned char> valid;

    SupportFunction(ConeSpec cone_, GridFunction s_);

    bool node_valid(int k) const { return valid.empty() || valid[k]; }
};

/// f = s* on a window; K = epi(f).
GridFunction domain_from_support(const SupportFunction& s, const Window& window,
                                 int resolution);

/// Membership X in K = epi(s*), via direct conjugate evaluation at pi(X).
bool point_in_domain(const SupportFunction& s, const Vec3& X, double* margin = nullptr);

/// s(y) = max over points of X.(y,-1); represents conv(points) + closure(C).
SupportFunction support_from_points(const ConeSpec& cone, const std::vector<Vec3>& points);

/// Inverse Gauss map (grad s(y), grad s(y).y - s(y)) at a differentiability
/// point; throws when the subdifferential is not a singleton at grid scale.
Vec3 inverse_gauss(const SupportFunction& s, const Vec2& y);

/// Gauss set of a boundary point: subdifferential of s* at pi(X), scanned over
/// the Omega* lattice by Fenchel equality. Nonempty exactly on the spacelike
/// boundary; X counts as spacelike when the set has a point farther than h
/// from the section boundary.
std::vector<Vec2> gauss_map(const SupportFunction& s, const Vec3& X);

/// Minkowski sum K1 + K2 through nodewise sum of support functions.
SupportFunction minkowski_sum_support(const SupportFunction& s1, const SupportFunction& s2);

/// Null supporting half-space family { X.(y,-1) < g(y) } over boundary nodes.
struct HalfspaceFamily {
    std::vector<Vec2> directions;  // boundary nodes y
    std::vector<double> offsets;   // g(y)
    bool unbounded = false;        // flagged g == +infinity: whole space

    bool contains(const Vec3& X, double slack = 0.0) const;
};

HalfspaceFamily cauchy_development_halfspaces(const std::vector<double>& g,
                                              const GridDomain& omega_star);
HalfspaceFamily cauchy_development_whole_space();

}  // namespace affst
