#pragma once

#include <string>
#include <vector>

#include "affst/convex.hpp"

namespace affst {

/// Validation report for the gauge support axioms.
struct GaugeReport {
    bool gs1_pass = false;   // positive definite Hessian at interior nodes
    double gs1_min_eig = 0.0;
    int gs1_worst_node = -1;
    bool gs2_pass = false;   // zero boundary trace
    double gs2_max_abs = 0.0;
    int gs2_worst_sample = -1;
    bool gs3_pass = false;   // gradient blow-up toward the boundary
    std::vector<double> gs3_band_max;  // max |grad| per distance band (k-1,k]h
    bool negative_pass = false;        // omega < 0 at interior nodes

    bool pass() const { return gs1_pass && gs2_pass && gs3_pass && negative_pass; }
    std::string summary() const;
};

GaugeReport gauge_validate(const GridFunction& omega);

/// Validated gauge support function with its gradient field and Hessian
/// spectrum; constructible only through a passing report.
class GaugeFunction {
public:
    static GaugeFunction from_grid(GridFunction omega, GaugeReport* report = nullptr);

    const GridFunction& omega() const { return omega_; }
    const GridDomain& domain() const { return *omega_.domain; }
    const Vec2& gradient(int node) const { return grad_[node]; }
    double hessian_min_eig(int node) const { return hess_min_eig_[node]; }

    double value_at(const Vec2& y) const { return omega_.interpolate_or_nearest(y); }
    Vec2 gradient_at(const Vec2& y) const;

    /// Inverse Gauss map of the gauge surface: (grad w(y), grad w(y).y - w(y)).
    Vec3 surface_point(const Vec2& y) const;

private:
    GaugeFunction() = default;
    GridFunction omega_;
    std::vector<Vec2> grad_;
    std::vector<double> hess_min_eig_;
};

struct SolveOptions {
    int max_iter = 4000;     // monotone sweeps plus Newton iterations
    double tol = 1e-3;       // scaled residual target on the >=2h node set
    double init_slope = 1.0; // omega0 = -c * dist(., boundary)
};

struct SolveLogEntry {
    int iter = 0;
    std::string phase;  // "monotone" or "newton"
    double residual = 0.0;
};

struct SolveResult {
    GaugeFunction gauge;
    std::vector<SolveLogEntry> log;
    double final_residual = 0.0;
    int iterations = 0;
};

/// Cheng-Yau gauge: solve det Hess w = (-w)^{-d-2} on Omega*, w|boundary = 0,
/// d = 2. Monotone wide-stencil sweeps reach the convex solution's basin, a
/// Newton polish on the substituted unknown v = w^2 (smooth up to the
/// boundary) delivers the accuracy. Throws SolveError on non-convergence or
/// loss of negativity.
SolveResult solve_affine_sphere(GridDomainPtr omega_star, const SolveOptions& opts = {});

/// w(x) = -1/t with t > 0 solving t = omega*(t x): gauge surface radial
/// profile over the section Omega.
double radial_profile(const GaugeFunction& omega, const Vec2& x);

/// Analytic Minkowski gauge -sqrt(1-|y|^2) sampled on a unit-disk domain,
/// with exact gradient field.
GaugeFunction minkowski_gauge(GridDomainPtr unit_disk);

}  // namespace affst
