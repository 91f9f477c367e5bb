#pragma once

#include "affst/cone.hpp"
#include "affst/sphere.hpp"

namespace affst {

/// Decomposition X = P + T * Ginv(y) of a point of a C-convex domain:
/// cosmological time, normal projection and projecting normal.
struct CosmoChart {
    double T = 0.0;
    Vec3 P;
    Vec2 y;
    bool low_confidence = false;  // projecting normal within 2h of the boundary
};

/// Piecewise-straight future-directed causal curve.
struct CausalCurve {
    std::vector<Vec3> vertices;
};

/// Chart of X in K = epi(s*): T by bisection of the strictly increasing
/// t -> (s+t w)*(pi(X)), y from the Fenchel-equality argmax at T (sub-grid
/// refined), P by the inverse Gauss map of the gauge surface.
CosmoChart cosmological_chart(const SupportFunction& s, const GaugeFunction& omega, const Vec3& X,
                              double t_cap = 1e9);

/// grad T(X) = (y,-1)/w(y), with y the projecting normal of X.
Vec3 cosmo_gradient(const SupportFunction& s, const GaugeFunction& omega, const Vec3& X);

/// Level hypersurface graph (s+t w)* on a window; a future-convex Cauchy
/// surface of (K,C) for every t > 0.
GridFunction level_set(const SupportFunction& s, const GaugeFunction& omega, double t,
                       const Window& window, int resolution);

/// Pseudo-Finsler gauge norm F(V) = -nu * w(v/nu) for future V = (v,nu);
/// zero on null vectors, throws on spacelike or past-directed input.
double finsler_norm(const GaugeFunction& omega, const Vec3& V);

/// rho(X0,X1) = F(X1-X0), attained by the straight segment.
double causal_distance(const GaugeFunction& omega, const Vec3& X0, const Vec3& X1);

/// Sum of segment norms; throws naming the first non-causal segment.
double curve_length(const GaugeFunction& omega, const CausalCurve& curve);

}  // namespace affst
