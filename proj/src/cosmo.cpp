#include "affst/cosmo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace affst {

namespace {

/// (s + t w)*(x), boundary samples included (the gauge trace vanishes there).
ConjugateValue leaf_value(const SupportFunction& s, const GaugeFunction& omega, double t,
                          const Vec2& x) {
    return conjugate_at(s.s, x, true, &omega.omega(), t);
}

/// Support value of the section: sup over Omega* samples of x.y; below 1 for
/// x in Omega by polarity, crosses 1 at the boundary.
double section_support(const GaugeFunction& omega, const Vec2& x) {
    const auto& dom = omega.domain();
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& y : dom.nodes()) best = std::max(best, x.dot(y));
    for (const auto& b : dom.boundary_nodes()) best = std::max(best, x.dot(b));
    return best;
}

}  // namespace

CosmoChart cosmological_chart(const SupportFunction& s, const GaugeFunction& omega, const Vec3& X,
                              double t_cap) {
    double margin = 0.0;
    if (!point_in_domain(s, X, &margin))
        throw std::invalid_argument("cosmological_chart: X outside K (margin " +
                                    std::to_string(margin) + ")");
    const Vec2 x = X.head();
    const double lambda = X.z;
    double t_lo = 0.0;
    double t_hi = 1.0;
    while (leaf_value(s, omega, t_hi, x).value <= lambda) {
        t_lo = t_hi;
        t_hi *= 2.0;
        if (t_hi > t_cap)
            throw std::invalid_argument("cosmological_chart: time exceeds the bisection cap");
    }
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (t_lo + t_hi);
        (leaf_value(s, omega, mid, x).value <= lambda ? t_lo : t_hi) = mid;
    }
    CosmoChart chart;
    chart.T = 0.5 * (t_lo + t_hi);
    ConjugateValue cv = leaf_value(s, omega, chart.T, x);
    chart.y = cv.argmax;
    const auto& dom = omega.domain();
    chart.low_confidence =
        cv.argmax_node < 0 || dom.shape().boundary_distance(chart.y) <= 2.0 * dom.spacing();
    chart.P = X - chart.T * omega.surface_point(chart.y);
    return chart;
}

Vec3 cosmo_gradient(const SupportFunction& s, const GaugeFunction& omega, const Vec3& X) {
    CosmoChart chart = cosmological_chart(s, omega, X);
    double w = omega.value_at(chart.y);
    return Vec3(chart.y, -1.0) * (1.0 / w);
}

GridFunction level_set(const SupportFunction& s, const GaugeFunction& omega, double t,
                       const Window& window, int resolution) {
    if (!(t > 0.0)) throw std::invalid_argument("level_set: t must be positive");
    if (!s.s.domain->same_lattice(omega.domain()))
        throw std::invalid_argument("level_set: support and gauge live on different grids");
    GridFunction sum = s.s;
    for (int k = 0; k < sum.domain->node_count(); ++k) sum.values[k] += t * omega.omega().values[k];
    // gauge trace vanishes: the boundary trace of the sum is that of s
    return legendre_transform(sum, window, resolution);
}

double finsler_norm(const GaugeFunction& omega, const Vec3& V) {
    double scale = V.norm();
    if (scale == 0.0) return 0.0;
    double h = omega.domain().spacing();
    if (V.z < 0.0)
        throw std::invalid_argument("finsler_norm: past-directed vector");
    if (V.z <= 1e-14 * scale) {
        if (V.head().norm() > 1e-12 * scale)
            throw std::invalid_argument("finsler_norm: spacelike vector (nu = 0, v != 0)");
        return 0.0;
    }
    Vec2 x = V.head() / V.z;
    double sigma = section_support(omega, x);
    if (sigma > 1.0 + h)
        throw std::invalid_argument("finsler_norm: spacelike vector (direction outside the section)");
    if (sigma >= 1.0 - h) return 0.0;  // null within grid tolerance
    double w = radial_profile(omega, x);
    return -V.z * w;
}

double causal_distance(const GaugeFunction& omega, const Vec3& X0, const Vec3& X1) {
    try {
        return finsler_norm(omega, X1 - X0);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("causal_distance: X1 not in the causal future of X0");
    }
}

double curve_length(const GaugeFunction& omega, const CausalCurve& curve) {
    if (curve.vertices.size() < 2)
        throw std::invalid_argument("curve_length: need at least two vertices");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < curve.vertices.size(); ++i) {
        try {
            total += finsler_norm(omega, curve.vertices[i + 1] - curve.vertices[i]);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("curve_length: segment " + std::to_string(i) +
                                        " is not future-directed causal");
        }
    }
    return total;
}

}  // namespace affst
