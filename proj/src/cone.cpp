#include "affst/cone.hpp"

#include <algorithm>
#include <cmath>

namespace affst {

ShapeSpec polar_shape(const Shape& omega) {
    if (const auto* b = std::get_if<Ball>(&omega.spec())) {
        return Ball{1.0 / b->radius};
    }
    if (const auto* e = std::get_if<Ellipse>(&omega.spec())) {
        return Ellipse{1.0 / e->a, 1.0 / e->b};
    }
    // polygon: polar of conv(v_i) is the intersection of { y : v_i.y <= 1 };
    // its vertices solve adjacent pairs of active constraints.
    const auto& v = std::get<Polygon>(omega.spec()).vertices;
    Polygon out;
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        double det = a.x * b.y - a.y * b.x;
        if (std::abs(det) < 1e-14) throw std::invalid_argument("polar: collinear adjacent vertices");
        out.vertices.push_back({(b.y - a.y) / det, (a.x - b.x) / det});
    }
    return out;
}

GridDomainPtr polar_domain(const GridDomain& omega, int resolution) {
    return make_domain(polar_shape(omega.shape()), resolution, omega.dim());
}

ConeSpec::ConeSpec(GridDomainPtr omega_, int star_resolution) : omega(std::move(omega_)) {
    omega_star = polar_domain(*omega, star_resolution);
}

bool ConeSpec::in_cone(const Vec3& V, double slack) const {
    if (V.z <= 0.0) return false;
    return omega->shape().gauge(V.head() / V.z) < 1.0 + slack;
}

CausalClass classify_hyperplane(const ConeSpec& cone, const Vec3& Y) {
    double scale = Y.norm();
    if (scale == 0.0) throw std::invalid_argument("classify_hyperplane: zero covector");
    CausalClass out;
    out.covector = Y;
    if (std::abs(Y.z) <= 1e-12 * scale) {
        out.kind = Causality::Other;  // contains the vertical direction
        return out;
    }
    // normalise through -Y when needed so the last coordinate is negative
    Vec3 Z = Y.z < 0 ? Y : -Y;
    Vec2 y = Z.head() / (-Z.z);
    out.section = y;
    const Shape& star = cone.omega_star->shape();
    double h = cone.omega_star->spacing();
    if (star.boundary_distance(y) <= h) {
        out.kind = Causality::Null;
    } else if (star.gauge(y) < 1.0) {
        out.kind = Causality::Spacelike;
    } else {
        out.kind = Causality::Other;
    }
    return out;
}

SupportFunction::SupportFunction(ConeSpec cone_, GridFunction s_)
    : cone(std::move(cone_)), s(std::move(s_)) {
    if (s.domain.get() != cone.omega_star.get() && !s.domain->same_lattice(*cone.omega_star))
        throw std::invalid_argument("support function: grid does not live on Omega*");
}

/// Conjugate evaluation skipping masked nodes of transported supports.
static double masked_conjugate(const SupportFunction& s, const Vec2& x) {
    if (s.valid.empty()) return conjugate_at(s.s, x).value;
    const auto& d = *s.s.domain;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < d.node_count(); ++k) {
        if (!s.valid[k]) continue;
        best = std::max(best, x.dot(d.node(k)) - s.s.values[k]);
    }
    if (s.s.has_boundary()) {
        const auto& bn = d.boundary_nodes();
        for (std::size_t b = 0; b < bn.size(); ++b)
            best = std::max(best, x.dot(bn[b]) - s.s.boundary_values[b]);
    }
    return best;
}

GridFunction domain_from_support(const SupportFunction& s, const Window& window, int resolution) {
    if (s.valid.empty()) return legendre_transform(s.s, window, resolution);
    auto dom = window_domain(window, resolution, s.s.domain->dim());
    GridFunction g(dom);
    for (int k = 0; k < dom->node_count(); ++k) g.values[k] = masked_conjugate(s, dom->node(k));
    g.boundary_values.reserve(dom->boundary_nodes().size());
    for (const auto& b : dom->boundary_nodes()) g.boundary_values.push_back(masked_conjugate(s, b));
    certify_convexity(g);
    return g;
}

bool point_in_domain(const SupportFunction& s, const Vec3& X, double* margin) {
    double f = masked_conjugate(s, X.head());
    if (margin) *margin = X.z - f;
    return X.z > f;
}

SupportFunction support_from_points(const ConeSpec& cone, const std::vector<Vec3>& points) {
    if (points.empty()) throw std::invalid_argument("support_from_points: empty point list");
    auto dom = cone.omega_star;
    GridFunction s(dom);
    auto sup_at = [&](const Vec2& y) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& X : points) best = std::max(best, pair_down(X, y));
        return best;
    };
    for (int k = 0; k < dom->node_count(); ++k) s.values[k] = sup_at(dom->node(k));
    s.boundary_values.reserve(dom->boundary_nodes().size());
    for (const auto& b : dom->boundary_nodes()) s.boundary_values.push_back(sup_at(b));
    certify_convexity(s);
    return SupportFunction(cone, std::move(s));
}

Vec3 inverse_gauss(const SupportFunction& sf, const Vec2& y) {
    const auto& d = *sf.s.domain;
    if (!d.shape().contains(y))
        throw std::invalid_argument("inverse_gauss: y outside Omega*");
    const double h = d.spacing();
    int k = sf.s.nearest_node(y);
    auto [i, j] = d.node_ij(k);
    int kp = d.node_index(i + 1, j), km = d.node_index(i - 1, j);
    int jp = d.node_index(i, j + 1), jm = d.node_index(i, j - 1);
    if (kp < 0 || km < 0 || jp < 0 || jm < 0)
        throw std::invalid_argument("inverse_gauss: y too close to the boundary for the stencil");
    double fwd_x = (sf.s.values[kp] - sf.s.values[k]) / h;
    double bwd_x = (sf.s.values[k] - sf.s.values[km]) / h;
    double fwd_y = (sf.s.values[jp] - sf.s.values[k]) / h;
    double bwd_y = (sf.s.values[k] - sf.s.values[jm]) / h;
    // a C^2 function has one-sided slope gaps O(h * Hess); a crease keeps an
    // O(1) gap at every resolution, seen against the slope scale
    double kink = std::max(std::abs(fwd_x - bwd_x), std::abs(fwd_y - bwd_y));
    double lip = sf.s.lipschitz_estimate();
    if (kink > std::max(0.15 * lip, 1e3 * std::numeric_limits<double>::epsilon()))
        throw std::invalid_argument("inverse_gauss: subdifferential not a singleton at y");
    Vec2 grad{0.5 * (fwd_x + bwd_x), 0.5 * (fwd_y + bwd_y)};
    double sy = sf.s.interpolate_or_nearest(y);
    return Vec3(grad, grad.dot(y) - sy);
}

std::vector<Vec2> gauss_map(const SupportFunction& sf, const Vec3& X) {
    const Vec2 x = X.head();
    double f = masked_conjugate(sf, x);
    // first-order bound on the discrete Fenchel-equality error at (x, node):
    // the conjugate is exact at nodes up to the nearest-node gap, whose slope
    // scale is 1 + |x| (the global Lipschitz constant over-rejects here, the
    // gauge slopes blow up at the boundary)
    double h = sf.s.domain->spacing();
    double tol = std::max(4.0 * h * (1.0 + x.norm()), 1e-9);
    if (std::abs(X.z - f) > tol)
        throw std::invalid_argument("gauss_map: X not on the boundary graph");
    // y in dsub s*(x)  <=>  s(y) + s*(x) = x.y (Fenchel equality), scanned on
    // the Omega* lattice.
    std::vector<Vec2> out;
    const auto& d = *sf.s.domain;
    for (int k = 0; k < d.node_count(); ++k) {
        if (!sf.node_valid(k)) continue;
        const Vec2 y = d.node(k);
        if (std::abs(sf.s.values[k] + f - x.dot(y)) <= tol) out.push_back(y);
    }
    return out;
}

SupportFunction minkowski_sum_support(const SupportFunction& s1, const SupportFunction& s2) {
    if (!s1.s.domain->same_lattice(*s2.s.domain))
        throw std::invalid_argument("minkowski_sum_support: mismatched grids");
    GridFunction sum = s1.s;
    for (int k = 0; k < sum.domain->node_count(); ++k) sum.values[k] += s2.s.values[k];
    if (s1.s.has_boundary() && s2.s.has_boundary()) {
        for (std::size_t b = 0; b < sum.boundary_values.size(); ++b)
            sum.boundary_values[b] += s2.s.boundary_values[b];
    } else {
        sum.boundary_values.clear();
    }
    certify_convexity(sum);
    return SupportFunction(s1.cone, std::move(sum));
}

bool HalfspaceFamily::contains(const Vec3& X, double slack) const {
    if (unbounded) return true;
    for (std::size_t i = 0; i < directions.size(); ++i)
        if (pair_down(X, directions[i]) >= offsets[i] - slack) return false;
    return true;
}

HalfspaceFamily cauchy_development_halfspaces(const std::vector<double>& g,
                                              const GridDomain& omega_star) {
    const auto& bn = omega_star.boundary_nodes();
    if (g.size() != bn.size())
        throw std::invalid_argument("cauchy_development: sample count mismatch");
    for (double v : g)
        if (!std::isfinite(v)) throw std::invalid_argument("cauchy_development: non-finite value");
    HalfspaceFamily out;
    out.directions = bn;
    out.offsets = g;
    return out;
}

HalfspaceFamily cauchy_development_whole_space() {
    HalfspaceFamily out;
    out.unbounded = true;
    return out;
}

}  // namespace affst
