#include "affst/convex.hpp"

#include <algorithm>
#include <cmath>

#include "affst/simplex.hpp"

namespace affst {

GridDomainPtr window_domain(const Window& w, int resolution, int dim) {
    if (!w.nondegenerate() && dim == 2) throw std::invalid_argument("window: degenerate rectangle");
    if (dim == 1) {
        if (std::abs(w.lo.x + w.hi.x) > 1e-12)
            throw std::invalid_argument("window: 1-d windows must be symmetric");
        return make_domain(Ball{w.hi.x}, resolution, 1);
    }
    Polygon p;
    p.vertices = {w.lo, {w.hi.x, w.lo.y}, w.hi, {w.lo.x, w.hi.y}};
    return make_domain(p, resolution, 2);
}

Window slope_window(const GridFunction& f) {
    double L = f.lipschitz_estimate() * 1.05 + 2.0 * f.domain->spacing();
    return Window{{-L, -L}, {L, L}};
}

ConjugateValue conjugate_at(const GridFunction& f, const Vec2& z, bool refine,
                            const GridFunction* tilt, double t) {
    const auto& d = *f.domain;
    ConjugateValue out;
    double best = -std::numeric_limits<double>::infinity();
    int bestk = -1;
    for (int k = 0; k < d.node_count(); ++k) {
        double v = z.dot(d.node(k)) - f.values[k];
        if (tilt) v -= t * tilt->values[k];
        if (v > best) {
            best = v;
            bestk = k;
        }
    }
    out.value = best;
    out.argmax = d.node(bestk);
    out.argmax_node = bestk;
    if (f.has_boundary()) {
        const auto& bn = d.boundary_nodes();
        for (std::size_t b = 0; b < bn.size(); ++b) {
            double v = z.dot(bn[b]) - f.boundary_values[b];
            if (tilt && tilt->has_boundary()) v -= t * tilt->boundary_values[b];
            if (v > best) {
                best = v;
                out.value = v;
                out.argmax = bn[b];
                out.argmax_node = -1;
            }
        }
    }
    if (refine && out.argmax_node >= 0 && d.dim() == 2) {
        auto [i, j] = d.node_ij(out.argmax_node);
        double w[3][3];
        bool full = true;
        for (int a = -1; a <= 1 && full; ++a)
            for (int b = -1; b <= 1; ++b) {
                int k = d.node_index(i + a, j + b);
                if (k < 0) {
                    full = false;
                    break;
                }
                double v = z.dot(d.node(k)) - f.values[k];
                if (tilt) v -= t * tilt->values[k];
                w[a + 1][b + 1] = v;
            }
        if (full) {
            double h = d.spacing();
            double gx = (w[2][1] - w[0][1]) / (2 * h);
            double gy = (w[1][2] - w[1][0]) / (2 * h);
            double hxx = (w[2][1] - 2 * w[1][1] + w[0][1]) / (h * h);
            double hyy = (w[1][2] - 2 * w[1][1] + w[1][0]) / (h * h);
            double hxy = (w[2][2] - w[2][0] - w[0][2] + w[0][0]) / (4 * h * h);
            double det = hxx * hyy - hxy * hxy;
            if (det > 0 && hxx < 0) {  // local quadratic is concave: refine the peak
                double dx = -(hyy * gx - hxy * gy) / det;
                double dy = -(-hxy * gx + hxx * gy) / det;
                if (std::abs(dx) <= h && std::abs(dy) <= h) {
                    out.value = w[1][1] + gx * dx + gy * dy +
                                0.5 * (hxx * dx * dx + 2 * hxy * dx * dy + hyy * dy * dy);
                    out.argmax = d.node(out.argmax_node) + Vec2{dx, dy};
                    out.refined = true;
                }
            }
        }
    }
    return out;
}

GridFunction legendre_transform(const GridFunction& f, const Window& window, int dual_resolution) {
    f.check_finite("legendre_transform");
    if (f.domain->node_count() == 0) throw std::invalid_argument("legendre_transform: empty node set");
    auto dom = window_domain(window, dual_resolution, f.domain->dim());
    GridFunction g(dom);
    for (int k = 0; k < dom->node_count(); ++k)
        g.values[k] = conjugate_at(f, dom->node(k)).value;
    g.boundary_values.reserve(dom->boundary_nodes().size());
    for (const auto& b : dom->boundary_nodes())
        g.boundary_values.push_back(conjugate_at(f, b).value);
    certify_convexity(g);
    return g;
}

GridFunction biconjugate(const GridFunction& f) {
    f.check_finite("biconjugate");
    GridFunction star = legendre_transform(f, slope_window(f), f.domain->resolution());
    GridFunction out(f.domain);
    for (int k = 0; k < f.domain->node_count(); ++k)
        out.values[k] = conjugate_at(star, f.domain->node(k)).value;
    if (f.has_boundary()) {
        out.boundary_values.reserve(f.boundary_values.size());
        for (const auto& b : f.domain->boundary_nodes())
            out.boundary_values.push_back(conjugate_at(star, b).value);
    }
    certify_convexity(out);
    return out;
}

double fenchel_tolerance(const GridFunction& f) {
    return 4.0 * f.lipschitz_estimate() * f.domain->spacing();
}

std::vector<Vec2> subdifferential(const GridFunction& f, int node) {
    return subdifferential(f, node, slope_window(f), f.domain->resolution());
}

std::vector<Vec2> subdifferential(const GridFunction& f, int node, const Window& window,
                                  int dual_resolution) {
    if (!f.convexity_certified)
        throw std::invalid_argument("subdifferential: input must be convexity-certified");
    if (node < 0 || node >= f.domain->node_count())
        throw std::invalid_argument("subdifferential: node outside the domain");
    const Vec2 x = f.domain->node(node);
    const double fx = f.values[node];
    const double eps = fenchel_tolerance(f);
    auto dual = window_domain(window, dual_resolution, f.domain->dim());
    std::vector<Vec2> out;
    for (int k = 0; k < dual->node_count(); ++k) {
        const Vec2 y = dual->node(k);
        double fstar = conjugate_at(f, y).value;
        if (std::abs(fx + fstar - x.dot(y)) <= eps) out.push_back(y);
    }
    // lattice order of the dual grid is already lexicographic in (i,j)
    return out;
}

double fenchel_gap(const GridFunction& s, const Vec2& x, const Vec2& y) {
    if (s.domain->shape().gauge(x) > 1.0 + 1e-9)
        throw std::invalid_argument("fenchel_gap: x outside the domain hull");
    double sx = s.interpolate_or_nearest(x);
    double sy = conjugate_at(s, y).value;
    return sx + sy - x.dot(y);
}

MinorantValue envelope_at(const std::vector<double>& g, const GridDomain& dom, const Vec2& y0) {
    const auto& bn = dom.boundary_nodes();
    const int m = static_cast<int>(bn.size());
    const int r = dom.dim() + 1;
    std::vector<std::vector<double>> cols(m);
    for (int i = 0; i < m; ++i) {
        cols[i].resize(r);
        cols[i][0] = bn[i].x;
        if (dom.dim() == 2) cols[i][1] = bn[i].y;
        cols[i][r - 1] = 1.0;
    }
    std::vector<double> rhs(r);
    rhs[0] = y0.x;
    if (dom.dim() == 2) rhs[1] = y0.y;
    rhs[r - 1] = 1.0;
    LpResult lp = solve_equality_lp(cols, g, rhs);
    if (!lp.feasible) throw SolveError("envelope: LP infeasible at interior node", 0.0);
    MinorantValue mv;
    mv.value = lp.value;
    mv.slope = {lp.duals[0], dom.dim() == 2 ? lp.duals[1] : 0.0};
    mv.offset = lp.duals[r - 1];
    return mv;
}

GridFunction envelope_from_boundary(const std::vector<double>& g, GridDomainPtr dom) {
    const auto& bn = dom->boundary_nodes();
    if (g.size() != bn.size())
        throw std::invalid_argument("envelope: sample count does not match boundary nodes");
    if (static_cast<int>(g.size()) < dom->dim() + 1)
        throw std::invalid_argument("envelope: under-determined (need at least d+1 samples)");
    for (double v : g)
        if (!std::isfinite(v)) throw std::invalid_argument("envelope: non-finite boundary value");
    GridFunction out(dom);
    for (int k = 0; k < dom->node_count(); ++k)
        out.values[k] = envelope_at(g, *dom, dom->node(k)).value;
    out.boundary_values = g;
    certify_convexity(out);
    return out;
}

}  // namespace affst
