#include "affst/sphere.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace affst {

namespace {

constexpr int kDirs = 4;
const int kDx[kDirs] = {1, 0, 1, 1};
const int kDy[kDirs] = {0, 1, 1, -1};

/// Shortley-Weller legs: neighbour node or boundary anchor (value 0) at the
/// exact shape crossing, per node, per direction, per sign.
struct Legs {
    std::vector<std::array<int, 2 * kDirs>> nbr;
    std::vector<std::array<double, 2 * kDirs>> len;

    explicit Legs(const GridDomain& dom) {
        const int N = dom.node_count();
        nbr.resize(N);
        len.resize(N);
        const double h = dom.spacing();
        for (int k = 0; k < N; ++k) {
            auto [i, j] = dom.node_ij(k);
            for (int d = 0; d < kDirs; ++d) {
                for (int s = 0; s < 2; ++s) {
                    int sgn = s == 0 ? 1 : -1;
                    int slot = 2 * d + s;
                    int kk = dom.node_index(i + sgn * kDx[d], j + sgn * kDy[d]);
                    if (kk >= 0) {
                        nbr[k][slot] = kk;
                        len[k][slot] = h * std::hypot(kDx[d], kDy[d]);
                    } else {
                        Vec2 u{static_cast<double>(sgn * kDx[d]), static_cast<double>(sgn * kDy[d])};
                        u = u / u.norm();
                        nbr[k][slot] = -1;
                        len[k][slot] = std::max(dom.shape().ray_exit(dom.node(k), u), 1e-9);
                    }
                }
            }
        }
    }

    double val(const std::vector<double>& u, int k, int slot) const {
        int kk = nbr[k][slot];
        return kk >= 0 ? u[kk] : 0.0;  // boundary anchor carries the zero trace
    }

    /// second difference along direction d
    double sd(const std::vector<double>& u, int k, int d) const {
        double lp = len[k][2 * d], lm = len[k][2 * d + 1];
        double up = val(u, k, 2 * d), um = val(u, k, 2 * d + 1);
        return 2.0 * ((up - u[k]) / lp + (um - u[k]) / lm) / (lp + lm);
    }

    /// 3-point nonuniform first derivative along direction d (exact on quadratics)
    double fd(const std::vector<double>& u, int k, int d) const {
        double lp = len[k][2 * d], lm = len[k][2 * d + 1];
        double up = val(u, k, 2 * d), um = val(u, k, 2 * d + 1);
        return (lm * lm * up - lp * lp * um + (lp * lp - lm * lm) * u[k]) / (lp * lm * (lp + lm));
    }
};

/// Wide-stencil monotone residual: min over direction pairs of products of
/// second differences, minus the RHS.
double monotone_residual(const Legs& legs, const GridDomain& dom, const std::vector<double>& u,
                         double band) {
    double worst = 0.0;
    for (int k = 0; k < dom.node_count(); ++k) {
        if (dom.node_boundary_distance(k) < band) continue;
        double p1 = legs.sd(u, k, 0) * legs.sd(u, k, 1);
        double p2 = legs.sd(u, k, 2) * legs.sd(u, k, 3);
        double rhs = std::pow(-u[k], -4.0);
        worst = std::max(worst, std::abs(std::min(p1, p2) - rhs) / rhs);
    }
    return worst;
}

/// Gauss-Seidel pass of the monotone scheme; per node the scalar equation
/// 4(A1-x)(A2-x)/(c1 c2) = (-x)^{-4} is solved on x <= min(A1,A2,0) where the
/// left side is the pair product with neighbours frozen. Returns max update.
double monotone_sweep(const Legs& legs, std::vector<double>& u, int N) {
    double maxdelta = 0.0;
    for (int k = 0; k < N; ++k) {
        // the min-scheme root is the min over pairs of the per-pair roots
        double best = std::numeric_limits<double>::infinity();
        for (int pair = 0; pair < 2; ++pair) {
            int d1 = pair == 0 ? 0 : 2;
            int d2 = pair == 0 ? 1 : 3;
            double lp1 = legs.len[k][2 * d1], lm1 = legs.len[k][2 * d1 + 1];
            double lp2 = legs.len[k][2 * d2], lm2 = legs.len[k][2 * d2 + 1];
            double A1 = (lm1 * legs.val(u, k, 2 * d1) + lp1 * legs.val(u, k, 2 * d1 + 1)) / (lp1 + lm1);
            double A2 = (lm2 * legs.val(u, k, 2 * d2) + lp2 * legs.val(u, k, 2 * d2 + 1)) / (lp2 + lm2);
            double cc = lp1 * lm1 * lp2 * lm2;
            double ub = std::min({A1, A2, -1e-12});
            // g(x) = 4(A1-x)(A2-x) - cc (-x)^{-4}, strictly decreasing in x
            double lo = std::min(u[k], ub) - 1.0;
            double g_lo = 4.0 * (A1 - lo) * (A2 - lo) - cc * std::pow(-lo, -4.0);
            while (g_lo < 0.0) {
                lo -= 1.0;
                g_lo = 4.0 * (A1 - lo) * (A2 - lo) - cc * std::pow(-lo, -4.0);
            }
            double hi = ub;
            double x = std::clamp(u[k], lo, hi);
            for (int it = 0; it < 60; ++it) {
                double g = 4.0 * (A1 - x) * (A2 - x) - cc * std::pow(-x, -4.0);
                if (g > 0)
                    lo = x;
                else
                    hi = x;
                double dg = -4.0 * ((A1 - x) + (A2 - x)) + 4.0 * cc * std::pow(-x, -5.0);
                // dg < 0; Newton step with bisection fallback
                double xn = x - g / dg;
                x = (xn > lo && xn < hi) ? xn : 0.5 * (lo + hi);
                if (hi - lo < 1e-14 * (1.0 + std::abs(x))) break;
            }
            best = std::min(best, 0.5 * (lo + hi));
        }
        maxdelta = std::max(maxdelta, std::abs(best - u[k]));
        u[k] = best;
    }
    return maxdelta;
}

}  // namespace

std::string GaugeReport::summary() const {
    std::ostringstream os;
    os << "GS1 " << (gs1_pass ? "pass" : "FAIL") << " (min eig " << gs1_min_eig
       << " at node " << gs1_worst_node << "); GS2 " << (gs2_pass ? "pass" : "FAIL")
       << " (max |boundary| " << gs2_max_abs << "); GS3 " << (gs3_pass ? "pass" : "FAIL")
       << " (bands";
    for (double b : gs3_band_max) os << " " << b;
    os << "); negativity " << (negative_pass ? "pass" : "FAIL");
    return os.str();
}

GaugeReport gauge_validate(const GridFunction& omega) {
    GaugeReport rep;
    const auto& dom = *omega.domain;
    const double h = dom.spacing();
    const int N = dom.node_count();
    Legs legs(dom);

    // GS2: zero boundary trace
    if (omega.has_boundary()) {
        rep.gs2_max_abs = 0.0;
        double scale = 0.0;
        for (double v : omega.values) scale = std::max(scale, std::abs(v));
        for (std::size_t b = 0; b < omega.boundary_values.size(); ++b) {
            double a = std::abs(omega.boundary_values[b]);
            if (a > rep.gs2_max_abs) {
                rep.gs2_max_abs = a;
                rep.gs2_worst_sample = static_cast<int>(b);
            }
        }
        rep.gs2_pass = rep.gs2_max_abs <= 1e-8 * (1.0 + scale);
    }

    // negativity
    rep.negative_pass = true;
    for (double v : omega.values)
        if (v >= 0) rep.negative_pass = false;

    // GS1: Hessian positive definite, checked on the >= 2h band where the
    // stencils are trustworthy (the blow-up makes near-boundary truncation
    // unbounded)
    rep.gs1_min_eig = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int k = 0; k < N; ++k) {
        if (dom.node_boundary_distance(k) < 2.0 * h) continue;
        auto [i, j] = dom.node_ij(k);
        bool full = true;
        for (int d = 0; d < kDirs && full; ++d)
            full = dom.node_index(i + kDx[d], j + kDy[d]) >= 0 &&
                   dom.node_index(i - kDx[d], j - kDy[d]) >= 0;
        if (!full) continue;
        any = true;
        double dxx = legs.sd(omega.values, k, 0);
        double dyy = legs.sd(omega.values, k, 1);
        double dxy = 0.5 * (legs.sd(omega.values, k, 2) - legs.sd(omega.values, k, 3));
        double mid = 0.5 * (dxx + dyy);
        double rad = std::sqrt(0.25 * (dxx - dyy) * (dxx - dyy) + dxy * dxy);
        double eig = mid - rad;
        if (eig < rep.gs1_min_eig) {
            rep.gs1_min_eig = eig;
            rep.gs1_worst_node = k;
        }
    }
    rep.gs1_pass = any && rep.gs1_min_eig > 0.0;

    // GS3: band maxima of |grad| must grow toward the boundary. Bands can be
    // empty (on polygon sections the innermost lattice ring sits exactly at
    // distance h), so the monotonicity is read over the populated bands.
    const int kBands = 4;
    rep.gs3_band_max.assign(kBands, 0.0);
    std::array<bool, kBands> populated{};
    for (int k = 0; k < N; ++k) {
        double dist = dom.node_boundary_distance(k);
        int band = static_cast<int>(std::floor(dist / h));
        if (band >= kBands) continue;
        double gx = legs.fd(omega.values, k, 0);
        double gy = legs.fd(omega.values, k, 1);
        double g = std::hypot(gx, gy);
        populated[band] = true;
        rep.gs3_band_max[band] = std::max(rep.gs3_band_max[band], g);
    }
    std::vector<double> filled;
    for (int b = 0; b < kBands; ++b)
        if (populated[b]) filled.push_back(rep.gs3_band_max[b]);
    rep.gs3_pass = filled.size() >= 2;
    for (std::size_t b = 0; b + 1 < filled.size(); ++b)
        if (filled[b] <= filled[b + 1]) rep.gs3_pass = false;
    if (filled.empty() || filled.back() <= 0 || filled.front() < 1.5 * filled.back())
        rep.gs3_pass = false;
    return rep;
}

GaugeFunction GaugeFunction::from_grid(GridFunction omega, GaugeReport* report) {
    GaugeReport rep = gauge_validate(omega);
    if (report) *report = rep;
    if (!rep.pass())
        throw std::invalid_argument("gauge axioms fail: " + rep.summary());
    GaugeFunction g;
    const auto& dom = *omega.domain;
    Legs legs(dom);
    const int N = dom.node_count();
    g.grad_.resize(N);
    g.hess_min_eig_.resize(N);
    for (int k = 0; k < N; ++k) {
        g.grad_[k] = {legs.fd(omega.values, k, 0), legs.fd(omega.values, k, 1)};
        double dxx = legs.sd(omega.values, k, 0);
        double dyy = legs.sd(omega.values, k, 1);
        double dxy = 0.5 * (legs.sd(omega.values, k, 2) - legs.sd(omega.values, k, 3));
        double mid = 0.5 * (dxx + dyy);
        double rad = std::sqrt(0.25 * (dxx - dyy) * (dxx - dyy) + dxy * dxy);
        g.hess_min_eig_[k] = mid - rad;
    }
    g.omega_ = std::move(omega);
    return g;
}

Vec2 GaugeFunction::gradient_at(const Vec2& y) const {
    const auto& dom = *omega_.domain;
    double R = dom.shape().bounding_radius();
    double fi = (y.x + R) / dom.spacing();
    double fj = (y.y + R) / dom.spacing();
    int i0 = static_cast<int>(std::floor(fi));
    int j0 = static_cast<int>(std::floor(fj));
    fi -= i0;
    fj -= j0;
    int k00 = dom.node_index(i0, j0), k10 = dom.node_index(i0 + 1, j0);
    int k01 = dom.node_index(i0, j0 + 1), k11 = dom.node_index(i0 + 1, j0 + 1);
    if (k00 < 0 || k10 < 0 || k01 < 0 || k11 < 0) return grad_[omega_.nearest_node(y)];
    auto lerp = [&](auto&& get) {
        return (1 - fi) * (1 - fj) * get(k00) + fi * (1 - fj) * get(k10) +
               (1 - fi) * fj * get(k01) + fi * fj * get(k11);
    };
    return {lerp([&](int k) { return grad_[k].x; }), lerp([&](int k) { return grad_[k].y; })};
}

Vec3 GaugeFunction::surface_point(const Vec2& y) const {
    Vec2 g = gradient_at(y);
    double w = value_at(y);
    return Vec3(g, g.dot(y) - w);
}

SolveResult solve_affine_sphere(GridDomainPtr omega_star, const SolveOptions& opts) {
    const GridDomain& dom = *omega_star;
    if (dom.dim() != 2) throw std::invalid_argument("solve_affine_sphere: d = 2 only");
    if (dom.resolution() < 33) throw std::invalid_argument("solve_affine_sphere: resolution >= 33 required");
    if (opts.tol <= 0) throw std::invalid_argument("solve_affine_sphere: tol must be positive");

    const int N = dom.node_count();
    const double h = dom.spacing();
    Legs legs(dom);
    std::vector<SolveLogEntry> log;

    // ---- phase 1: monotone wide-stencil Gauss-Seidel ------------------------
    std::vector<double> u(N);
    for (int k = 0; k < N; ++k) u[k] = -opts.init_slope * dom.node_boundary_distance(k);
    int iter = 0;
    const int sweep_budget = std::max(200, opts.max_iter / 2);
    for (; iter < sweep_budget; ++iter) {
        double delta = monotone_sweep(legs, u, N);
        if ((iter & 15) == 0 || delta < 1e-3 * h) {
            log.push_back({iter, "monotone", monotone_residual(legs, dom, u, 2.0 * h)});
        }
        if (delta < 1e-3 * h) break;
    }

    // ---- phase 2: Newton on v = u^2 -----------------------------------------
    // det(Hess v - grad v grad v^T / (2v)) = 4/v, v = 0 on the boundary; the
    // substituted unknown is smooth up to the boundary so the Shortley-Weller
    // 9-point stencil is accurate there (the wide-stencil operator alone
    // cannot reach the required interior accuracy at this resolution).
    std::vector<double> v(N);
    for (int k = 0; k < N; ++k) v[k] = u[k] * u[k];

    auto v_residual = [&](const std::vector<double>& vv, std::vector<double>* out) {
        double worst = 0.0;
        for (int k = 0; k < N; ++k) {
            double dxx = legs.sd(vv, k, 0);
            double dyy = legs.sd(vv, k, 1);
            double dxy = 0.5 * (legs.sd(vv, k, 2) - legs.sd(vv, k, 3));
            double gx = legs.fd(vv, k, 0);
            double gy = legs.fd(vv, k, 1);
            double m11 = dxx - gx * gx / (2.0 * vv[k]);
            double m22 = dyy - gy * gy / (2.0 * vv[k]);
            double m12 = dxy - gx * gy / (2.0 * vv[k]);
            double G = m11 * m22 - m12 * m12 - 4.0 / vv[k];
            if (out) (*out)[k] = G;
            worst = std::max(worst, std::abs(G) / (1.0 + 4.0 / vv[k]));
        }
        return worst;
    };

    using Trip = Eigen::Triplet<double>;
    std::vector<double> G(N);
    double scaled = v_residual(v, &G);
    log.push_back({iter, "newton", scaled});
    bool converged = scaled < 1e-12;
    int stall_retries = 0;
    while (!converged && iter < opts.max_iter) {
        // assemble Jacobian
        std::vector<Trip> trips;
        trips.reserve(static_cast<std::size_t>(N) * 13);
        std::vector<double> diag(N, 0.0);
        auto add_sd = [&](int k, int d, double w) {
            double lp = legs.len[k][2 * d], lm = legs.len[k][2 * d + 1];
            double cp = 2.0 / (lp * (lp + lm)), cm = 2.0 / (lm * (lp + lm));
            diag[k] -= w * (cp + cm);
            if (legs.nbr[k][2 * d] >= 0) trips.emplace_back(k, legs.nbr[k][2 * d], w * cp);
            if (legs.nbr[k][2 * d + 1] >= 0) trips.emplace_back(k, legs.nbr[k][2 * d + 1], w * cm);
        };
        auto add_fd = [&](int k, int d, double w) {
            double lp = legs.len[k][2 * d], lm = legs.len[k][2 * d + 1];
            double den = lp * lm * (lp + lm);
            diag[k] += w * (lp * lp - lm * lm) / den;
            if (legs.nbr[k][2 * d] >= 0) trips.emplace_back(k, legs.nbr[k][2 * d], w * lm * lm / den);
            if (legs.nbr[k][2 * d + 1] >= 0)
                trips.emplace_back(k, legs.nbr[k][2 * d + 1], -w * lp * lp / den);
        };
        for (int k = 0; k < N; ++k) {
            double dxx = legs.sd(v, k, 0);
            double dyy = legs.sd(v, k, 1);
            double dxy = 0.5 * (legs.sd(v, k, 2) - legs.sd(v, k, 3));
            double gx = legs.fd(v, k, 0);
            double gy = legs.fd(v, k, 1);
            double vk = v[k];
            double m11 = dxx - gx * gx / (2.0 * vk);
            double m22 = dyy - gy * gy / (2.0 * vk);
            double m12 = dxy - gx * gy / (2.0 * vk);
            add_sd(k, 0, m22);
            add_sd(k, 1, m11);
            add_sd(k, 2, -0.5 * m12);
            add_sd(k, 3, 0.5 * m12);
            add_fd(k, 0, -m22 * gx / vk + m12 * gy / vk);
            add_fd(k, 1, -m11 * gy / vk + m12 * gx / vk);
            diag[k] += (m22 * gx * gx + m11 * gy * gy - 2.0 * m12 * gx * gy) / (2.0 * vk * vk) +
                       4.0 / (vk * vk);
        }
        for (int k = 0; k < N; ++k) trips.emplace_back(k, k, diag[k]);
        Eigen::SparseMatrix<double> J(N, N);
        J.setFromTriplets(trips.begin(), trips.end());
        Eigen::VectorXd rhs(N);
        for (int k = 0; k < N; ++k) rhs[k] = -G[k];
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw SolveError("affine sphere: singular Newton system", scaled);
        Eigen::VectorXd dv = lu.solve(rhs);

        double step = 1.0;
        bool accepted = false;
        std::vector<double> v_try(N);
        while (step >= 1e-5) {
            bool positive = true;
            for (int k = 0; k < N; ++k) {
                v_try[k] = v[k] + step * dv[k];
                if (v_try[k] <= 0) {
                    positive = false;
                    break;
                }
            }
            if (positive) {
                double m1 = v_residual(v_try, nullptr);
                if (m1 < scaled * (1.0 - 0.25 * step) || m1 < 1e-12) {
                    v = v_try;
                    scaled = m1;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        ++iter;
        if (!accepted) {
            if (++stall_retries > 2)
                throw SolveError("affine sphere: Newton stalled, residual " + std::to_string(scaled),
                                 scaled);
            // fall back to monotone sweeps and retry
            for (int k = 0; k < N; ++k) u[k] = -std::sqrt(v[k]);
            for (int s = 0; s < 100 && iter < opts.max_iter; ++s, ++iter) monotone_sweep(legs, u, N);
            for (int k = 0; k < N; ++k) v[k] = u[k] * u[k];
        }
        v_residual(v, &G);
        log.push_back({iter, "newton", scaled});
        converged = scaled < 1e-12;
    }

    // residual gate on the >=2h set (relative scaling against the RHS)
    double gate = 0.0;
    for (int k = 0; k < N; ++k) {
        if (dom.node_boundary_distance(k) < 2.0 * h) continue;
        gate = std::max(gate, std::abs(G[k]) / (4.0 / v[k]));
    }
    if (gate > opts.tol)
        throw SolveError("affine sphere: residual " + std::to_string(gate) +
                             " above tol after " + std::to_string(iter) + " iterations",
                         gate);

    GridFunction omega(omega_star);
    for (int k = 0; k < N; ++k) {
        omega.values[k] = -std::sqrt(v[k]);
        if (!(omega.values[k] < 0.0))
            throw SolveError("affine sphere: loss of negativity", gate);
    }
    omega.boundary_values.assign(dom.boundary_nodes().size(), 0.0);
    certify_convexity(omega);
    return SolveResult{GaugeFunction::from_grid(std::move(omega)), std::move(log), gate, iter};
}

double radial_profile(const GaugeFunction& omega, const Vec2& x) {
    if (!omega.domain().shape().contains({0, 0}))
        throw std::invalid_argument("radial_profile: domain must contain the origin");
    auto phi = [&](double t) {
        return conjugate_at(omega.omega(), x * t, true).value - t;
    };
    double lo = 0.0;
    if (phi(0.0) <= 0.0) throw SolveError("radial_profile: gauge not negative at origin", 0.0);
    double hi = 1.0;
    int guard = 0;
    while (phi(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 40)
            throw SolveError("radial_profile: no bracketing interval (x too close to the section boundary)",
                             hi);
    }
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) > 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    return -1.0 / t;
}

GaugeFunction minkowski_gauge(GridDomainPtr unit_disk) {
    const auto* ball = std::get_if<Ball>(&unit_disk->shape().spec());
    if (!ball || std::abs(ball->radius - 1.0) > 1e-12 || unit_disk->dim() != 2)
        throw std::invalid_argument("minkowski_gauge: needs the unit disk");
    GridFunction omega = sample_function(
        unit_disk, [](const Vec2& y) { return -std::sqrt(std::max(0.0, 1.0 - y.squared_norm())); },
        true);
    certify_convexity(omega);
    return GaugeFunction::from_grid(std::move(omega));
}

}  // namespace affst
