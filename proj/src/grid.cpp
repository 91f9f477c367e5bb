#include "affst/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace affst {

namespace {

double polygon_signed_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double t = (p - a).dot(ab) / std::max(ab.squared_norm(), 1e-300);
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

}  // namespace

Shape::Shape(ShapeSpec spec, int dim) : spec_(std::move(spec)), dim_(dim) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("shape: dim must be 1 or 2");
    if (auto* b = std::get_if<Ball>(&spec_)) {
        if (b->radius <= 0) throw std::invalid_argument("ball: radius must be positive");
    } else if (auto* e = std::get_if<Ellipse>(&spec_)) {
        if (dim != 2) throw std::invalid_argument("ellipse: dim must be 2");
        if (e->a <= 0 || e->b <= 0) throw std::invalid_argument("ellipse: semi-axes must be positive");
    } else {
        auto& poly = std::get<Polygon>(spec_);
        if (dim != 2) throw std::invalid_argument("polygon: dim must be 2");
        if (poly.vertices.size() < 3) throw std::invalid_argument("polygon: needs >= 3 vertices");
        if (polygon_signed_area(poly.vertices) < 0)
            std::reverse(poly.vertices.begin(), poly.vertices.end());
        // origin strictly inside: every edge half-plane n.y <= c has c > 0
        const auto& v = poly.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            Vec2 a = v[i], b = v[(i + 1) % v.size()];
            Vec2 nrm{b.y - a.y, a.x - b.x};  // outward for CCW
            double c = nrm.dot(a);
            if (c <= 1e-12) throw std::invalid_argument("polygon: origin must be strictly inside");
        }
    }
}

double Shape::gauge(const Vec2& p) const {
    if (const auto* b = std::get_if<Ball>(&spec_)) {
        double r = dim_ == 1 ? std::abs(p.x) : p.norm();
        return r / b->radius;
    }
    if (const auto* e = std::get_if<Ellipse>(&spec_)) {
        double u = p.x / e->a, v = p.y / e->b;
        return std::sqrt(u * u + v * v);
    }
    const auto& verts = std::get<Polygon>(spec_).vertices;
    double g = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        Vec2 a = verts[i], b = verts[(i + 1) % verts.size()];
        Vec2 nrm{b.y - a.y, a.x - b.x};
        g = std::max(g, nrm.dot(p) / nrm.dot(a));
    }
    return g;
}

double Shape::boundary_distance(const Vec2& p) const {
    if (const auto* b = std::get_if<Ball>(&spec_)) {
        double r = dim_ == 1 ? std::abs(p.x) : p.norm();
        return std::abs(b->radius - r);
    }
    if (const auto* e = std::get_if<Ellipse>(&spec_)) {
        double g = gauge(p);
        if (g < 1e-9) return std::min(e->a, e->b);
        double gx = p.x / (e->a * e->a), gy = p.y / (e->b * e->b);
        return std::abs(1.0 - g) * g / std::max(std::hypot(gx, gy), 1e-300);
    }
    const auto& verts = std::get<Polygon>(spec_).vertices;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts.size(); ++i)
        d = std::min(d, point_segment_distance(p, verts[i], verts[(i + 1) % verts.size()]));
    return d;
}

double Shape::bounding_radius() const {
    if (const auto* b = std::get_if<Ball>(&spec_)) return b->radius;
    if (const auto* e = std::get_if<Ellipse>(&spec_)) return std::max(e->a, e->b);
    double r = 0.0;
    for (const auto& v : std::get<Polygon>(spec_).vertices)
        r = std::max({r, std::abs(v.x), std::abs(v.y)});
    return r;
}

double Shape::circumradius() const {
    if (const auto* b = std::get_if<Ball>(&spec_)) return b->radius;
    if (const auto* e = std::get_if<Ellipse>(&spec_)) return std::max(e->a, e->b);
    double r = 0.0;
    for (const auto& v : std::get<Polygon>(spec_).vertices) r = std::max(r, v.norm());
    return r;
}

double Shape::ray_exit(const Vec2& p, const Vec2& u) const {
    if (const auto* b = std::get_if<Ball>(&spec_)) {
        // |p + t u| = radius, unit u
        double bb = p.dot(u);
        double cc = p.squared_norm() - b->radius * b->radius;
        double disc = bb * bb - cc;
        return -bb + std::sqrt(std::max(disc, 0.0));
    }
    if (const auto* e = std::get_if<Ellipse>(&spec_)) {
        Vec2 ps{p.x / e->a, p.y / e->b}, us{u.x / e->a, u.y / e->b};
        double aq = us.squared_norm();
        double bq = ps.dot(us);
        double cq = ps.squared_norm() - 1.0;
        double disc = bq * bq - aq * cq;
        return (-bq + std::sqrt(std::max(disc, 0.0))) / aq;
    }
    const auto& verts = std::get<Polygon>(spec_).vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        Vec2 a = verts[i], b = verts[(i + 1) % verts.size()];
        Vec2 nrm{b.y - a.y, a.x - b.x};
        double den = nrm.dot(u);
        if (den <= 1e-14) continue;  // ray leaves only through edges it points at
        double t = (nrm.dot(a) - nrm.dot(p)) / den;
        if (t > 0) best = std::min(best, t);
    }
    return best;
}

std::vector<Vec2> Shape::boundary_samples(int m) const {
    std::vector<Vec2> out;
    if (dim_ == 1) {
        const auto& b = std::get<Ball>(spec_);
        out.push_back({b.radius, 0.0});
        out.push_back({-b.radius, 0.0});
        return out;
    }
    out.reserve(m);
    if (const auto* b = std::get_if<Ball>(&spec_)) {
        for (int k = 0; k < m; ++k) {
            double t = 2.0 * M_PI * k / m;
            out.push_back({b->radius * std::cos(t), b->radius * std::sin(t)});
        }
        return out;
    }
    if (const auto* e = std::get_if<Ellipse>(&spec_)) {
        for (int k = 0; k < m; ++k) {
            double t = 2.0 * M_PI * k / m;
            out.push_back({e->a * std::cos(t), e->b * std::sin(t)});
        }
        return out;
    }
    // Polygons: every vertex is a sample (the envelope is vertex-limited);
    // the rest fill the edges proportionally to length, m samples in total.
    const auto& verts = std::get<Polygon>(spec_).vertices;
    const int nv = static_cast<int>(verts.size());
    if (m < nv) m = nv;
    std::vector<double> len(nv);
    double per = 0.0;
    for (int i = 0; i < nv; ++i) {
        len[i] = (verts[(i + 1) % nv] - verts[i]).norm();
        per += len[i];
    }
    std::vector<int> cnt(nv, 1);
    int left = m - nv;
    std::vector<double> frac(nv);
    for (int i = 0; i < nv; ++i) {
        double want = left * len[i] / per;
        int whole = static_cast<int>(std::floor(want));
        cnt[i] += whole;
        frac[i] = want - whole;
        left -= whole;
    }
    while (left > 0) {  // largest remainder
        int best = 0;
        for (int i = 1; i < nv; ++i)
            if (frac[i] > frac[best]) best = i;
        ++cnt[best];
        frac[best] = -1;
        --left;
    }
    for (int i = 0; i < nv; ++i) {
        Vec2 a = verts[i], b = verts[(i + 1) % nv];
        for (int k = 0; k < cnt[i]; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / cnt[i]));
    }
    return out;
}

GridDomain::GridDomain(ShapeSpec shape, int resolution, int dim)
    : shape_(std::move(shape), dim), n_(resolution) {
    if (n_ < 2) throw std::invalid_argument("grid: resolution must be >= 2");
    radius_ = shape_.bounding_radius();
    h_ = 2.0 * radius_ / (n_ - 1);
    int nj = dim == 1 ? 1 : n_;
    index_.assign(static_cast<std::size_t>(n_) * nj, -1);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < nj; ++j) {
            Vec2 p{coord(i), dim == 1 ? 0.0 : coord(j)};
            if (shape_.contains(p)) {
                index_[static_cast<std::size_t>(i) * nj + j] = static_cast<int>(nodes_.size());
                nodes_.push_back(p);
                ij_.push_back({i, j});
                node_dist_.push_back(shape_.boundary_distance(p));
            }
        }
    }
    if (nodes_.empty()) throw std::invalid_argument("grid: no lattice node falls inside the shape");
    boundary_nodes_ = shape_.boundary_samples(4 * n_);
}

int GridDomain::node_index(int i, int j) const {
    int nj = dim() == 1 ? 1 : n_;
    if (i < 0 || i >= n_ || j < 0 || j >= nj) return -1;
    return index_[static_cast<std::size_t>(i) * nj + j];
}

bool GridDomain::same_lattice(const GridDomain& o) const {
    return dim() == o.dim() && n_ == o.n_ && std::abs(h_ - o.h_) < 1e-14 &&
           node_count() == o.node_count();
}

GridDomainPtr make_domain(ShapeSpec shape, int resolution, int dim) {
    return std::make_shared<const GridDomain>(std::move(shape), resolution, dim);
}

std::optional<double> GridFunction::interpolate(const Vec2& p) const {
    const auto& d = *domain;
    double R = d.shape().bounding_radius();
    double fi = (p.x + R) / d.spacing();
    double fj = d.dim() == 1 ? 0.0 : (p.y + R) / d.spacing();
    int i0 = static_cast<int>(std::floor(fi));
    int j0 = static_cast<int>(std::floor(fj));
    fi -= i0;
    fj -= j0;
    if (d.dim() == 1) {
        int a = d.node_index(i0, 0), b = d.node_index(i0 + 1, 0);
        if (a < 0 || b < 0) return std::nullopt;
        return (1 - fi) * values[a] + fi * values[b];
    }
    int k00 = d.node_index(i0, j0), k10 = d.node_index(i0 + 1, j0);
    int k01 = d.node_index(i0, j0 + 1), k11 = d.node_index(i0 + 1, j0 + 1);
    if (k00 < 0 || k10 < 0 || k01 < 0 || k11 < 0) return std::nullopt;
    return (1 - fi) * (1 - fj) * values[k00] + fi * (1 - fj) * values[k10] +
           (1 - fi) * fj * values[k01] + fi * fj * values[k11];
}

double GridFunction::interpolate_or_nearest(const Vec2& p) const {
    if (auto v = interpolate(p)) return *v;
    return values[nearest_node(p)];
}

int GridFunction::nearest_node(const Vec2& p) const {
    const auto& d = *domain;
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    // search the lattice neighbourhood first, fall back to scan
    double R = d.shape().bounding_radius();
    int ic = static_cast<int>(std::lround((p.x + R) / d.spacing()));
    int jc = d.dim() == 1 ? 0 : static_cast<int>(std::lround((p.y + R) / d.spacing()));
    for (int r = 0; r < d.resolution(); ++r) {
        bool found = false;
        for (int i = ic - r; i <= ic + r; ++i) {
            for (int j = jc - r; j <= jc + r; ++j) {
                if (std::max(std::abs(i - ic), std::abs(j - jc)) != r) continue;
                int k = d.node_index(i, j);
                if (k < 0) continue;
                double dd = (d.node(k) - p).norm();
                if (dd < bd) {
                    bd = dd;
                    best = k;
                }
                found = true;
            }
        }
        if (found && bd <= (r - 1.0) * d.spacing()) break;
    }
    return best;
}

double GridFunction::lipschitz_estimate() const {
    const auto& d = *domain;
    double lip = 0.0;
    for (int k = 0; k < d.node_count(); ++k) {
        auto [i, j] = d.node_ij(k);
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
            int k2 = d.node_index(i + di, j + dj);
            if (k2 >= 0) lip = std::max(lip, std::abs(values[k2] - values[k]) / d.spacing());
        }
    }
    if (has_boundary()) {
        for (std::size_t b = 0; b < boundary_values.size(); ++b) {
            int k = nearest_node(d.boundary_nodes()[b]);
            double dd = (d.node(k) - d.boundary_nodes()[b]).norm();
            if (dd > 1e-3 * d.spacing())
                lip = std::max(lip, std::abs(boundary_values[b] - values[k]) / dd);
        }
    }
    return lip;
}

void GridFunction::check_finite(const char* what) const {
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
    for (double v : boundary_values)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite boundary value");
}

double min_second_difference(const GridFunction& f) {
    const auto& d = *f.domain;
    double worst = 0.0;
    const std::pair<int, int> dirs[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int k = 0; k < d.node_count(); ++k) {
        auto [i, j] = d.node_ij(k);
        for (auto [di, dj] : dirs) {
            if (d.dim() == 1 && dj != 0) continue;
            int kp = d.node_index(i + di, j + dj);
            int km = d.node_index(i - di, j - dj);
            if (kp < 0 || km < 0) continue;
            worst = std::min(worst, f.values[kp] + f.values[km] - 2.0 * f.values[k]);
        }
    }
    return worst;
}

double convexity_tolerance(const GridFunction& f) {
    const auto& d = *f.domain;
    double maxsd = 0.0;
    const std::pair<int, int> dirs[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int k = 0; k < d.node_count(); ++k) {
        auto [i, j] = d.node_ij(k);
        for (auto [di, dj] : dirs) {
            if (d.dim() == 1 && dj != 0) continue;
            int kp = d.node_index(i + di, j + dj);
            int km = d.node_index(i - di, j - dj);
            if (kp < 0 || km < 0) continue;
            maxsd = std::max(maxsd, std::abs(f.values[kp] + f.values[km] - 2.0 * f.values[k]));
        }
    }
    double h = d.spacing();
    double scale = 0.0;
    for (double v : f.values) scale = std::max(scale, std::abs(v));
    return 10.0 * h * h * maxsd + 64.0 * std::numeric_limits<double>::epsilon() * (scale + 1.0);
}

bool certify_convexity(GridFunction& f) {
    f.convexity_certified = min_second_difference(f) >= -convexity_tolerance(f);
    return f.convexity_certified;
}

}  // namespace affst
