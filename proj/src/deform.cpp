#include "affst/deform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace affst {

namespace {

constexpr double kDetTol = 1e-9;
constexpr double kRelatorTol = 1e-6;

struct PointKey {
    std::vector<std::int64_t> q;
    bool operator==(const PointKey& o) const { return q == o.q; }
};

struct PointKeyHash {
    std::size_t operator()(const PointKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (auto v : k.q) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

PointKey quantize(const Eigen::VectorXd& p, double tol) {
    PointKey k;
    k.q.resize(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i)
        k.q[i] = static_cast<std::int64_t>(std::llround(p[i] / tol));
    return k;
}

}  // namespace

Word parse_word(const std::string& text) {
    Word w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        int e = 1;
        auto caret = tok.find('^');
        std::string label = tok;
        if (caret != std::string::npos) {
            label = tok.substr(0, caret);
            std::string exp = tok.substr(caret + 1);
            if (exp == "-1")
                e = -1;
            else if (exp == "1")
                e = 1;
            else
                throw std::invalid_argument("word: unsupported exponent in '" + tok + "'");
        }
        w.letters.emplace_back(label, e);
    }
    return w;
}

std::string format_word(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << ' ';
        os << w.letters[i].first;
        if (w.letters[i].second < 0) os << "^-1";
    }
    return os.str();
}

GroupRep::GroupRep(std::map<std::string, Eigen::MatrixXd> generators, std::vector<Word> relators,
                   const ConeSpec* cone, GroupRepReport* report)
    : gens_(std::move(generators)), relators_(std::move(relators)) {
    if (gens_.empty()) throw std::invalid_argument("group: no generators");
    dim_ = static_cast<int>(gens_.begin()->second.rows());
    for (const auto& [label, m] : gens_) {
        if (m.rows() != dim_ || m.cols() != dim_)
            throw std::invalid_argument("group: generator '" + label + "' has wrong shape");
        double det_err = std::abs(m.determinant() - 1.0);
        report_.max_det_err = std::max(report_.max_det_err, det_err);
        if (det_err > kDetTol)
            throw std::invalid_argument("group: generator '" + label + "' has |det - 1| = " +
                                        std::to_string(det_err));
        // generators are ill-conditioned (boost norms run to 1e4); one Newton
        // step on the inverse keeps long-word products near the 1e-9 dedup scale
        Eigen::MatrixXd inv = m.inverse();
        inv = inv * (2.0 * Eigen::MatrixXd::Identity(dim_, dim_) - m * inv);
        inverses_[label] = inv;
    }
    for (const auto& w : relators_) {
        Eigen::MatrixXd m = evaluate(w);
        double err = (m - Eigen::MatrixXd::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
        report_.max_relator_err = std::max(report_.max_relator_err, err);
        if (err > kRelatorTol)
            throw std::invalid_argument("group: relator '" + format_word(w) +
                                        "' fails by " + std::to_string(err));
    }
    if (cone) {
        if (dim_ != 3) throw std::invalid_argument("group: cone checks need dim 3");
        std::vector<Vec2> rays = cone->omega->shape().boundary_samples(64);
        rays.push_back({0.0, 0.0});
        for (const auto& [label, m] : gens_) {
            double worst = 0.0;
            for (const auto& x : rays) {
                Eigen::Vector3d X(x.x, x.y, 1.0);
                Eigen::Vector3d Z = m * X;
                if (Z[2] <= 0.0) {
                    worst = std::numeric_limits<double>::infinity();
                    break;
                }
                double g = cone->omega->shape().gauge({Z[0] / Z[2], Z[1] / Z[2]});
                worst = std::max(worst, g - 1.0);
            }
            report_.worst_cone_gauge = std::max(report_.worst_cone_gauge, worst);
            if (worst > 1e-9) report_.cone_violations.push_back(label);
        }
    }
    if (report) *report = report_;
}

const Eigen::MatrixXd& GroupRep::generator(const std::string& label) const {
    auto it = gens_.find(label);
    if (it == gens_.end()) throw std::invalid_argument("group: unknown label '" + label + "'");
    return it->second;
}

Eigen::MatrixXd GroupRep::letter(const std::string& label, int exponent) const {
    if (exponent == 1) return generator(label);
    auto it = inverses_.find(label);
    if (it == inverses_.end()) throw std::invalid_argument("group: unknown label '" + label + "'");
    return it->second;
}

Eigen::MatrixXd GroupRep::evaluate(const Word& w) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim_, dim_);
    for (const auto& [label, e] : w.letters) m = m * letter(label, e);
    return m;
}

Cocycle::Cocycle(GroupRepPtr rep, std::map<std::string, Eigen::VectorXd> tau)
    : rep_(std::move(rep)), tau_(std::move(tau)) {
    for (const auto& [label, m] : rep_->generators()) {
        auto it = tau_.find(label);
        if (it == tau_.end())
            throw std::invalid_argument("cocycle: missing translation for '" + label + "'");
        if (it->second.size() != rep_->dim())
            throw std::invalid_argument("cocycle: wrong vector size for '" + label + "'");
    }
    double defect = relator_defect();
    if (defect > kRelatorTol)
        throw std::invalid_argument("cocycle: relator inconsistency " + std::to_string(defect));
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> Cocycle::evaluate(const Word& w) const {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(rep_->dim(), rep_->dim());
    Eigen::VectorXd t = Eigen::VectorXd::Zero(rep_->dim());
    for (const auto& [label, e] : w.letters) {
        Eigen::MatrixXd m = rep_->letter(label, e);
        Eigen::VectorXd tm = tau_.at(label);
        if (e < 0) tm = -(m * tm);  // tau(g^-1) = -g^-1 tau(g)
        t += g * tm;
        g = g * m;
    }
    return {std::move(g), std::move(t)};
}

double Cocycle::relator_defect() const {
    double worst = 0.0;
    for (const auto& w : rep_->relators())
        worst = std::max(worst, evaluate(w).second.norm());
    return worst;
}

Eigen::VectorXd extend_cocycle(const Cocycle& c, const Word& w) {
    return c.evaluate(w).second;
}

Cocycle coboundary(GroupRepPtr rep, const Eigen::VectorXd& V) {
    std::map<std::string, Eigen::VectorXd> tau;
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(rep->dim(), rep->dim());
    for (const auto& [label, m] : rep->generators()) tau[label] = (I - m) * V;
    return Cocycle(std::move(rep), std::move(tau));
}

Cocycle add_cocycles(const Cocycle& a, const Cocycle& b) {
    if (a.rep_ptr() != b.rep_ptr())
        throw std::invalid_argument("cocycle sum: different representations");
    std::map<std::string, Eigen::VectorXd> tau = a.generator_tau();
    for (auto& [label, v] : tau) v += b.generator_tau().at(label);
    return Cocycle(a.rep_ptr(), std::move(tau));
}

Cocycle scale_cocycle(const Cocycle& a, double c) {
    std::map<std::string, Eigen::VectorXd> tau = a.generator_tau();
    for (auto& [label, v] : tau) v *= c;
    return Cocycle(a.rep_ptr(), std::move(tau));
}

GroupRepPtr bulge(const GroupRep& rep, const Splitting& split) {
    const int n = rep.dim();
    const int d = n - 1;
    if (split.X.size() != n) throw std::invalid_argument("bulge: X has wrong size");
    for (const auto& w : split.lambda_words) {
        Eigen::VectorXd img = rep.evaluate(w) * split.X;
        if ((img - split.X).norm() > 1e-6 * split.X.norm())
            throw std::invalid_argument("bulge: X is not an eigenvalue-1 eigenvector of lambda word '" +
                                        format_word(w) + "'");
    }
    Eigen::VectorXd nrm = split.H_normal.size() ? split.H_normal : split.X;
    double nx = nrm.dot(split.X);
    if (std::abs(nx) < 1e-12) throw std::invalid_argument("bulge: H does not complement X");
    Eigen::MatrixXd Px = split.X * nrm.transpose() / nx;
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd As = std::exp(split.s) * (I - Px) + std::exp(-d * split.s) * Px;
    Eigen::MatrixXd Asi = std::exp(-split.s) * (I - Px) + std::exp(d * split.s) * Px;
    std::map<std::string, Eigen::MatrixXd> gens = rep.generators();
    for (const auto& label : split.gens_B) {
        auto it = gens.find(label);
        if (it == gens.end()) throw std::invalid_argument("bulge: unknown B generator '" + label + "'");
        it->second = As * it->second * Asi;
    }
    return std::make_shared<const GroupRep>(std::move(gens), rep.relators());
}

Cocycle bend_translation(GroupRepPtr rep, const Splitting& split) {
    const int n = rep->dim();
    if (split.X.size() != n) throw std::invalid_argument("bend: X has wrong size");
    for (const auto& w : split.lambda_words) {
        Eigen::VectorXd img = rep->evaluate(w) * split.X;
        if ((img - split.X).norm() > 1e-6 * split.X.norm())
            throw std::invalid_argument("bend: X is not fixed by lambda word '" + format_word(w) + "'");
    }
    std::map<std::string, Eigen::VectorXd> tau;
    for (const auto& label : split.gens_A) tau[label] = Eigen::VectorXd::Zero(n);
    for (const auto& label : split.gens_B)
        tau[label] = split.s * (split.X - rep->generator(label) * split.X);
    for (const auto& [label, m] : rep->generators())
        if (!tau.count(label))
            throw std::invalid_argument("bend: generator '" + label + "' not assigned to a factor");
    return Cocycle(std::move(rep), std::move(tau));
}

Eigen::MatrixXd projective_embed(const Eigen::MatrixXd& gamma, const Eigen::VectorXd& tau) {
    const int n = static_cast<int>(gamma.rows());
    if (gamma.cols() != n || tau.size() != n)
        throw std::invalid_argument("projective_embed: shape mismatch");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n + 1, n + 1);
    out.topLeftCorner(n, n) = gamma;
    out.topRightCorner(n, 1) = tau;
    out(n, n) = 1.0;
    return out;
}

std::pair<double, Vec2> action_factor(const Eigen::Matrix3d& gamma, const Vec2& y) {
    Eigen::Vector3d Y(y.x, y.y, -1.0);
    Eigen::Vector3d Z = gamma.transpose() * Y;
    double mu = -Z[2];
    return {mu, mu > 0 ? Vec2{Z[0] / mu, Z[1] / mu} : Vec2{}};
}

SupportFunction act_on_support(const SupportFunction& s, const Eigen::Matrix3d& gamma,
                               const Vec3& tau, const GaugeFunction& omega) {
    (void)omega;  // the gauge enters the alternative ratio form, checked in tests
    const auto dom = s.s.domain;
    const double h = dom->spacing();
    GridFunction out(dom);
    std::vector<unsigned char> valid(dom->node_count(), 1);
    for (int k = 0; k < dom->node_count(); ++k) {
        const Vec2 y = dom->node(k);
        auto [mu, y2] = action_factor(gamma, y);
        if (mu <= 0.0)
            throw std::invalid_argument(
                "act_on_support: transported direction leaves the chart (gamma does not preserve C)");
        auto sv = s.s.interpolate(y2);
        bool ok = sv.has_value() && dom->shape().boundary_distance(y2) > h &&
                  dom->shape().gauge(y2) < 1.0;
        valid[k] = ok ? 1 : 0;
        double base = ok ? *sv : s.s.interpolate_or_nearest(y2);
        out.values[k] = mu * base + pair_down(Vec3(tau.x, tau.y, tau.z), y);
    }
    certify_convexity(out);
    SupportFunction res(s.cone, std::move(out));
    res.valid = std::move(valid);
    return res;
}

std::vector<OrbitPoint> orbit_points(const Cocycle& c, const Eigen::VectorXd& X0, int L,
                                     std::size_t cap) {
    if (L < 0) throw std::invalid_argument("orbit_points: negative word length");
    const GroupRep& rep = c.rep();
    const int n = rep.dim();
    if (X0.size() != n) throw std::invalid_argument("orbit_points: X0 has wrong size");

    struct State {
        Eigen::MatrixXd g;
        Eigen::VectorXd t;
        int last = -1;  // letter id, for free reduction
    };
    // fixed letter order: sorted labels, +1 then -1
    std::vector<std::pair<std::string, int>> letters;
    for (const auto& [label, m] : rep.generators()) {
        letters.emplace_back(label, 1);
        letters.emplace_back(label, -1);
    }
    std::vector<Eigen::MatrixXd> mats;
    std::vector<Eigen::VectorXd> taus;
    for (auto& [label, e] : letters) {
        mats.push_back(rep.letter(label, e));
        Eigen::VectorXd tm = c.generator_tau().at(label);
        if (e < 0) tm = -(mats.back() * tm);
        taus.push_back(tm);
    }
    auto inverse_id = [&](int id) { return id ^ 1; };

    std::vector<OrbitPoint> out;
    std::unordered_set<PointKey, PointKeyHash> seen;
    auto push = [&](const Eigen::VectorXd& p, int len) {
        PointKey key = quantize(p, 1e-9);
        if (seen.insert(key).second) out.push_back({p, len});
    };

    std::vector<State> frontier;
    frontier.push_back({Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n), -1});
    push(X0, 0);
    std::size_t words = 1;
    for (int depth = 1; depth <= L; ++depth) {
        std::vector<State> next;
        for (const auto& st : frontier) {
            for (int id = 0; id < static_cast<int>(letters.size()); ++id) {
                if (st.last >= 0 && id == inverse_id(st.last)) continue;
                if (++words > cap)
                    throw std::length_error("orbit_points: enumeration exceeds the configured cap");
                State ns;
                ns.g = st.g * mats[id];
                ns.t = st.t + st.g * taus[id];
                ns.last = id;
                push(ns.g * X0 + ns.t, depth);
                next.push_back(std::move(ns));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

BoundaryEstimate estimate_boundary_function(const std::vector<OrbitPoint>& orbit,
                                            const GridDomain& omega_star) {
    if (orbit.empty()) throw std::invalid_argument("estimate_boundary_function: empty orbit");
    const auto& bn = omega_star.boundary_nodes();
    BoundaryEstimate est;
    est.g.assign(bn.size(), -std::numeric_limits<double>::infinity());
    std::vector<double> g_prev(bn.size(), -std::numeric_limits<double>::infinity());
    int L = 0;
    for (const auto& op : orbit) L = std::max(L, op.word_length);
    est.word_length = L;
    for (const auto& op : orbit) {
        if (op.point.size() != 3)
            throw std::invalid_argument("estimate_boundary_function: points must be 3-dimensional");
        Vec3 X{op.point[0], op.point[1], op.point[2]};
        for (std::size_t b = 0; b < bn.size(); ++b) {
            double v = pair_down(X, bn[b]);
            est.g[b] = std::max(est.g[b], v);
            if (op.word_length <= L - 1) g_prev[b] = std::max(g_prev[b], v);
        }
    }
    est.cauchy_gap = 0.0;
    for (std::size_t b = 0; b < bn.size(); ++b)
        est.cauchy_gap = std::max(est.cauchy_gap, est.g[b] - g_prev[b]);
    return est;
}

MaximalDomain maximal_domain(const std::vector<double>& g, GridDomainPtr omega_star) {
    MaximalDomain out;
    out.s_minus = envelope_from_boundary(g, omega_star);
    std::vector<double> neg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
    GridFunction env_neg = envelope_from_boundary(neg, omega_star);
    out.s_plus = GridFunction(omega_star);
    for (int k = 0; k < omega_star->node_count(); ++k) out.s_plus.values[k] = -env_neg.values[k];
    out.s_plus.boundary_values = g;
    out.s_plus.convexity_certified = false;  // concave by construction
    for (int k = 0; k < omega_star->node_count(); ++k)
        if (out.s_minus.values[k] > out.s_plus.values[k] + 1e-7)
            throw SolveError("maximal_domain: envelope order violated",
                             out.s_minus.values[k] - out.s_plus.values[k]);
    out.halfspaces = cauchy_development_halfspaces(g, *omega_star);
    return out;
}

std::vector<Eigen::VectorXd> limit_set_samples(const std::vector<double>& g,
                                               const GridDomain& omega_star) {
    const auto& bn = omega_star.boundary_nodes();
    if (g.size() != bn.size()) throw std::invalid_argument("limit_set_samples: size mismatch");
    std::vector<Eigen::VectorXd> out;
    out.reserve(bn.size());
    for (std::size_t b = 0; b < bn.size(); ++b) {
        Eigen::VectorXd p(4);
        p << bn[b].x, bn[b].y, -1.0, -g[b];
        p.normalize();
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            if (std::abs(p[i]) > 1e-14) {
                if (p[i] < 0) p = -p;
                break;
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

Genus2Fixture genus2_fixture(const ConeSpec* cone, double bend_s) {
    const Eigen::Vector3d eta(1.0, 1.0, -1.0);
    auto boost_x = [](double l) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
        m(0, 0) = std::cosh(l);
        m(0, 2) = std::sinh(l);
        m(2, 0) = std::sinh(l);
        m(2, 2) = std::cosh(l);
        return m;
    };
    auto boost_y = [](double l) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
        m(1, 1) = std::cosh(l);
        m(1, 2) = std::sinh(l);
        m(2, 1) = std::sinh(l);
        m(2, 2) = std::cosh(l);
        return m;
    };
    // handle boosts with the regular-octagon pairing length 2 arccosh(1+sqrt 2)
    const double L = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    Eigen::Matrix3d a1 = boost_x(L);
    Eigen::Matrix3d b1 = boost_y(L);

    // eigenvalue-1 eigenvector of the separating commutator: null space of
    // c - I via the largest row cross product
    auto axis_data = [&](const Eigen::Matrix3d& aa, const Eigen::Matrix3d& bb,
                         Eigen::Vector3d* X_out, Eigen::Vector3d* p_out) {
        Eigen::Matrix3d c = aa * bb * aa.inverse() * bb.inverse();
        Eigen::Matrix3d M = c - Eigen::Matrix3d::Identity();
        Eigen::Vector3d X = Eigen::Vector3d::Zero();
        double best = -1.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                Eigen::Vector3d cr = M.row(i).transpose().cross(M.row(j).transpose());
                if (cr.norm() > best) {
                    best = cr.norm();
                    X = cr;
                }
            }
        }
        double xnorm = X.dot(eta.asDiagonal() * X);
        if (xnorm <= 0)
            throw SolveError("genus2_fixture: separating eigenvector not spacelike", xnorm);
        X /= std::sqrt(xnorm);
        for (int i = 0; i < 3; ++i) {
            if (std::abs(X[i]) > 1e-12) {
                if (X[i] < 0) X = -X;
                break;
            }
        }
        Eigen::Vector3d z(0.0, 0.0, 1.0);
        Eigen::Vector3d p = z - (z.dot(eta.asDiagonal() * X)) * X;
        double pn = -(p.dot(eta.asDiagonal() * p));
        if (pn <= 0) throw SolveError("genus2_fixture: axis point not timelike", pn);
        p /= std::sqrt(pn);
        if (p[2] < 0) p = -p;
        *X_out = X;
        *p_out = p;
    };

    // recentre so the separating axis passes through the origin: the half-turn
    // J about the axis point then has norm sqrt(3) and the conjugated factor
    // stays well-conditioned
    Eigen::Vector3d X, p;
    axis_data(a1, b1, &X, &p);
    double theta = std::atan2(p[1], p[0]);
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    rot(0, 0) = rot(1, 1) = std::cos(theta);
    rot(0, 1) = -std::sin(theta);
    rot(1, 0) = std::sin(theta);
    Eigen::Matrix3d S = rot * boost_x(std::acosh(p[2])) * rot.transpose();
    a1 = (S.inverse() * a1 * S).eval();
    b1 = (S.inverse() * b1 * S).eval();
    axis_data(a1, b1, &X, &p);

    // half-turn about the axis point: the doubling of the one-holed torus
    Eigen::Matrix3d J =
        -Eigen::Matrix3d::Identity() - 2.0 * p * (eta.asDiagonal() * p).transpose();
    Eigen::Matrix3d a2 = J * a1 * J.inverse();
    Eigen::Matrix3d b2 = J * b1 * J.inverse();

    std::map<std::string, Eigen::MatrixXd> gens;
    gens["a1"] = a1;
    gens["b1"] = b1;
    gens["a2"] = a2;
    gens["b2"] = b2;
    std::vector<Word> relators = {parse_word("a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1")};

    Genus2Fixture fix;
    fix.rep = std::make_shared<const GroupRep>(std::move(gens), std::move(relators), cone);
    fix.splitting.gens_A = {"a1", "b1"};
    fix.splitting.gens_B = {"a2", "b2"};
    fix.splitting.lambda_words = {parse_word("a1 b1 a1^-1 b1^-1")};
    fix.splitting.X = X;
    fix.splitting.s = bend_s;
    Eigen::VectorXd hn = eta.asDiagonal() * X;  // Minkowski-orthogonal complement
    fix.splitting.H_normal = hn;
    return fix;
}

}  // namespace affst
