#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "affst/cone.hpp"
#include "affst/sphere.hpp"

namespace affst {

/// Group word: labels with exponent +-1, e.g. "a1 b1 a1^-1 b1^-1".
struct Word {
    std::vector<std::pair<std::string, int>> letters;
};

Word parse_word(const std::string& text);
std::string format_word(const Word& w);

struct GroupRepReport {
    double max_det_err = 0.0;
    double max_relator_err = 0.0;
    std::vector<std::string> cone_violations;  // generators moving sampled rays out of C
    double worst_cone_gauge = 0.0;             // max gauge excess over 1 across samples
};

/// Labeled generators of a subgroup of SL(d+1,R) acting on the cone C.
/// Determinant and relator identities are hard invariants; cone preservation
/// is sampled and reported (bulged groups divide a deformed cone, which this
/// artifact does not rebase).
class GroupRep {
public:
    GroupRep(std::map<std::string, Eigen::MatrixXd> generators, std::vector<Word> relators,
             const ConeSpec* cone = nullptr, GroupRepReport* report = nullptr);

    int dim() const { return dim_; }  // matrix size d+1
    const std::map<std::string, Eigen::MatrixXd>& generators() const { return gens_; }
    const std::vector<Word>& relators() const { return relators_; }
    const GroupRepReport& report() const { return report_; }

    const Eigen::MatrixXd& generator(const std::string& label) const;
    Eigen::MatrixXd letter(const std::string& label, int exponent) const;
    Eigen::MatrixXd evaluate(const Word& w) const;

private:
    int dim_ = 0;
    std::map<std::string, Eigen::MatrixXd> gens_;
    std::map<std::string, Eigen::MatrixXd> inverses_;
    std::vector<Word> relators_;
    GroupRepReport report_;
};

using GroupRepPtr = std::shared_ptr<const GroupRep>;

/// Translation parts on generators, extended to words by
/// tau(ab) = tau(a) + a tau(b); relator-consistent within 1e-6.
class Cocycle {
public:
    Cocycle(GroupRepPtr rep, std::map<std::string, Eigen::VectorXd> tau);

    const GroupRep& rep() const { return *rep_; }
    GroupRepPtr rep_ptr() const { return rep_; }
    const std::map<std::string, Eigen::VectorXd>& generator_tau() const { return tau_; }

    /// Linear part and translation part of a word's image in Gamma_tau.
    std::pair<Eigen::MatrixXd, Eigen::VectorXd> evaluate(const Word& w) const;

    /// Largest relator translation norm (consistency measure).
    double relator_defect() const;

private:
    GroupRepPtr rep_;
    std::map<std::string, Eigen::VectorXd> tau_;
};

Eigen::VectorXd extend_cocycle(const Cocycle& c, const Word& w);
Cocycle coboundary(GroupRepPtr rep, const Eigen::VectorXd& V);

/// Cocycle vector-space operations (sums and scalar multiples stay cocycles).
Cocycle add_cocycles(const Cocycle& a, const Cocycle& b);
Cocycle scale_cocycle(const Cocycle& a, double c);

/// Amalgam data for bulging/bending: gens_A generate Gamma', gens_B generate
/// Gamma'', the lambda words generate the edge subgroup fixing X (eigenvalue
/// 1). H_normal defines the complementary hyperplane for the bulge (defaults
/// to the Euclidean complement of X).
struct Splitting {
    std::vector<std::string> gens_A;
    std::vector<std::string> gens_B;
    std::vector<Word> lambda_words;
    Eigen::VectorXd X;
    double s = 0.0;
    Eigen::VectorXd H_normal;  // empty: use X itself
};

/// Conjugates the B factor by Diag-type A_s (e^s on H, e^{-d s} on X).
GroupRepPtr bulge(const GroupRep& rep, const Splitting& split);

/// Bending cocycle: tau = 0 on the A factor, s(X - gamma X) on the B factor.
Cocycle bend_translation(GroupRepPtr rep, const Splitting& split);

/// Affine map as a (d+2)x(d+2) projective matrix [gamma tau; 0 1].
Eigen::MatrixXd projective_embed(const Eigen::MatrixXd& gamma, const Eigen::VectorXd& tau);

/// Transported support function (sigma.s)(y) = mu' s(y'') + tau.(y,-1) where
/// gamma^T (y,-1) = mu' (y'',-1). Nodes whose pull-back y'' leaves the chart
/// or comes within h of the boundary are masked.
SupportFunction act_on_support(const SupportFunction& s, const Eigen::Matrix3d& gamma,
                               const Vec3& tau, const GaugeFunction& omega);

/// Homogeneity factor mu' of the action at y, and the pulled-back point y''.
std::pair<double, Vec2> action_factor(const Eigen::Matrix3d& gamma, const Vec2& y);

struct OrbitPoint {
    Eigen::VectorXd point;
    int word_length = 0;
};

/// Orbit {gamma_w X0 + tau_w} over reduced words of length <= L, breadth
/// first, points deduplicated within 1e-9. Throws when the enumeration
/// exceeds the cap.
std::vector<OrbitPoint> orbit_points(const Cocycle& c, const Eigen::VectorXd& X0, int L,
                                     std::size_t cap = 50000);

struct BoundaryEstimate {
    std::vector<double> g;   // one per boundary node
    double cauchy_gap = 0.0; // max change from the L-1 truncation
    int word_length = 0;
};

/// Boundary trace of the support function of conv(orbit) + closure(C).
BoundaryEstimate estimate_boundary_function(const std::vector<OrbitPoint>& orbit,
                                            const GridDomain& omega_star);

struct MaximalDomain {
    GridFunction s_minus;       // convex envelope of g (support of D^C)
    GridFunction s_plus;        // concave envelope of g (support of D^{-C})
    HalfspaceFamily halfspaces;
};

MaximalDomain maximal_domain(const std::vector<double>& g, GridDomainPtr omega_star);

/// Limit-set samples (y : -1 : -g(y)) per boundary node, unit-normalised with
/// the first nonzero coordinate positive.
std::vector<Eigen::VectorXd> limit_set_samples(const std::vector<double>& g,
                                               const GridDomain& omega_star);

struct Genus2Fixture {
    GroupRepPtr rep;
    Splitting splitting;
};

/// Genus-2 surface group in SO(2,1) built by doubling a one-holed torus whose
/// handle boosts have the regular-octagon pairing length, with the separating
/// curve as amalgam edge. Relator [a1,b1][a2,b2] holds to machine precision.
Genus2Fixture genus2_fixture(const ConeSpec* cone = nullptr, double bend_s = 0.0);

}  // namespace affst
