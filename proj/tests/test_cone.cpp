#include "doctest.h"

#include <cmath>

#include "affst/cone.hpp"
#include "affst/sphere.hpp"

using namespace affst;

namespace {

ConeSpec minkowski_cone(int n) { return ConeSpec(make_domain(Ball{1.0}, n), n); }

SupportFunction zero_support(const ConeSpec& cone) {
    GridFunction s(cone.omega_star);
    s.boundary_values.assign(cone.omega_star->boundary_nodes().size(), 0.0);
    certify_convexity(s);
    return SupportFunction(cone, std::move(s));
}

SupportFunction affine_support(const ConeSpec& cone, const Vec3& X0) {
    GridFunction s = sample_function(
        cone.omega_star, [&](const Vec2& y) { return pair_down(X0, y); }, true);
    certify_convexity(s);
    return SupportFunction(cone, std::move(s));
}

}  // namespace

TEST_CASE("polar of the unit disk is the unit disk") {
    auto omega = make_domain(Ball{1.0}, 41);
    auto star = polar_domain(*omega, 41);
    CHECK(std::get<Ball>(star->shape().spec()).radius == doctest::Approx(1.0));
}

TEST_CASE("polar of a disk scales reciprocally") {
    auto omega = make_domain(Ball{2.0}, 41);
    auto star = polar_domain(*omega, 41);
    CHECK(std::get<Ball>(star->shape().spec()).radius == doctest::Approx(0.5));
}

TEST_CASE("polar of the square is the diamond") {
    Polygon square{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    auto omega = make_domain(square, 21);
    ShapeSpec polar = polar_shape(omega->shape());
    const auto& verts = std::get<Polygon>(polar).vertices;
    REQUIRE(verts.size() == 4);
    // vertices of { |y1|+|y2| < 1 }, computed directly from the edge pairs
    for (const auto& v : verts) {
        CHECK(std::abs(v.x) + std::abs(v.y) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::min(std::abs(v.x), std::abs(v.y)) == doctest::Approx(0.0).scale(1));
    }
}

TEST_CASE("polar involution returns the original shape") {
    for (ShapeSpec spec : std::initializer_list<ShapeSpec>{
             Ball{1.7}, Ellipse{2.0, 0.6},
             Polygon{{{-1, -0.8}, {1.2, -1}, {1, 1.1}, {-0.9, 1}}}}) {
        auto omega = make_domain(spec, 33);
        Shape twice(polar_shape(Shape(polar_shape(omega->shape()), 2)), 2);
        Rng rng(11);
        for (int t = 0; t < 200; ++t) {
            Vec2 p = rng.in_disk(2.5);
            CHECK(twice.gauge(p) == doctest::Approx(omega->shape().gauge(p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("hyperplane classification on the Minkowski cone") {
    ConeSpec cone = minkowski_cone(65);
    CHECK(classify_hyperplane(cone, {0, 0, -1}).kind == Causality::Spacelike);
    CHECK(classify_hyperplane(cone, {1, 0, -1}).kind == Causality::Null);
    CHECK(classify_hyperplane(cone, {2, 0, -1}).kind == Causality::Other);
    CHECK(classify_hyperplane(cone, {1, 0, 0}).kind == Causality::Other);
    CHECK_THROWS_AS(classify_hyperplane(cone, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("classification is sign-invariant") {
    ConeSpec cone = minkowski_cone(65);
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        Vec3 Y{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (Y.norm() < 1e-6) continue;
        CHECK(classify_hyperplane(cone, Y).kind == classify_hyperplane(cone, -Y).kind);
    }
}

TEST_CASE("domain of the zero support function is the cone itself") {
    ConeSpec cone = minkowski_cone(81);
    SupportFunction s = zero_support(cone);
    GridFunction f = domain_from_support(s, Window{{-1.5, -1.5}, {1.5, 1.5}}, 61);
    // oracle: sup over dense disk samples of x.y is |x|
    for (int k = 0; k < f.domain->node_count(); k += 23) {
        const Vec2 x = f.domain->node(k);
        double oracle = 0.0;
        for (int a = 0; a < 720; ++a)
            oracle = std::max(oracle, x.dot({std::cos(2 * M_PI * a / 720.0),
                                             std::sin(2 * M_PI * a / 720.0)}));
        CHECK(f.values[k] == doctest::Approx(oracle).scale(1).epsilon(2e-3));
    }
    CHECK(point_in_domain(s, {0, 0, 1}));
    CHECK_FALSE(point_in_domain(s, {2, 0, 1}));
}

TEST_CASE("affine support functions describe translated cones") {
    ConeSpec cone = minkowski_cone(81);
    const Vec3 X0{0.4, -0.1, 0.3};
    SupportFunction s = affine_support(cone, X0);
    GridFunction f = domain_from_support(s, Window{{-1, -1}, {1, 1}}, 41);
    for (int k = 0; k < f.domain->node_count(); k += 17) {
        const Vec2 x = f.domain->node(k);
        CHECK(f.values[k] ==
              doctest::Approx((x - X0.head()).norm() + X0.z).scale(1).epsilon(2e-3));
    }
}

TEST_CASE("support_from_points covers the spec examples") {
    ConeSpec cone = minkowski_cone(65);
    const Vec3 X0{0.2, 0.1, -0.4};
    SupportFunction single = support_from_points(cone, {X0});
    for (int k = 0; k < single.s.domain->node_count(); k += 11)
        CHECK(single.s.values[k] ==
              doctest::Approx(pair_down(X0, single.s.domain->node(k))).epsilon(1e-12));

    SupportFunction two = support_from_points(cone, {{0, 0, 0}, {1, 0, 0}});
    for (int k = 0; k < two.s.domain->node_count(); k += 11) {
        const Vec2 y = two.s.domain->node(k);
        CHECK(two.s.values[k] == doctest::Approx(std::max(0.0, y.x)).epsilon(1e-12));
    }

    Rng rng(2);
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) {
        Vec2 x = rng.in_disk(0.9);
        double t = rng.uniform(0.1, 2.0);
        pts.push_back({t * x.x, t * x.y, t});
    }
    SupportFunction many = support_from_points(cone, pts);
    CHECK(many.s.convexity_certified);
    for (int k = 0; k < many.s.domain->node_count(); k += 29) {
        const Vec2 y = many.s.domain->node(k);
        for (const auto& X : pts) CHECK(many.s.values[k] >= pair_down(X, y) - 1e-12);
    }
    // every input point lies on or above the reconstructed boundary graph
    for (const auto& X : pts) {
        double margin = 0.0;
        point_in_domain(many, X, &margin);
        CHECK(margin >= -2.0 * fenchel_tolerance(many.s));
    }
    CHECK_THROWS_AS(support_from_points(cone, {}), std::invalid_argument);
}

TEST_CASE("inverse Gauss map on the gauge support function") {
    auto disk = make_domain(Ball{1.0}, 101);
    GaugeFunction omega = minkowski_gauge(disk);
    ConeSpec cone = minkowski_cone(101);
    SupportFunction s(cone, omega.omega());

    Vec3 apex = inverse_gauss(s, {0.0, 0.0});
    CHECK(apex.x == doctest::Approx(0.0).scale(1).epsilon(1e-6));
    CHECK(apex.y == doctest::Approx(0.0).scale(1).epsilon(1e-6));
    CHECK(apex.z == doctest::Approx(1.0).epsilon(1e-4));

    // grad omega(y) = y / sqrt(1-|y|^2), differentiated in closed form
    Vec3 p = inverse_gauss(s, {0.6, 0.0});
    CHECK(p.x == doctest::Approx(0.75).epsilon(2e-3));
    CHECK(p.y == doctest::Approx(0.0).scale(1).epsilon(1e-6));
    CHECK(p.z == doctest::Approx(1.25).epsilon(2e-3));
}

TEST_CASE("inverse Gauss map treats affine supports as constant gradients") {
    ConeSpec cone = minkowski_cone(65);
    const Vec3 X0{0.3, 0.2, -0.1};
    SupportFunction s = affine_support(cone, X0);
    Vec3 p = inverse_gauss(s, {0.1, -0.3});
    CHECK((p - X0).norm() <= 1e-9);
}

TEST_CASE("inverse Gauss map rejects creases") {
    ConeSpec cone = minkowski_cone(65);
    SupportFunction s = support_from_points(cone, {{-1, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(inverse_gauss(s, {0.0, 0.2}), std::invalid_argument);
}

TEST_CASE("gauss map at the hyperboloid apex and at a cone vertex") {
    auto disk = make_domain(Ball{1.0}, 101);
    GaugeFunction omega = minkowski_gauge(disk);
    ConeSpec cone = minkowski_cone(101);
    SupportFunction s(cone, omega.omega());
    auto apex_set = gauss_map(s, {0.0, 0.0, 1.0});
    REQUIRE(!apex_set.empty());
    // the equality band at tolerance 4h around the apex has radius ~sqrt(8h)
    double band = std::sqrt(2.5 * 4.0 * disk->spacing());
    double nearest = 1e300;
    for (const auto& y : apex_set) {
        CHECK(y.norm() <= band);
        nearest = std::min(nearest, y.norm());
    }
    CHECK(nearest <= 2.0 * disk->spacing());

    const Vec3 X0{0.1, -0.2, 0.05};
    SupportFunction aff = affine_support(cone, X0);
    auto vertex_set = gauss_map(aff, X0);
    CHECK(static_cast<int>(vertex_set.size()) == aff.s.domain->node_count());
}

TEST_CASE("gauss map of a smooth boundary point matches the gradient oracle") {
    auto disk = make_domain(Ball{1.0}, 101);
    GaugeFunction omega = minkowski_gauge(disk);
    ConeSpec cone = minkowski_cone(101);
    SupportFunction s(cone, omega.omega());
    const Vec2 x{0.5, 0.2};
    double fx = std::sqrt(1.0 + x.squared_norm());
    auto set = gauss_map(s, Vec3(x, fx));
    REQUIRE(!set.empty());
    // finite-difference gradient of f = sqrt(1+|x|^2)
    Vec2 grad{x.x / fx, x.y / fx};
    double nearest = 1e300;
    for (const auto& y : set) {
        CHECK((y - grad).norm() <= 0.6);
        nearest = std::min(nearest, (y - grad).norm());
    }
    CHECK(nearest <= 2.0 * disk->spacing());
}

TEST_CASE("gauss/inverse-gauss round trip on a smooth support") {
    auto disk = make_domain(Ball{1.0}, 101);
    GaugeFunction omega = minkowski_gauge(disk);
    ConeSpec cone = minkowski_cone(101);
    SupportFunction s(cone, omega.omega());
    double h = disk->spacing();
    for (Vec2 y : {Vec2{0.3, 0.1}, Vec2{-0.5, 0.2}, Vec2{0.0, -0.6}}) {
        Vec3 X = inverse_gauss(s, y);
        auto set = gauss_map(s, X);
        REQUIRE(!set.empty());
        double best = 1e300;
        for (const auto& yy : set) best = std::min(best, (yy - y).norm());
        CHECK(best <= 2.0 * h);
    }
}

TEST_CASE("minkowski sums act on support functions additively") {
    ConeSpec cone = minkowski_cone(65);
    const Vec3 X0{0.2, -0.1, 0.4}, X1{-0.3, 0.25, 0.1};
    SupportFunction a = affine_support(cone, X0);
    SupportFunction b = affine_support(cone, X1);
    SupportFunction zero = zero_support(cone);
    SupportFunction a_plus_zero = minkowski_sum_support(a, zero);
    for (int k = 0; k < a.s.domain->node_count(); ++k)
        CHECK(a_plus_zero.s.values[k] == doctest::Approx(a.s.values[k]).epsilon(1e-15));
    SupportFunction sum = minkowski_sum_support(a, b);
    SupportFunction direct = affine_support(cone, X0 + X1);
    for (int k = 0; k < sum.s.domain->node_count(); ++k)
        CHECK(sum.s.values[k] == doctest::Approx(direct.s.values[k]).epsilon(1e-13));
}

TEST_CASE("cauchy development half-spaces carve out the cone") {
    ConeSpec cone = minkowski_cone(65);
    std::vector<double> zeros(cone.omega_star->boundary_nodes().size(), 0.0);
    HalfspaceFamily d0 = cauchy_development_halfspaces(zeros, *cone.omega_star);
    CHECK(d0.contains({0, 0, 1}));
    CHECK_FALSE(d0.contains({2, 0, 1}));

    const Vec3 X0{0.5, -0.2, 1.0};
    std::vector<double> trace;
    for (const auto& b : cone.omega_star->boundary_nodes()) trace.push_back(pair_down(X0, b));
    HalfspaceFamily dx = cauchy_development_halfspaces(trace, *cone.omega_star);
    CHECK(dx.contains(X0 + Vec3{0, 0, 0.5}));
    CHECK_FALSE(dx.contains(X0 + Vec3{0, 0, -0.5}));

    HalfspaceFamily all = cauchy_development_whole_space();
    CHECK(all.contains({100, -50, -3}));
}
