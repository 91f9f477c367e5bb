#include "doctest.h"

#include "affst/grid.hpp"

using namespace affst;

TEST_CASE("lattice nodes stay strictly inside the shape") {
    auto disk = make_domain(Ball{1.0}, 41);
    for (int k = 0; k < disk->node_count(); ++k) {
        CHECK(disk->node(k).norm() < 1.0);
        CHECK(disk->node_boundary_distance(k) == doctest::Approx(1.0 - disk->node(k).norm()));
    }
    CHECK(disk->spacing() == doctest::Approx(2.0 / 40));
    CHECK(static_cast<int>(disk->boundary_nodes().size()) == 4 * 41);
}

TEST_CASE("polygon domains require the origin inside") {
    Polygon far_square{{{2, 2}, {3, 2}, {3, 3}, {2, 3}}};
    CHECK_THROWS_AS(make_domain(far_square, 11), std::invalid_argument);
    Polygon square{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    auto dom = make_domain(square, 11);
    CHECK(dom->node_count() == 9 * 9);
}

TEST_CASE("polygon boundary samples include every vertex") {
    Polygon tri{{{-1, -1}, {2, -0.5}, {-0.5, 1.5}}};
    Shape s(tri, 2);
    auto samples = s.boundary_samples(40);
    CHECK(samples.size() == 40);
    for (const auto& v : std::get<Polygon>(s.spec()).vertices) {
        bool found = false;
        for (const auto& b : samples) found |= (b - v).norm() < 1e-12;
        CHECK(found);
    }
}

TEST_CASE("shape gauge and ray exit agree") {
    Shape e(Ellipse{2.0, 0.5}, 2);
    Vec2 p{0.3, 0.1};
    Vec2 u{1.0, 0.4};
    u = u / u.norm();
    double t = e.ray_exit(p, u);
    CHECK(e.gauge(p + u * t) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("convexity certification separates convex from concave samples") {
    auto disk = make_domain(Ball{1.0}, 41);
    GridFunction f = sample_function(disk, [](const Vec2& y) { return 0.5 * y.squared_norm(); });
    CHECK(certify_convexity(f));
    GridFunction g = sample_function(disk, [](const Vec2& y) { return -0.5 * y.squared_norm(); });
    CHECK_FALSE(certify_convexity(g));
    GridFunction a = sample_function(disk, [](const Vec2& y) { return 3.0 * y.x - 0.2 * y.y + 1.0; });
    CHECK(certify_convexity(a));
}

TEST_CASE("bilinear interpolation reproduces affine data exactly") {
    auto disk = make_domain(Ball{1.0}, 33);
    GridFunction f = sample_function(disk, [](const Vec2& y) { return 2.0 * y.x - y.y + 0.25; });
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Vec2 p = rng.in_disk(0.8);
        auto v = f.interpolate(p);
        REQUIRE(v.has_value());
        CHECK(*v == doctest::Approx(2.0 * p.x - p.y + 0.25).epsilon(1e-12));
    }
}

TEST_CASE("one-dimensional domains behave as intervals") {
    auto seg = make_domain(Ball{2.0}, 21, 1);
    CHECK(seg->node_count() == 19);
    CHECK(seg->boundary_nodes().size() == 2);
    GridFunction f = sample_function(seg, [](const Vec2& y) { return y.x * y.x; });
    CHECK(certify_convexity(f));
}
