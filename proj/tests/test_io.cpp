#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "affst/io.hpp"

using namespace affst;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("affst_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("grid csv round trip") {
    TempDir tmp;
    auto dom = make_domain(Ellipse{1.5, 0.8}, 21);
    GridFunction f = sample_function(
        dom, [](const Vec2& y) { return std::sin(y.x) + y.y * y.y; }, true);
    certify_convexity(f);
    write_grid_csv(f, tmp.file("f.csv"));
    GridFunction g = read_grid_csv(tmp.file("f.csv"));
    REQUIRE(g.domain->node_count() == dom->node_count());
    for (int k = 0; k < dom->node_count(); ++k)
        CHECK(g.values[k] == f.values[k]);  // %.17g round-trips doubles exactly
    CHECK(g.boundary_values == f.boundary_values);
    CHECK(g.convexity_certified == f.convexity_certified);
}

TEST_CASE("polygon domains serialize") {
    TempDir tmp;
    Polygon p{{{-1, -1}, {1.5, -0.5}, {0.5, 1.2}, {-1.2, 0.8}}};
    auto dom = make_domain(p, 17);
    GridFunction f = sample_function(dom, [](const Vec2& y) { return y.x - 2.0 * y.y; });
    write_grid_csv(f, tmp.file("poly.csv"));
    GridFunction g = read_grid_csv(tmp.file("poly.csv"));
    CHECK(g.domain->node_count() == dom->node_count());
    CHECK(g.values == f.values);
}

TEST_CASE("halfspace family round trip") {
    TempDir tmp;
    auto dom = make_domain(Ball{1.0}, 17);
    std::vector<double> g;
    for (const auto& b : dom->boundary_nodes()) g.push_back(b.x * 0.3 - 0.1);
    HalfspaceFamily hs = cauchy_development_halfspaces(g, *dom);
    write_halfspaces_json(hs, tmp.file("hs.json"));
    HalfspaceFamily back = read_halfspaces_json(tmp.file("hs.json"));
    REQUIRE(back.directions.size() == hs.directions.size());
    for (std::size_t i = 0; i < hs.offsets.size(); ++i) CHECK(back.offsets[i] == hs.offsets[i]);
}

TEST_CASE("group fixture and cocycle round trip") {
    TempDir tmp;
    Genus2Fixture fix = genus2_fixture();
    write_group_json(*fix.rep, tmp.file("group.json"));
    GroupRepPtr rep = read_group_json(tmp.file("group.json"));
    CHECK(rep->dim() == 3);
    for (const auto& [label, m] : fix.rep->generators())
        CHECK((rep->generator(label) - m).norm() <= 1e-12);

    Splitting split = fix.splitting;
    split.s = 0.25;
    write_splitting_json(split, tmp.file("split.json"));
    Splitting back = read_splitting_json(tmp.file("split.json"));
    CHECK(back.gens_A == split.gens_A);
    CHECK(back.gens_B == split.gens_B);
    CHECK((back.X - split.X).norm() <= 1e-15);
    CHECK(back.s == split.s);

    Cocycle bend = bend_translation(rep, back);
    write_cocycle_json(bend, tmp.file("tau.json"));
    Cocycle again = read_cocycle_json(rep, tmp.file("tau.json"));
    for (const auto& [label, v] : bend.generator_tau())
        CHECK((again.generator_tau().at(label) - v).norm() == 0.0);
}

TEST_CASE("manifest records output hashes") {
    TempDir tmp;
    std::ofstream(tmp.file("artifact.txt")) << "payload";
    RunManifest man("test", {{"n", 17}});
    man.add_input("somewhere/input.csv");
    man.add_output(tmp.file("artifact.txt"));
    man.add_tolerance("tol", 1e-3);
    man.add_timing("solve", 12.5);
    man.write(tmp.file("manifest.json"));
    auto j = nlohmann::json::parse(std::ifstream(tmp.file("manifest.json")));
    CHECK(j["outputs"].size() == 1);
    CHECK(j["outputs"][0]["path"] == tmp.file("artifact.txt"));
    CHECK(j["outputs"][0]["fnv1a64"].get<std::string>().size() == 16);
    // identical content gives identical hashes
    std::ofstream(tmp.file("copy.txt")) << "payload";
    CHECK(hash_file(tmp.file("copy.txt")) == hash_file(tmp.file("artifact.txt")));
}
