#pragma once

#include <string>

#include "affst/cone.hpp"
#include "affst/deform.hpp"
#include "affst/sphere.hpp"

// vendored single-header json
#include "json.hpp"

namespace affst {

/// %.17g rendering used by every CSV artifact (diff-able, round-trip exact).
std::string format_g17(double v);

nlohmann::json shape_to_json(const Shape& s);
ShapeSpec shape_from_json(const nlohmann::json& j, int* dim);

/// CSV rows "y1,y2,value" plus a JSON sidecar (same path with .json extension)
/// holding {domain, resolution, spacing, convexity_certified[, boundary_values]}.
void write_grid_csv(const GridFunction& f, const std::string& csv_path);
GridFunction read_grid_csv(const std::string& csv_path);

std::string sidecar_path(const std::string& csv_path);

void write_halfspaces_json(const HalfspaceFamily& hs, const std::string& path);
HalfspaceFamily read_halfspaces_json(const std::string& path);

/// Group fixtures: {dim, generators: {label: row-major matrix}, relators: [words]}.
void write_group_json(const GroupRep& rep, const std::string& path);
GroupRepPtr read_group_json(const std::string& path, const ConeSpec* cone = nullptr);

/// Cocycles: {label: vector}.
void write_cocycle_json(const Cocycle& c, const std::string& path);
Cocycle read_cocycle_json(GroupRepPtr rep, const std::string& path);

/// Splitting data: {gens_A, gens_B, lambda_words, X, s[, H_normal]}.
void write_splitting_json(const Splitting& s, const std::string& path);
Splitting read_splitting_json(const std::string& path);

void write_solve_log(const std::vector<SolveLogEntry>& log, const std::string& path);

/// Run manifest: inputs, tolerances, timings and the content hash of every
/// artifact the run wrote.
class RunManifest {
public:
    RunManifest(std::string command, nlohmann::json config);

    void add_input(const std::string& path);
    void add_output(const std::string& path);  // hashes the file content
    void add_timing(const std::string& name, double ms);
    void add_tolerance(const std::string& name, double value);

    void write(const std::string& path) const;
    const nlohmann::json& data() const { return j_; }

private:
    nlohmann::json j_;
};

std::uint64_t hash_file(const std::string& path);

}  // namespace affst
