#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affst/cosmo.hpp"
#include "affst/deform.hpp"
#include "affst/io.hpp"

namespace affst {

/// Output directory resolution: AFFST_OUT_ROOT overrides relative roots.
std::string resolve_outdir(const std::string& outdir);

struct SphereSolveConfig {
    ShapeSpec shape = Ball{1.0};
    int resolution = 101;
    double tol = 1e-3;
    int max_iter = 4000;
    std::string out = "omega.csv";
};

/// Writes omega.csv(.json), solve_log.jsonl and manifest.json; returns the
/// gauge for in-process reuse.
GaugeFunction run_sphere_solve(const SphereSolveConfig& cfg, const std::string& outdir);

struct LfTransformConfig {
    std::string input;           // grid csv
    Window window{{-2, -2}, {2, 2}};
    int dual_resolution = 81;
    std::string out = "lf.csv";
};

GridFunction run_lf_transform(const LfTransformConfig& cfg, const std::string& outdir);

/// Cocycle source: zero, coboundary at V, bending at s, or an explicit file.
struct CocycleSource {
    enum class Kind { Zero, Coboundary, Bending, File } kind = Kind::Zero;
    Eigen::Vector3d V = Eigen::Vector3d::Zero();
    double s = 0.0;
    std::string path;
};

struct DeformConfig {
    std::string group = "builtin:genus2";  // or a fixture json path
    std::string splitting;                 // optional splitting json path
    CocycleSource cocycle;
    std::optional<Eigen::Vector3d> X0;     // defaults: V for coboundaries, 0 otherwise
    int word_length = 4;
    std::size_t cap = 50000;
    int resolution = 65;                   // Omega* grid for envelopes
    std::string out_prefix;
};

struct DeformArtifacts {
    std::vector<OrbitPoint> orbit;
    BoundaryEstimate estimate;
    std::optional<MaximalDomain> domain;
};

DeformArtifacts run_deform(const std::string& what,  // "orbit" | "gtau" | "domain"
                           const DeformConfig& cfg, const std::string& outdir);

struct BendConfig {
    std::string group = "builtin:genus2";
    std::string splitting;  // optional path; builtin splitting otherwise
    double s = 0.3;
};

Cocycle run_bend(const BendConfig& cfg, const std::string& outdir);

struct CosmoFieldConfig {
    std::string support_csv;
    std::string omega_csv;
    std::string points_csv;  // rows x1,x2,x3
    std::string out = "chart.csv";
};

void run_cosmo_field(const CosmoFieldConfig& cfg, const std::string& outdir);

struct CosmoFoliateConfig {
    std::string support_csv;
    std::string omega_csv;
    std::vector<double> times{0.5, 1.0, 2.0};
    Window window{{-2, -2}, {2, 2}};
    int resolution = 41;
    std::string out = "mesh";
};

void run_cosmo_foliate(const CosmoFoliateConfig& cfg, const std::string& outdir);

/// Shared helpers for building the fixtures the pipelines use.
GroupRepPtr load_group(const std::string& spec, const ConeSpec* cone, Splitting* builtin_split);
Cocycle make_cocycle(GroupRepPtr rep, const Splitting& split, const CocycleSource& src);

}  // namespace affst
