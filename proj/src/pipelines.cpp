#include "affst/pipelines.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace affst {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

json window_json(const Window& w) {
    return {{"lo", {w.lo.x, w.lo.y}}, {"hi", {w.hi.x, w.hi.y}}};
}

json cocycle_json(const CocycleSource& src) {
    switch (src.kind) {
        case CocycleSource::Kind::Zero:
            return {{"kind", "zero"}};
        case CocycleSource::Kind::Coboundary:
            return {{"kind", "coboundary"}, {"V", {src.V[0], src.V[1], src.V[2]}}};
        case CocycleSource::Kind::Bending:
            return {{"kind", "bending"}, {"s", src.s}};
        case CocycleSource::Kind::File:
            return {{"kind", "file"}, {"path", src.path}};
    }
    return {};
}

}  // namespace

std::string resolve_outdir(const std::string& outdir) {
    std::string dir = outdir.empty() ? "." : outdir;
    if (const char* root = std::getenv("AFFST_OUT_ROOT"); root && *root && fs::path(dir).is_relative())
        dir = (fs::path(root) / dir).string();
    fs::create_directories(dir);
    return dir;
}

GaugeFunction run_sphere_solve(const SphereSolveConfig& cfg, const std::string& outdir) {
    std::string dir = resolve_outdir(outdir);
    auto t0 = std::chrono::steady_clock::now();
    auto dom = make_domain(cfg.shape, cfg.resolution);
    SolveOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    SolveResult res = solve_affine_sphere(dom, opts);
    double solve_ms = ms_since(t0);

    std::string csv = join(dir, cfg.out);
    write_grid_csv(res.gauge.omega(), csv);
    std::string log_path = join(dir, "solve_log.jsonl");
    write_solve_log(res.log, log_path);

    RunManifest man("sphere solve", {{"shape", shape_to_json(dom->shape())},
                                     {"resolution", cfg.resolution},
                                     {"tol", cfg.tol},
                                     {"max_iter", cfg.max_iter}});
    man.add_tolerance("tol", cfg.tol);
    man.add_timing("solve", solve_ms);
    man.add_output(csv);
    man.add_output(sidecar_path(csv));
    man.add_output(log_path);
    man.write(join(dir, "manifest.json"));
    return std::move(res.gauge);
}

GridFunction run_lf_transform(const LfTransformConfig& cfg, const std::string& outdir) {
    std::string dir = resolve_outdir(outdir);
    auto t0 = std::chrono::steady_clock::now();
    GridFunction f = read_grid_csv(cfg.input);
    GridFunction g = legendre_transform(f, cfg.window, cfg.dual_resolution);
    std::string csv = join(dir, cfg.out);
    write_grid_csv(g, csv);
    RunManifest man("lf transform", {{"input", cfg.input},
                                     {"window", window_json(cfg.window)},
                                     {"dual_resolution", cfg.dual_resolution}});
    man.add_input(cfg.input);
    man.add_timing("transform", ms_since(t0));
    man.add_output(csv);
    man.add_output(sidecar_path(csv));
    man.write(join(dir, "manifest.json"));
    return g;
}

GroupRepPtr load_group(const std::string& spec, const ConeSpec* cone, Splitting* builtin_split) {
    if (spec == "builtin:genus2") {
        Genus2Fixture fix = genus2_fixture(cone);
        if (builtin_split) *builtin_split = fix.splitting;
        return fix.rep;
    }
    return read_group_json(spec, cone);
}

Cocycle make_cocycle(GroupRepPtr rep, const Splitting& split, const CocycleSource& src) {
    switch (src.kind) {
        case CocycleSource::Kind::Zero:
            return coboundary(rep, Eigen::VectorXd::Zero(rep->dim()));
        case CocycleSource::Kind::Coboundary:
            return coboundary(rep, src.V);
        case CocycleSource::Kind::Bending: {
            Splitting s = split;
            s.s = src.s;
            return bend_translation(rep, s);
        }
        case CocycleSource::Kind::File:
            return read_cocycle_json(rep, src.path);
    }
    throw std::invalid_argument("cocycle source: unknown kind");
}

DeformArtifacts run_deform(const std::string& what, const DeformConfig& cfg,
                           const std::string& outdir) {
    std::string dir = resolve_outdir(outdir);
    auto t0 = std::chrono::steady_clock::now();
    ConeSpec cone(make_domain(Ball{1.0}, cfg.resolution), cfg.resolution);
    Splitting split;
    GroupRepPtr rep = load_group(cfg.group, &cone, &split);
    if (!cfg.splitting.empty()) split = read_splitting_json(cfg.splitting);
    Cocycle tau = make_cocycle(rep, split, cfg.cocycle);

    Eigen::Vector3d X0 = Eigen::Vector3d::Zero();
    if (cfg.X0)
        X0 = *cfg.X0;
    else if (cfg.cocycle.kind == CocycleSource::Kind::Coboundary)
        X0 = cfg.cocycle.V;  // the fixed point of the conjugated action

    RunManifest man("deform " + what, {{"group", cfg.group},
                                       {"cocycle", cocycle_json(cfg.cocycle)},
                                       {"X0", {X0[0], X0[1], X0[2]}},
                                       {"word_length", cfg.word_length},
                                       {"cap", cfg.cap},
                                       {"resolution", cfg.resolution}});
    DeformArtifacts out;
    out.orbit = orbit_points(tau, X0, cfg.word_length, cfg.cap);
    std::string prefix = cfg.out_prefix;

    {
        std::string path = join(dir, prefix + "orbit.csv");
        std::ofstream os(path);
        for (const auto& op : out.orbit)
            os << format_g17(op.point[0]) << ',' << format_g17(op.point[1]) << ','
               << format_g17(op.point[2]) << ',' << op.word_length << '\n';
        man.add_output(path);
    }
    if (what != "orbit") {
        out.estimate = estimate_boundary_function(out.orbit, *cone.omega_star);
        HalfspaceFamily hs = cauchy_development_halfspaces(out.estimate.g, *cone.omega_star);
        std::string path = join(dir, prefix + "gtau.json");
        write_halfspaces_json(hs, path);
        man.add_output(path);
        man.add_tolerance("cauchy_gap", out.estimate.cauchy_gap);
    }
    if (what == "domain") {
        out.domain = maximal_domain(out.estimate.g, cone.omega_star);
        std::string minus_path = join(dir, prefix + "s_minus.csv");
        std::string plus_path = join(dir, prefix + "s_plus.csv");
        write_grid_csv(out.domain->s_minus, minus_path);
        write_grid_csv(out.domain->s_plus, plus_path);
        man.add_output(minus_path);
        man.add_output(sidecar_path(minus_path));
        man.add_output(plus_path);
        man.add_output(sidecar_path(plus_path));
    }
    man.add_timing("total", ms_since(t0));
    man.write(join(dir, prefix + "manifest.json"));
    return out;
}

Cocycle run_bend(const BendConfig& cfg, const std::string& outdir) {
    std::string dir = resolve_outdir(outdir);
    Splitting split;
    GroupRepPtr rep = load_group(cfg.group, nullptr, &split);
    if (!cfg.splitting.empty()) split = read_splitting_json(cfg.splitting);
    split.s = cfg.s;
    Cocycle tau = bend_translation(rep, split);
    std::string group_path = join(dir, "group.json");
    std::string split_path = join(dir, "splitting.json");
    std::string tau_path = join(dir, "tau.json");
    write_group_json(*rep, group_path);
    write_splitting_json(split, split_path);
    write_cocycle_json(tau, tau_path);
    RunManifest man("bend", {{"group", cfg.group}, {"s", cfg.s}});
    man.add_output(group_path);
    man.add_output(split_path);
    man.add_output(tau_path);
    man.write(join(dir, "manifest.json"));
    return tau;
}

void run_cosmo_field(const CosmoFieldConfig& cfg, const std::string& outdir) {
    std::string dir = resolve_outdir(outdir);
    auto t0 = std::chrono::steady_clock::now();
    GridFunction s_grid = read_grid_csv(cfg.support_csv);
    GridFunction omega_grid = read_grid_csv(cfg.omega_csv);
    GaugeFunction omega = GaugeFunction::from_grid(std::move(omega_grid));
    ConeSpec cone(make_domain(Ball{1.0}, s_grid.domain->resolution()),
                  s_grid.domain->resolution());
    SupportFunction s(cone, std::move(s_grid));

    std::ifstream pts(cfg.points_csv);
    if (!pts) throw std::runtime_error("cannot read " + cfg.points_csv);
    std::string out_path = join(dir, cfg.out);
    std::ofstream os(out_path);
    std::string line;
    while (std::getline(pts, line)) {
        if (line.empty()) continue;
        double x1, x2, x3;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x1, &x2, &x3) != 3)
            throw std::runtime_error(cfg.points_csv + ": bad row '" + line + "'");
        CosmoChart c = cosmological_chart(s, omega, {x1, x2, x3});
        os << format_g17(x1) << ',' << format_g17(x2) << ',' << format_g17(x3) << ','
           << format_g17(c.T) << ',' << format_g17(c.P.x) << ',' << format_g17(c.P.y) << ','
           << format_g17(c.P.z) << ',' << format_g17(c.y.x) << ',' << format_g17(c.y.y) << ','
           << (c.low_confidence ? 0 : 1) << '\n';
    }
    os.close();
    RunManifest man("cosmo field", {{"support", cfg.support_csv},
                                    {"omega", cfg.omega_csv},
                                    {"points", cfg.points_csv}});
    man.add_input(cfg.support_csv);
    man.add_input(cfg.omega_csv);
    man.add_input(cfg.points_csv);
    man.add_timing("field", ms_since(t0));
    man.add_output(out_path);
    man.write(join(dir, "manifest.json"));
}

void run_cosmo_foliate(const CosmoFoliateConfig& cfg, const std::string& outdir) {
    std::string dir = resolve_outdir(outdir);
    auto t0 = std::chrono::steady_clock::now();
    GridFunction s_grid = read_grid_csv(cfg.support_csv);
    GridFunction omega_grid = read_grid_csv(cfg.omega_csv);
    GaugeFunction omega = GaugeFunction::from_grid(std::move(omega_grid));
    ConeSpec cone(make_domain(Ball{1.0}, s_grid.domain->resolution()),
                  s_grid.domain->resolution());
    SupportFunction s(cone, std::move(s_grid));
    fs::create_directories(join(dir, cfg.out));
    RunManifest man("cosmo foliate", {{"support", cfg.support_csv},
                                      {"omega", cfg.omega_csv},
                                      {"t", cfg.times},
                                      {"window", window_json(cfg.window)},
                                      {"resolution", cfg.resolution}});
    man.add_input(cfg.support_csv);
    man.add_input(cfg.omega_csv);
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        GridFunction leaf = level_set(s, omega, cfg.times[i], cfg.window, cfg.resolution);
        std::string path = join(dir, cfg.out + "/level_" + std::to_string(i) + ".csv");
        write_grid_csv(leaf, path);
        man.add_output(path);
        man.add_output(sidecar_path(path));
    }
    man.add_timing("foliate", ms_since(t0));
    man.write(join(dir, cfg.out + "/manifest.json"));
}

}  // namespace affst
