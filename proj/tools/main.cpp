// affst: convex-geometry toolkit for affine spacetimes.
//
// Subcommands: sphere solve, lf transform, cosmo field, cosmo foliate,
// deform orbit|gtau|domain, bend, verify <suite>.
// Exit codes: 0 ok, 1 validation, 2 numerical failure, 3 verification failure.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "affst/pipelines.hpp"
#include "affst/verify.hpp"

namespace {

affst::ShapeSpec parse_shape(const std::string& shape, double radius, double a, double b,
                             const std::string& vertices) {
    if (shape == "disk") return affst::Ball{radius};
    if (shape == "ellipse") return affst::Ellipse{a, b};
    if (shape == "polygon") {
        affst::Polygon p;
        std::istringstream is(vertices);
        std::string pair;
        while (std::getline(is, pair, ';')) {
            double x, y;
            if (std::sscanf(pair.c_str(), "%lf,%lf", &x, &y) != 2)
                throw CLI::ValidationError("--vertices", "expected x,y;x,y;...");
            p.vertices.push_back({x, y});
        }
        return p;
    }
    throw CLI::ValidationError("--shape", "one of disk|ellipse|polygon");
}

affst::Window parse_window(const std::string& text) {
    affst::Window w;
    double lo, hi;
    if (std::sscanf(text.c_str(), "%lf,%lf", &lo, &hi) != 2 || hi <= lo)
        throw CLI::ValidationError("--window", "expected lo,hi with lo < hi");
    w.lo = {lo, lo};
    w.hi = {hi, hi};
    return w;
}

affst::CocycleSource parse_cocycle(const std::string& kind, const std::string& v_text, double s,
                                   const std::string& path) {
    affst::CocycleSource src;
    if (kind == "zero") {
        src.kind = affst::CocycleSource::Kind::Zero;
    } else if (kind == "coboundary") {
        src.kind = affst::CocycleSource::Kind::Coboundary;
        if (std::sscanf(v_text.c_str(), "%lf,%lf,%lf", &src.V[0], &src.V[1], &src.V[2]) != 3)
            throw CLI::ValidationError("--V", "expected v1,v2,v3");
    } else if (kind == "bending") {
        src.kind = affst::CocycleSource::Kind::Bending;
        src.s = s;
    } else if (kind == "file") {
        src.kind = affst::CocycleSource::Kind::File;
        if (path.empty()) throw CLI::ValidationError("--cocycle-file", "required for --cocycle file");
        src.path = path;
    } else {
        throw CLI::ValidationError("--cocycle", "one of zero|coboundary|bending|file");
    }
    return src;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex-geometry machinery for affine spacetimes"};
    app.require_subcommand(1);

    auto* sphere = app.add_subcommand("sphere", "Cheng-Yau gauge solver");
    auto* solve = sphere->add_subcommand("solve", "solve det Hess w = (-w)^{-d-2}");
    std::string shape = "disk", vertices;
    double radius = 1.0, ell_a = 1.0, ell_b = 1.0;
    int n = 101, max_iter = 4000;
    double tol = 1e-3;
    std::string out = "omega.csv", outdir = ".";
    solve->add_option("--shape", shape, "disk|ellipse|polygon")->capture_default_str();
    solve->add_option("--radius", radius, "disk radius")->capture_default_str();
    solve->add_option("--a", ell_a, "ellipse semi-axis a")->capture_default_str();
    solve->add_option("--b", ell_b, "ellipse semi-axis b")->capture_default_str();
    solve->add_option("--vertices", vertices, "polygon vertices x,y;x,y;...");
    solve->add_option("--n", n, "nodes per axis (>= 33)")->capture_default_str();
    solve->add_option("--tol", tol, "residual tolerance")->capture_default_str();
    solve->add_option("--max-iter", max_iter, "iteration cap")->capture_default_str();
    solve->add_option("--out", out, "output csv name")->capture_default_str();
    solve->add_option("--outdir", outdir, "output directory")->capture_default_str();

    auto* lf = app.add_subcommand("lf", "discrete Legendre-Fenchel transform");
    auto* lft = lf->add_subcommand("transform", "conjugate a sampled function");
    std::string lf_in, lf_out = "lf.csv", lf_outdir = ".", lf_window = "-2,2";
    int lf_n = 81;
    lft->add_option("--in", lf_in, "input grid csv")->required();
    lft->add_option("--window", lf_window, "dual window lo,hi")->capture_default_str();
    lft->add_option("--n", lf_n, "dual resolution")->capture_default_str();
    lft->add_option("--out", lf_out, "output csv name")->capture_default_str();
    lft->add_option("--outdir", lf_outdir, "output directory")->capture_default_str();

    auto* cosmo = app.add_subcommand("cosmo", "cosmological time tools");
    auto* field = cosmo->add_subcommand("field", "charts for a point cloud");
    std::string cf_support, cf_omega, cf_points, cf_out = "chart.csv", cf_outdir = ".";
    field->add_option("--support", cf_support, "support function csv")->required();
    field->add_option("--omega", cf_omega, "gauge csv")->required();
    field->add_option("--points", cf_points, "points csv x1,x2,x3")->required();
    field->add_option("--out", cf_out, "output csv name")->capture_default_str();
    field->add_option("--outdir", cf_outdir, "output directory")->capture_default_str();

    auto* foliate = cosmo->add_subcommand("foliate", "level sets of the cosmological time");
    std::string fo_support, fo_omega, fo_t = "0.5,1,2", fo_out = "mesh", fo_outdir = ".",
                fo_window = "-2,2";
    int fo_n = 41;
    foliate->add_option("--support", fo_support, "support function csv")->required();
    foliate->add_option("--omega", fo_omega, "gauge csv")->required();
    foliate->add_option("--t", fo_t, "comma-separated times")->capture_default_str();
    foliate->add_option("--window", fo_window, "graph window lo,hi")->capture_default_str();
    foliate->add_option("--n", fo_n, "graph resolution")->capture_default_str();
    foliate->add_option("--out", fo_out, "output subdirectory")->capture_default_str();
    foliate->add_option("--outdir", fo_outdir, "output directory")->capture_default_str();

    auto* deform = app.add_subcommand("deform", "affine deformations");
    std::string de_group = "builtin:genus2", de_split, de_cocycle = "zero", de_V = "0,0,0",
                de_file, de_X0, de_outdir = ".", de_prefix;
    double de_s = 0.2;
    int de_L = 4, de_n = 65;
    std::size_t de_cap = 50000;
    std::string de_what;
    for (const char* what : {"orbit", "gtau", "domain"}) {
        auto* sub = deform->add_subcommand(what, std::string("compute ") + what);
        sub->add_option("--group", de_group, "fixture path or builtin:genus2")->capture_default_str();
        sub->add_option("--splitting", de_split, "splitting json (optional)");
        sub->add_option("--cocycle", de_cocycle, "zero|coboundary|bending|file")->capture_default_str();
        sub->add_option("--V", de_V, "coboundary vector v1,v2,v3")->capture_default_str();
        sub->add_option("--s", de_s, "bending parameter")->capture_default_str();
        sub->add_option("--cocycle-file", de_file, "cocycle json for --cocycle file");
        sub->add_option("--X0", de_X0, "orbit base point x1,x2,x3");
        sub->add_option("--L", de_L, "word length")->capture_default_str();
        sub->add_option("--cap", de_cap, "word enumeration cap")->capture_default_str();
        sub->add_option("--n", de_n, "Omega* grid resolution")->capture_default_str();
        sub->add_option("--prefix", de_prefix, "output file prefix");
        sub->add_option("--outdir", de_outdir, "output directory")->capture_default_str();
        sub->callback([&de_what, what] { de_what = what; });
    }

    auto* bend = app.add_subcommand("bend", "bending cocycle of a splitting");
    std::string be_group = "builtin:genus2", be_split, be_outdir = ".";
    double be_s = 0.3;
    bend->add_option("--group", be_group, "fixture path or builtin:genus2")->capture_default_str();
    bend->add_option("--splitting", be_split, "splitting json (optional)");
    bend->add_option("--s", be_s, "bending parameter")->capture_default_str();
    bend->add_option("--outdir", be_outdir, "output directory")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    std::string suite = "acceptance", v_workdir;
    int v_n = 101;
    std::uint64_t v_seed = 0;
    verify->add_option("suite", suite, "fenchel|sphere|cosmo|deform|determinism|acceptance")
        ->required();
    verify->add_option("--n", v_n, "grid resolution")->capture_default_str();
    verify->add_option("--seed", v_seed, "sampling seed")->capture_default_str();
    verify->add_option("--workdir", v_workdir, "scratch directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            affst::SphereSolveConfig cfg;
            cfg.shape = parse_shape(shape, radius, ell_a, ell_b, vertices);
            cfg.resolution = n;
            cfg.tol = tol;
            cfg.max_iter = max_iter;
            cfg.out = out;
            affst::run_sphere_solve(cfg, outdir);
            std::cout << "wrote " << out << " in " << affst::resolve_outdir(outdir) << "\n";
        } else if (*lft) {
            affst::LfTransformConfig cfg;
            cfg.input = lf_in;
            cfg.window = parse_window(lf_window);
            cfg.dual_resolution = lf_n;
            cfg.out = lf_out;
            affst::run_lf_transform(cfg, lf_outdir);
            std::cout << "wrote " << lf_out << " in " << affst::resolve_outdir(lf_outdir) << "\n";
        } else if (*field) {
            affst::CosmoFieldConfig cfg;
            cfg.support_csv = cf_support;
            cfg.omega_csv = cf_omega;
            cfg.points_csv = cf_points;
            cfg.out = cf_out;
            affst::run_cosmo_field(cfg, cf_outdir);
            std::cout << "wrote " << cf_out << " in " << affst::resolve_outdir(cf_outdir) << "\n";
        } else if (*foliate) {
            affst::CosmoFoliateConfig cfg;
            cfg.support_csv = fo_support;
            cfg.omega_csv = fo_omega;
            cfg.times.clear();
            std::istringstream is(fo_t);
            std::string tok;
            while (std::getline(is, tok, ',')) cfg.times.push_back(std::stod(tok));
            cfg.window = parse_window(fo_window);
            cfg.resolution = fo_n;
            cfg.out = fo_out;
            affst::run_cosmo_foliate(cfg, fo_outdir);
            std::cout << "wrote level sets under " << fo_out << "\n";
        } else if (!de_what.empty()) {
            affst::DeformConfig cfg;
            cfg.group = de_group;
            cfg.splitting = de_split;
            cfg.cocycle = parse_cocycle(de_cocycle, de_V, de_s, de_file);
            if (!de_X0.empty()) {
                Eigen::Vector3d x0;
                if (std::sscanf(de_X0.c_str(), "%lf,%lf,%lf", &x0[0], &x0[1], &x0[2]) != 3)
                    throw CLI::ValidationError("--X0", "expected x1,x2,x3");
                cfg.X0 = x0;
            }
            cfg.word_length = de_L;
            cfg.cap = de_cap;
            cfg.resolution = de_n;
            cfg.out_prefix = de_prefix;
            affst::run_deform(de_what, cfg, de_outdir);
            std::cout << "wrote deform " << de_what << " artifacts in "
                      << affst::resolve_outdir(de_outdir) << "\n";
        } else if (*bend) {
            affst::BendConfig cfg;
            cfg.group = be_group;
            cfg.splitting = be_split;
            cfg.s = be_s;
            affst::run_bend(cfg, be_outdir);
            std::cout << "wrote tau.json in " << affst::resolve_outdir(be_outdir) << "\n";
        } else if (*verify) {
            affst::VerifyOptions opts;
            opts.seed = v_seed;
            opts.resolution = v_n;
            opts.workdir = v_workdir;
            affst::SuiteResult res = affst::verify_suite(suite, opts);
            for (const auto& c : res.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
            if (!res.pass()) {
                std::cout << "suite " << suite << ": FAIL\n";
                return 3;
            }
            std::cout << "suite " << suite << ": PASS\n";
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const affst::SolveError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
