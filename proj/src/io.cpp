#include "affst/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace affst {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sidecar_path(const std::string& csv_path) {
    auto dot = csv_path.rfind('.');
    if (dot == std::string::npos) return csv_path + ".json";
    return csv_path.substr(0, dot) + ".json";
}

json shape_to_json(const Shape& s) {
    json j;
    j["dim"] = s.dim();
    if (const auto* b = std::get_if<Ball>(&s.spec())) {
        j["kind"] = "disk";
        j["radius"] = b->radius;
    } else if (const auto* e = std::get_if<Ellipse>(&s.spec())) {
        j["kind"] = "ellipse";
        j["a"] = e->a;
        j["b"] = e->b;
    } else {
        j["kind"] = "polygon";
        json verts = json::array();
        for (const auto& v : std::get<Polygon>(s.spec()).vertices)
            verts.push_back({v.x, v.y});
        j["vertices"] = verts;
    }
    return j;
}

ShapeSpec shape_from_json(const json& j, int* dim) {
    if (dim) *dim = j.value("dim", 2);
    std::string kind = j.at("kind");
    if (kind == "disk") return Ball{j.at("radius").get<double>()};
    if (kind == "ellipse") return Ellipse{j.at("a").get<double>(), j.at("b").get<double>()};
    if (kind == "polygon") {
        Polygon p;
        for (const auto& v : j.at("vertices")) p.vertices.push_back({v[0], v[1]});
        return p;
    }
    throw std::invalid_argument("shape json: unknown kind '" + kind + "'");
}

void write_grid_csv(const GridFunction& f, const std::string& csv_path) {
    std::ofstream os(csv_path);
    if (!os) throw std::runtime_error("cannot write " + csv_path);
    const auto& d = *f.domain;
    for (int k = 0; k < d.node_count(); ++k) {
        const Vec2& p = d.node(k);
        os << format_g17(p.x) << ',' << format_g17(p.y) << ',' << format_g17(f.values[k]) << '\n';
    }
    json side;
    side["domain"] = shape_to_json(d.shape());
    side["resolution"] = d.resolution();
    side["spacing"] = d.spacing();
    side["convexity_certified"] = f.convexity_certified;
    if (f.has_boundary()) side["boundary_values"] = f.boundary_values;
    std::ofstream js(sidecar_path(csv_path));
    if (!js) throw std::runtime_error("cannot write " + sidecar_path(csv_path));
    js << side.dump(2) << '\n';
}

GridFunction read_grid_csv(const std::string& csv_path) {
    std::ifstream js(sidecar_path(csv_path));
    if (!js) throw std::runtime_error("missing sidecar " + sidecar_path(csv_path));
    json side = json::parse(js);
    int dim = 2;
    ShapeSpec spec = shape_from_json(side.at("domain"), &dim);
    auto dom = make_domain(std::move(spec), side.at("resolution").get<int>(), dim);
    GridFunction f(dom);
    std::ifstream is(csv_path);
    if (!is) throw std::runtime_error("cannot read " + csv_path);
    std::string line;
    int k = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (k >= dom->node_count()) throw std::runtime_error(csv_path + ": too many rows");
        double x, y, v;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) != 3)
            throw std::runtime_error(csv_path + ": bad row '" + line + "'");
        const Vec2& p = dom->node(k);
        if (std::abs(x - p.x) > 1e-9 || std::abs(y - p.y) > 1e-9)
            throw std::runtime_error(csv_path + ": node coordinates do not match the domain");
        f.values[k++] = v;
    }
    if (k != dom->node_count()) throw std::runtime_error(csv_path + ": row count mismatch");
    if (side.contains("boundary_values"))
        f.boundary_values = side.at("boundary_values").get<std::vector<double>>();
    f.convexity_certified = side.value("convexity_certified", false);
    return f;
}

void write_halfspaces_json(const HalfspaceFamily& hs, const std::string& path) {
    json j = json::array();
    for (std::size_t i = 0; i < hs.directions.size(); ++i)
        j.push_back({{"y", {hs.directions[i].x, hs.directions[i].y}}, {"offset", hs.offsets[i]}});
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

HalfspaceFamily read_halfspaces_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    json j = json::parse(is);
    HalfspaceFamily hs;
    for (const auto& e : j) {
        hs.directions.push_back({e.at("y")[0], e.at("y")[1]});
        hs.offsets.push_back(e.at("offset").get<double>());
    }
    return hs;
}

void write_group_json(const GroupRep& rep, const std::string& path) {
    json j;
    j["dim"] = rep.dim();
    json gens;
    for (const auto& [label, m] : rep.generators()) {
        std::vector<double> row_major;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) row_major.push_back(m(r, c));
        gens[label] = row_major;
    }
    j["generators"] = gens;
    json rel = json::array();
    for (const auto& w : rep.relators()) rel.push_back(format_word(w));
    j["relators"] = rel;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

GroupRepPtr read_group_json(const std::string& path, const ConeSpec* cone) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    json j = json::parse(is);
    int n = j.at("dim").get<int>();
    std::map<std::string, Eigen::MatrixXd> gens;
    for (const auto& [label, arr] : j.at("generators").items()) {
        if (static_cast<int>(arr.size()) != n * n)
            throw std::invalid_argument(path + ": generator '" + label + "' has wrong length");
        Eigen::MatrixXd m(n, n);
        int idx = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = arr[idx++].get<double>();
        gens[label] = m;
    }
    std::vector<Word> relators;
    for (const auto& w : j.value("relators", json::array())) relators.push_back(parse_word(w));
    return std::make_shared<const GroupRep>(std::move(gens), std::move(relators), cone);
}

void write_cocycle_json(const Cocycle& c, const std::string& path) {
    json j;
    for (const auto& [label, v] : c.generator_tau()) {
        std::vector<double> vec(v.data(), v.data() + v.size());
        j[label] = vec;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

Cocycle read_cocycle_json(GroupRepPtr rep, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    json j = json::parse(is);
    std::map<std::string, Eigen::VectorXd> tau;
    for (const auto& [label, arr] : j.items()) {
        Eigen::VectorXd v(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
        tau[label] = v;
    }
    return Cocycle(std::move(rep), std::move(tau));
}

void write_splitting_json(const Splitting& s, const std::string& path) {
    json j;
    j["gens_A"] = s.gens_A;
    j["gens_B"] = s.gens_B;
    json lw = json::array();
    for (const auto& w : s.lambda_words) lw.push_back(format_word(w));
    j["lambda_words"] = lw;
    j["X"] = std::vector<double>(s.X.data(), s.X.data() + s.X.size());
    j["s"] = s.s;
    if (s.H_normal.size())
        j["H_normal"] = std::vector<double>(s.H_normal.data(), s.H_normal.data() + s.H_normal.size());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

Splitting read_splitting_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    json j = json::parse(is);
    Splitting s;
    s.gens_A = j.at("gens_A").get<std::vector<std::string>>();
    s.gens_B = j.at("gens_B").get<std::vector<std::string>>();
    for (const auto& w : j.at("lambda_words")) s.lambda_words.push_back(parse_word(w));
    auto xv = j.at("X").get<std::vector<double>>();
    s.X = Eigen::Map<Eigen::VectorXd>(xv.data(), xv.size());
    s.s = j.value("s", 0.0);
    if (j.contains("H_normal")) {
        auto hv = j.at("H_normal").get<std::vector<double>>();
        s.H_normal = Eigen::Map<Eigen::VectorXd>(hv.data(), hv.size());
    }
    return s;
}

void write_solve_log(const std::vector<SolveLogEntry>& log, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    for (const auto& e : log) {
        json j{{"iter", e.iter}, {"phase", e.phase}, {"residual", e.residual}};
        os << j.dump() << '\n';
    }
}

RunManifest::RunManifest(std::string command, json config) {
    j_["command"] = std::move(command);
    j_["config"] = std::move(config);
    j_["versions"] = {{"affst", "0.1.0"}};
    j_["inputs"] = json::array();
    j_["outputs"] = json::array();
    j_["tolerances"] = json::object();
    j_["timings_ms"] = json::object();
}

void RunManifest::add_input(const std::string& path) { j_["inputs"].push_back(path); }

void RunManifest::add_output(const std::string& path) {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(hash_file(path)));
    j_["outputs"].push_back({{"path", path}, {"fnv1a64", hex}});
}

void RunManifest::add_timing(const std::string& name, double ms) { j_["timings_ms"][name] = ms; }

void RunManifest::add_tolerance(const std::string& name, double value) {
    j_["tolerances"][name] = value;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j_.dump(2) << '\n';
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot hash " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 14];
    while (is.read(buf, sizeof(buf)) || is.gcount() > 0)
        h = fnv1a64(buf, static_cast<std::size_t>(is.gcount()), h);
    return h;
}

}  // namespace affst
