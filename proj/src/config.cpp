#include "heatcoeff/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace heatcoeff {

namespace {

struct KeySet {
    const char* section;
    std::vector<std::string> keys;
};

const std::vector<KeySet>& schema() {
    static const std::vector<KeySet> s = {
        {"(top)", {"description", "task", "geometry", "boundary", "operator", "coeffs", "spectrum", "fit", "verify",
                   "content", "output"}},
        {"geometry", {"name", "params", "m", "region"}},
        {"geometry.region", {"measure", "tau", "rho_sq", "riem_sq", "tau_lap", "E", "E_lap", "omega_sq", "fiber_dim"}},
        {"boundary", {"kind", "S", "right", "junction_measure"}},
        {"boundary.right", {"kind", "S"}},
        {"operator", {"V", "time", "spectral"}},
        {"operator.time", {"gamma", "gamma2", "epsilon"}},
        {"coeffs", {"n_max", "jets"}},
        {"coeffs.jets", {"f", "f_m", "f_mm", "f_iim"}},
        {"spectrum", {"lambda_max", "count"}},
        {"fit", {"t_min", "t_max", "samples", "n_max", "orders", "lambda_max", "cross_check"}},
        {"verify", {"tolerance"}},
        {"content", {"oracle", "phi", "rho", "E", "p0", "p1", "left", "right", "G1", "F1", "E1", "cn"}},
        {"content.left", {"psi0", "psi1"}},
        {"content.right", {"psi0", "psi1"}},
        {"content.cn", {"N", "steps", "min_order"}},
        {"profile", {"poly", "trig"}},
        {"profile.trig", {"cos", "sin", "omega"}},
        {"output", {"dir"}},
    };
    return s;
}

const std::vector<std::string>& keys_of(std::string_view section) {
    for (const auto& k : schema()) {
        if (section == k.section) return k.keys;
    }
    throw std::logic_error("no schema section " + std::string(section));
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& msg) {
    const auto mk = node.Mark();
    if (mk.is_null()) throw SchemaError(msg);
    throw SchemaError(msg, mk.line + 1, mk.column + 1);
}

YAML::Node require_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) fail(node, "'" + path + "' must be a mapping");
    return node;
}

// Rejects keys that the section does not define.
void check_keys(const YAML::Node& node, std::string_view section, const std::string& path) {
    require_map(node, path);
    const auto& allowed = keys_of(section);
    std::set<std::string> seen;
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            fail(kv.first, "unknown key '" + key + "' in " + path + " (allowed: " + list + ")");
        }
        if (!seen.insert(key).second) fail(kv.first, "duplicate key '" + key + "' in " + path);
    }
}

double get_double(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) fail(node, "'" + path + "' must be a number");
    double v;
    try {
        v = node.as<double>();
    } catch (const YAML::Exception&) {
        fail(node, "'" + path + "' must be a number, got '" + node.Scalar() + "'");
    }
    if (!std::isfinite(v)) fail(node, "'" + path + "' must be finite");
    return v;
}

long get_int(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) fail(node, "'" + path + "' must be an integer");
    try {
        return node.as<long>();
    } catch (const YAML::Exception&) {
        fail(node, "'" + path + "' must be an integer, got '" + node.Scalar() + "'");
    }
}

std::size_t get_count(const YAML::Node& node, const std::string& path) {
    const long v = get_int(node, path);
    if (v < 0) fail(node, "'" + path + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

bool get_bool(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) fail(node, "'" + path + "' must be true or false");
    try {
        return node.as<bool>();
    } catch (const YAML::Exception&) {
        fail(node, "'" + path + "' must be true or false");
    }
}

std::string get_string(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) fail(node, "'" + path + "' must be a string");
    return node.Scalar();
}

std::vector<double> get_doubles(const YAML::Node& node, const std::string& path) {
    if (!node.IsSequence()) fail(node, "'" + path + "' must be a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(get_double(node[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

double get_positive(const YAML::Node& node, const std::string& path) {
    const double v = get_double(node, path);
    if (!(v > 0.0)) fail(node, "'" + path + "' must be positive");
    return v;
}

oracle::EndCondition get_end(const YAML::Node& node, const std::string& path) {
    oracle::EndCondition e;
    if (!node["kind"]) fail(node, "'" + path + ".kind' is required");
    const auto kind = get_string(node["kind"], path + ".kind");
    if (kind == "dirichlet") {
        e.kind = BoundaryKind::Dirichlet;
    } else if (kind == "neumann" || kind == "robin") {
        e.kind = BoundaryKind::Robin;
    } else if (kind == "dn_junction" || kind == "DNJunction") {
        e.kind = BoundaryKind::DNJunction;
    } else {
        fail(node["kind"], "'" + path + ".kind' must be dirichlet, neumann, robin or DNJunction, got '" + kind + "'");
    }
    if (node["S"]) {
        if (kind != "robin") fail(node["S"], "'" + path + ".S' is only meaningful for kind robin");
        e.S = get_double(node["S"], path + ".S");
    }
    return e;
}

Profile get_profile(const YAML::Node& node, const std::string& path) {
    if (node.IsScalar()) return Profile(get_double(node, path));
    check_keys(node, "profile", path);
    Profile p = node["poly"] ? Profile::polynomial(get_doubles(node["poly"], path + ".poly")) : Profile(0.0);
    if (node["trig"]) {
        const auto& tr = node["trig"];
        if (!tr.IsSequence()) fail(tr, "'" + path + ".trig' must be a list");
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const auto sub = path + ".trig[" + std::to_string(i) + "]";
            check_keys(tr[i], "profile.trig", sub);
            if (!tr[i]["omega"]) fail(tr[i], "'" + sub + ".omega' is required");
            p.add_trig(tr[i]["cos"] ? get_double(tr[i]["cos"], sub + ".cos") : 0.0,
                       tr[i]["sin"] ? get_double(tr[i]["sin"], sub + ".sin") : 0.0,
                       get_double(tr[i]["omega"], sub + ".omega"));
        }
    }
    return p;
}

void parse_geometry(const YAML::Node& g, ScenarioConfig& c) {
    check_keys(g, "geometry", "geometry");
    if (!g["name"]) fail(g, "'geometry.name' is required");
    c.geometry = get_string(g["name"], "geometry.name");
    const auto names = catalog_names();
    const bool custom = c.geometry == "custom";
    if (!custom && std::find(names.begin(), names.end(), c.geometry) == names.end()) {
        std::string list;
        for (const auto& n : names) list += n + ", ";
        fail(g["name"], "unknown geometry '" + c.geometry + "' (catalog: " + list + "custom)");
    }
    if (g["params"]) {
        c.params = get_doubles(g["params"], "geometry.params");
        for (std::size_t i = 0; i < c.params.size(); ++i) {
            // delta_circle's second parameter is the (signed) impedance
            if (!(c.params[i] > 0.0) && !(c.geometry == "delta_circle" && i == 1)) {
                fail(g["params"], "geometry.params must be positive");
            }
        }
    } else if (!custom) {
        fail(g, "'geometry.params' is required");
    }
    if (g["m"]) {
        if (!custom) fail(g["m"], "'geometry.m' is only used with geometry custom");
        const long m = get_int(g["m"], "geometry.m");
        if (m < 1) fail(g["m"], "'geometry.m' must be at least 1");
        c.custom_m = static_cast<int>(m);
    } else if (custom) {
        fail(g, "'geometry.m' is required for geometry custom");
    }
    if (g["region"]) {
        check_keys(g["region"], "geometry.region", "geometry.region");
        for (const auto& kv : g["region"]) {
            const auto key = kv.first.as<std::string>();
            c.region[key] = get_double(kv.second, "geometry.region." + key);
        }
    } else if (custom) {
        fail(g, "'geometry.region' is required for geometry custom");
    }
}

void parse_boundary(const YAML::Node& b, ScenarioConfig& c) {
    check_keys(b, "boundary", "boundary");
    c.boundary = get_end(b, "boundary");
    if (b["right"]) {
        check_keys(b["right"], "boundary.right", "boundary.right");
        if (c.geometry != "interval" && c.geometry != "cylinder") {
            fail(b["right"], "'boundary.right' applies to interval and cylinder only");
        }
        c.right = get_end(b["right"], "boundary.right");
        if (c.right->kind == BoundaryKind::DNJunction) fail(b["right"], "boundary.right cannot be a junction");
    }
    if (c.boundary.kind == BoundaryKind::DNJunction) {
        c.junction_measure = b["junction_measure"] ? get_positive(b["junction_measure"], "boundary.junction_measure") : 2.0;
    } else if (b["junction_measure"]) {
        fail(b["junction_measure"], "'boundary.junction_measure' requires kind DNJunction");
    }
}

void parse_operator(const YAML::Node& o, ScenarioConfig& c) {
    check_keys(o, "operator", "operator");
    if (o["V"]) c.V = get_double(o["V"], "operator.V");
    if (o["time"]) {
        const auto& t = o["time"];
        check_keys(t, "operator.time", "operator.time");
        if (t["gamma"]) c.time.gamma = get_double(t["gamma"], "operator.time.gamma");
        if (t["gamma2"]) c.time.gamma2 = get_double(t["gamma2"], "operator.time.gamma2");
        if (t["epsilon"]) c.time.epsilon = get_double(t["epsilon"], "operator.time.epsilon");
    }
    if (o["spectral"]) {
        std::filesystem::path p = get_string(o["spectral"], "operator.spectral");
        if (p.is_relative()) p = c.source.parent_path() / p;
        c.spectral = p;
    }
}

void parse_fit(const YAML::Node& f, ScenarioConfig& c) {
    check_keys(f, "fit", "fit");
    auto& fit = c.fit;
    if (f["t_min"]) fit.t_min = get_positive(f["t_min"], "fit.t_min");
    if (f["t_max"]) fit.t_max = get_positive(f["t_max"], "fit.t_max");
    if (!(fit.t_max > fit.t_min)) fail(f, "fit.t_max must exceed fit.t_min");
    if (f["samples"]) fit.samples = get_count(f["samples"], "fit.samples");
    if (f["n_max"]) {
        const long n = get_int(f["n_max"], "fit.n_max");
        if (n < 0 || n > 16) fail(f["n_max"], "'fit.n_max' must lie in 0..16");
        fit.n_max = static_cast<int>(n);
    }
    if (f["orders"]) {
        const auto& o = f["orders"];
        if (!o.IsSequence()) fail(o, "'fit.orders' must be a list of integers");
        for (std::size_t i = 0; i < o.size(); ++i) {
            const long n = get_int(o[i], "fit.orders");
            if (n < 0 || n > fit.n_max) fail(o[i], "'fit.orders' entries must lie in 0..n_max");
            fit.orders.push_back(static_cast<int>(n));
        }
    }
    if (f["lambda_max"]) fit.lambda_max = get_positive(f["lambda_max"], "fit.lambda_max");
    if (f["cross_check"]) fit.cross_check = get_bool(f["cross_check"], "fit.cross_check");
}

void parse_content(const YAML::Node& n, ScenarioConfig& c) {
    check_keys(n, "content", "content");
    ContentConfig cc;
    if (n["oracle"]) {
        cc.oracle = get_string(n["oracle"], "content.oracle");
        if (cc.oracle != "series" && cc.oracle != "cn") fail(n["oracle"], "'content.oracle' must be series or cn");
    }
    if (n["phi"]) cc.phi = get_profile(n["phi"], "content.phi");
    if (n["rho"]) cc.rho = get_profile(n["rho"], "content.rho");
    if (n["E"]) cc.E = get_profile(n["E"], "content.E");
    if (n["p0"]) cc.p0 = get_profile(n["p0"], "content.p0");
    if (n["p1"]) cc.p1 = get_profile(n["p1"], "content.p1");
    for (const char* side : {"left", "right"}) {
        if (!n[side]) continue;
        const std::string path = std::string("content.") + side;
        check_keys(n[side], path, path);
        auto& e = std::string_view(side) == "left" ? cc.left : cc.right;
        if (n[side]["psi0"]) e.psi0 = get_double(n[side]["psi0"], path + ".psi0");
        if (n[side]["psi1"]) e.psi1 = get_double(n[side]["psi1"], path + ".psi1");
    }
    if (n["G1"]) cc.G1 = get_double(n["G1"], "content.G1");
    if (n["F1"]) cc.F1 = get_double(n["F1"], "content.F1");
    if (n["E1"]) cc.E1 = get_double(n["E1"], "content.E1");
    if (n["cn"]) {
        const auto& cn = n["cn"];
        check_keys(cn, "content.cn", "content.cn");
        if (cn["N"]) cc.cn.N = get_count(cn["N"], "content.cn.N");
        if (cn["steps"]) cc.cn.steps = get_count(cn["steps"], "content.cn.steps");
        if (cn["min_order"]) cc.cn.min_order = get_positive(cn["min_order"], "content.cn.min_order");
        if (cc.cn.N < 8) fail(cn, "'content.cn.N' must be at least 8");
    }
    c.content = std::move(cc);
}

ScenarioConfig parse_root(const YAML::Node& root, const std::filesystem::path& source) {
    ScenarioConfig c;
    c.source = source;
    c.name = source.stem().string();
    if (!root.IsDefined() || root.IsNull()) throw SchemaError("empty config", 1, 1);
    check_keys(root, "(top)", "the top level");
    if (root["description"]) c.description = get_string(root["description"], "description");
    if (!root["task"]) fail(root, "'task' is required");
    try {
        c.task = task_from_string(get_string(root["task"], "task"));
    } catch (const InvalidInput& e) {
        fail(root["task"], e.what());
    }
    if (!root["geometry"]) fail(root, "'geometry' section is required");
    parse_geometry(root["geometry"], c);
    if (root["boundary"]) parse_boundary(root["boundary"], c);
    if (root["operator"]) parse_operator(root["operator"], c);
    if (root["coeffs"]) {
        const auto& s = root["coeffs"];
        check_keys(s, "coeffs", "coeffs");
        if (s["n_max"]) {
            const long n = get_int(s["n_max"], "coeffs.n_max");
            if (n < 0) fail(s["n_max"], "'coeffs.n_max' must be non-negative");
            c.coeffs_n_max = static_cast<int>(n);
        }
        if (s["jets"]) {
            const auto& j = s["jets"];
            check_keys(j, "coeffs.jets", "coeffs.jets");
            if (j["f"]) c.jets.f = get_double(j["f"], "coeffs.jets.f");
            if (j["f_m"]) c.jets.f_m = get_double(j["f_m"], "coeffs.jets.f_m");
            if (j["f_mm"]) c.jets.f_mm = get_double(j["f_mm"], "coeffs.jets.f_mm");
            if (j["f_iim"]) c.jets.f_iim = get_double(j["f_iim"], "coeffs.jets.f_iim");
        }
    }
    if (root["spectrum"]) {
        const auto& s = root["spectrum"];
        check_keys(s, "spectrum", "spectrum");
        if (s["lambda_max"]) c.spectrum_lambda_max = get_positive(s["lambda_max"], "spectrum.lambda_max");
        if (s["count"]) c.spectrum_count = get_count(s["count"], "spectrum.count");
    }
    if (root["fit"]) parse_fit(root["fit"], c);
    if (root["verify"]) {
        const auto& v = root["verify"];
        check_keys(v, "verify", "verify");
        if (v["tolerance"]) {
            const auto& t = v["tolerance"];
            require_map(t, "verify.tolerance");
            for (const auto& kv : t) {
                const long n = get_int(kv.first, "verify.tolerance key");
                if (n < 0) fail(kv.first, "verify.tolerance keys are coefficient orders >= 0");
                c.tolerance[static_cast<int>(n)] = get_positive(kv.second, "verify.tolerance value");
            }
        }
    }
    if (root["content"]) parse_content(root["content"], c);
    if (root["output"]) {
        check_keys(root["output"], "output", "output");
        if (root["output"]["dir"]) c.output_dir = get_string(root["output"]["dir"], "output.dir");
    }
    return c;
}

}  // namespace

SchemaError::SchemaError(const std::string& message, int line, int column)
    : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                     : message),
      line_(line),
      column_(column) {}

std::string_view to_string(Task task) {
    switch (task) {
        case Task::Coeffs: return "coeffs";
        case Task::Spectrum: return "spectrum";
        case Task::Trace: return "trace";
        case Task::Content: return "content";
        case Task::Verify: return "verify";
    }
    return "?";
}

Task task_from_string(std::string_view name) {
    for (Task t : {Task::Coeffs, Task::Spectrum, Task::Trace, Task::Content, Task::Verify}) {
        if (name == to_string(t)) return t;
    }
    throw InvalidInput("unknown task '" + std::string(name) + "' (coeffs, spectrum, trace, content, verify)");
}

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw SchemaError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    try {
        return parse_root(root, source);
    } catch (const YAML::Exception& e) {
        if (e.mark.is_null()) throw SchemaError(e.msg);
        throw SchemaError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string schema_summary() {
    std::string out;
    for (const auto& k : schema()) {
        out += k.section;
        out += ":";
        for (const auto& key : k.keys) out += " " + key;
        out += "\n";
    }
    return out;
}

}  // namespace heatcoeff
