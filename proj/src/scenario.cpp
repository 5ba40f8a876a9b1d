#include "heatcoeff/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "heatcoeff/content_coeffs.hpp"
#include "heatcoeff/oracle/heat_content.hpp"
#include "heatcoeff/oracle/heat_trace.hpp"
#include "heatcoeff/trace_coeffs.hpp"

namespace heatcoeff {

namespace {

using oracle::EndCondition;

void apply_region(Region& r, const std::map<std::string, double>& over) {
    for (const auto& [key, v] : over) {
        if (key == "measure") {
            if (!(v > 0.0)) throw SchemaError("geometry.region.measure must be positive");
            r.measure = v;
        } else if (key == "tau") {
            r.tau = v;
        } else if (key == "rho_sq") {
            r.rho_sq = v;
        } else if (key == "riem_sq") {
            r.riem_sq = v;
        } else if (key == "tau_lap") {
            r.tau_lap = v;
        } else if (key == "E") {
            r.E = v;
        } else if (key == "E_lap") {
            r.E_lap = v;
        } else if (key == "omega_sq") {
            r.omega_sq = v;
        } else if (key == "fiber_dim") {
            if (v < 1.0 || v != std::floor(v)) throw SchemaError("geometry.region.fiber_dim must be a positive integer");
            r.fiber_dim = static_cast<int>(v);
        }
    }
}

bool is_constant(const Profile& p) { return p.poly().size() <= 1 && p.trig().empty(); }
double constant_value(const Profile& p) { return p.poly().empty() ? 0.0 : p.poly()[0]; }

bool has_oracle(const ScenarioConfig& cfg) {
    return cfg.geometry != "custom" && !cfg.spectral && cfg.boundary.kind != BoundaryKind::DNJunction;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void write_text(const std::filesystem::path& p, const std::string& text, RunResult& res) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw SchemaError("cannot write '" + p.string() + "'");
    out << text;
    if (!out) throw SchemaError("write failed for '" + p.string() + "'");
    res.files.push_back(p);
}

std::string samples_csv(const TraceSamples& s) {
    std::string out = "t,value,bound\n";
    for (const auto& x : s) out += format_double(x.t) + "," + format_double(x.value) + "," + format_double(x.bound) + "\n";
    return out;
}

Eigen::MatrixXcd json_matrix(const nlohmann::json& j, const std::string& what) {
    auto real_part = [&](const nlohmann::json& a) {
        if (!a.is_array() || a.empty()) throw SchemaError(what + " must be a non-empty list of rows");
        const auto rows = a.size(), cols = a[0].size();
        Eigen::MatrixXd M(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (!a[i].is_array() || a[i].size() != cols) throw SchemaError(what + ": ragged rows");
            for (std::size_t k = 0; k < cols; ++k) {
                if (!a[i][k].is_number()) throw SchemaError(what + ": entries must be numbers");
                M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = a[i][k].get<double>();
            }
        }
        return M;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (k != "re" && k != "im") throw SchemaError(what + ": unknown key '" + k + "' (re, im)");
        }
        if (!j.contains("re")) throw SchemaError(what + ": 're' is required");
        Eigen::MatrixXd re = real_part(j["re"]);
        Eigen::MatrixXd im = j.contains("im") ? real_part(j["im"]) : Eigen::MatrixXd::Zero(re.rows(), re.cols());
        if (im.rows() != re.rows() || im.cols() != re.cols()) throw SchemaError(what + ": re and im shapes differ");
        Eigen::MatrixXcd M(re.rows(), re.cols());
        M.real() = re;
        M.imag() = im;
        return M;
    }
    return real_part(j).cast<std::complex<double>>();
}

CatalogGeometry custom_geometry(const ScenarioConfig& cfg, int m) {
    CatalogGeometry cat;
    cat.geometry.name = "custom";
    cat.geometry.m = m;
    cat.geometry.regions.emplace_back();
    apply_region(cat.geometry.regions[0], cfg.region);
    if (!(cat.geometry.regions[0].measure > 0.0)) throw SchemaError("geometry.region.measure is required and positive");
    return cat;
}

std::vector<CoefficientReport> content_reports(const ScenarioConfig& cfg, int n_max) {
    const auto& cc = *cfg.content;
    CatalogGeometry cat;
    HeatContentData data;
    TimePerturbation tp;
    if (cfg.geometry == "interval") {
        const auto setup = rod_content_setup(rod_problem(cfg));
        cat = setup.cat;
        data = setup.data;
        tp = setup.tp;
    } else if (cfg.geometry == "circle") {
        if (cc.E) throw SchemaError("content.E is not used on a circle; set operator.V");
        RodProblem rod;
        rod.L = cfg.params.at(0);
        rod.phi = cc.phi;
        rod.rho = cc.rho;
        rod.E = -cfg.V;
        rod.p0 = cc.p0;
        rod.p1 = cc.p1;
        rod.G1 = cc.G1;
        rod.F1 = cc.F1;
        rod.E1 = cc.E1;
        // interior pairings do not see the ends
        data.interior = rod_content_setup(rod).data.interior;
        tp = rod.time_perturbation();
        cat = formula_setup(cfg).cat;
    } else {
        for (const Profile* p : {&cc.phi, &cc.rho, &cc.p0, &cc.p1}) {
            if (!is_constant(*p)) throw SchemaError("content profiles must be constant on geometry " + cfg.geometry);
        }
        if (cc.E || cc.G1 != 0.0 || cc.F1 != 0.0 || cc.E1 != 0.0) {
            throw SchemaError("content.E, G1, F1, E1 are supported on interval and circle only");
        }
        cat = formula_setup(cfg).cat;
        data = constant_field_data(cat, constant_value(cc.phi), constant_value(cc.rho), cc.left.psi0, cc.left.psi1,
                                   constant_value(cc.p0), constant_value(cc.p1));
    }
    std::vector<CoefficientReport> out;
    for (int n = 0; n <= n_max; ++n) {
        try {
            out.push_back(heat_content_coefficient(n, cat.geometry, cat.boundary, data, tp));
        } catch (const UnsupportedOrder& e) {
            out.push_back(refusal_report("content", n, ReportStatus::Unsupported, e.what()));
        }
    }
    return out;
}

TraceSamples content_samples(const ScenarioConfig& cfg, std::span<const double> ts) {
    const auto& cc = *cfg.content;
    TraceSamples out;
    if (cfg.geometry == "interval") {
        const auto rod = rod_problem(cfg);
        if (cc.oracle == "cn") return oracle::rod_content_samples(rod, ts, cc.cn);
        const bool plain = is_constant(rod.phi) && constant_value(rod.phi) == 1.0 && is_constant(rod.rho) &&
                           constant_value(rod.rho) == 1.0 && rod.E.is_zero() && rod.p0.is_zero() && rod.p1.is_zero() &&
                           rod.G1 == 0.0 && rod.F1 == 0.0 && rod.E1 == 0.0 && rod.left.psi0 == 0.0 &&
                           rod.left.psi1 == 0.0 && rod.right.psi0 == 0.0 && rod.right.psi1 == 0.0 &&
                           rod.left.kind == rod.right.kind && rod.left.S == rod.right.S;
        if (!plain) {
            throw SchemaError("the series oracle covers phi = rho = 1, E = 0, zero data and equal ends; use oracle: cn");
        }
        for (double t : ts) {
            out.push_back(rod.left.kind == BoundaryKind::Dirichlet ? oracle::rod_dirichlet_content(rod.L, t)
                                                                   : oracle::rod_robin_content(rod.L, rod.left.S, t));
        }
        return out;
    }
    if (cc.oracle != "series") throw SchemaError("content.oracle cn needs geometry interval");
    if (cfg.geometry == "circle") {
        oracle::CircleContent c;
        c.L = cfg.params.at(0);
        c.E = -cfg.V;
        c.phi = cc.phi;
        c.rho = cc.rho;
        if (!cc.p0.is_zero() || !cc.p1.is_zero() || cc.G1 != 0.0 || cc.F1 != 0.0 || cc.E1 != 0.0) {
            throw SchemaError("the circle content oracle has no sources or time dependence");
        }
        for (double t : ts) out.push_back(oracle::circle_content(c, t));
        return out;
    }
    if (cfg.geometry == "hemisphere") {
        const bool plain = cfg.boundary.kind == BoundaryKind::Dirichlet && cfg.V == 0.0 && is_constant(cc.phi) &&
                           constant_value(cc.phi) == 1.0 && is_constant(cc.rho) && constant_value(cc.rho) == 1.0 &&
                           cc.p0.is_zero() && cc.p1.is_zero() && cc.left.psi0 == 0.0 && cc.left.psi1 == 0.0;
        if (!plain) throw SchemaError("the hemisphere content oracle covers Dirichlet, phi = rho = 1, V = 0, zero data");
        for (double t : ts) out.push_back(oracle::hemisphere_dirichlet_content(cfg.params.at(0), t));
        return out;
    }
    throw SchemaError("no heat content oracle for geometry " + cfg.geometry);
}

struct VerifyOutcome {
    FitResult fit;
    std::vector<ComparisonRow> rows;
    TraceSamples samples;
    std::string notes;
    int exit_code = kExitOk;
};

VerifyOutcome verify(const ScenarioConfig& cfg, bool content, const std::vector<CoefficientReport>& reports,
                     double scale) {
    VerifyOutcome v;
    const auto ts = geometric_grid(cfg.fit.t_min, cfg.fit.t_max, cfg.fit.samples);
    int shift = 0;
    if (content) {
        v.samples = content_samples(cfg, ts);
    } else {
        auto spec = spectrum_spec(cfg);
        spec.lambda_max = cfg.fit.lambda_max;
        v.samples = oracle::heat_trace_samples(spec, ts);
        shift = formula_setup(cfg).cat.geometry.m;
    }
    const auto orders = cfg.fit.orders.empty() ? default_orders(cfg) : cfg.fit.orders;
    v.fit = fit_half_powers(v.samples, shift, cfg.fit.n_max, orders);
    std::optional<FitResult> seq;
    if (cfg.fit.cross_check) seq = sequential_extract(v.samples, shift, cfg.fit.n_max, orders);

    for (const auto& [n, tol] : cfg.tolerance) {
        if (n > cfg.fit.n_max || !v.fit.fitted[static_cast<std::size_t>(n)]) {
            throw SchemaError("verify.tolerance names order " + std::to_string(n) + ", which is not fitted");
        }
        if (static_cast<std::size_t>(n) >= reports.size() || reports[static_cast<std::size_t>(n)].status != ReportStatus::Ok) {
            throw SchemaError("verify.tolerance names order " + std::to_string(n) + ", which has no formula");
        }
    }
    bool mismatch = false, untrusted = false;
    for (int n = 0; n <= cfg.fit.n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        if (!v.fit.fitted[i]) continue;
        ComparisonRow row;
        row.n = n;
        row.fitted = v.fit.coefficients[i];
        row.uncertainty = v.fit.uncertainty[i];
        row.trusted = v.fit.trusted;
        if (i < reports.size() && reports[i].status == ReportStatus::Ok) {
            row.predicted = reports[i].value;
            row.abs_err = std::abs(row.fitted - *row.predicted);
        } else {
            row.abs_err = std::numeric_limits<double>::quiet_NaN();
        }
        if (seq) {
            row.sequential = seq->coefficients[i];
            row.sequential_uncertainty = seq->uncertainty[i];
        }
        if (auto it = cfg.tolerance.find(n); it != cfg.tolerance.end()) {
            row.tolerance = it->second * scale;
            row.passed = row.abs_err <= *row.tolerance;
            if (seq && std::abs(row.fitted - *row.sequential) > row.uncertainty + row.sequential_uncertainty) {
                row.passed = false;
                v.notes += "  a_" + std::to_string(n) + ": least squares and sequential extraction disagree beyond their uncertainties\n";
            }
            if (!row.trusted) untrusted = true;
            if (!row.passed) mismatch = true;
        }
        v.rows.push_back(row);
    }
    if (untrusted) {
        v.notes += "  fit is ill-conditioned (condition " + fmt("%.3g", v.fit.condition_estimate) +
                   "); compared coefficients are not trusted\n";
        v.exit_code = kExitNumerical;
    } else if (mismatch) {
        v.exit_code = kExitMismatch;
    }
    return v;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
    std::string out = "  n  fitted                predicted             abs_err     uncertainty tolerance   status\n";
    for (const auto& r : rows) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-2d %-21.14g %-21s %-11s %-11.3g %-11s %s\n", r.n, r.fitted,
                      r.predicted ? fmt("%.14g", *r.predicted).c_str() : "-",
                      r.predicted ? fmt("%.3g", r.abs_err).c_str() : "-", r.uncertainty,
                      r.tolerance ? fmt("%.3g", *r.tolerance).c_str() : "-",
                      !r.tolerance ? "info" : (r.passed ? "matched" : "MISMATCH"));
        out += line;
    }
    return out;
}

}  // namespace

TimePerturbation time_perturbation(const oracle::TimeDependence& td, int m, double tau) {
    TimePerturbation tp;
    const double g = td.gamma;
    tp.G1_ii = -g * m;
    tp.G1_ij_sq = g * g * m;
    tp.G1_ij_Rikkj = -g * tau;
    tp.G2_ii = -td.gamma2 * m;
    tp.E1 = td.epsilon;
    tp.G1_mm = -g;
    tp.G1_aa = -g * (m - 1);
    return tp;
}

FormulaSetup formula_setup(const ScenarioConfig& cfg) {
    FormulaSetup s;
    if (cfg.geometry == "custom") {
        s.cat = custom_geometry(cfg, cfg.custom_m);
    } else {
        s.cat = catalog_geometry(cfg.geometry, cfg.params);
        apply_region(s.cat.geometry.regions.at(0), cfg.region);
    }
    auto& cat = s.cat;
    if (cfg.boundary.kind == BoundaryKind::DNJunction) {
        if (cat.boundary.empty()) throw SchemaError("DNJunction needs a geometry with boundary");
        split_dirichlet_neumann(cat, 0, cfg.junction_measure);
    } else if (!cat.boundary.empty()) {
        set_boundary_kind(cat, cfg.boundary.kind, cfg.boundary.S);
        if (cfg.right) {
            auto& c = cat.boundary.at(1);
            c.kind = cfg.right->kind;
            c.S = cfg.right->kind == BoundaryKind::Robin ? cfg.right->S : 0.0;
        }
    }
    if (cfg.V != 0.0) set_potential(cat, cfg.V);
    if (!cfg.time.is_static()) {
        if (cat.geometry.regions.size() != 1) throw SchemaError("time dependence needs a single homogeneous region");
        const int m = cat.geometry.m;
        s.tp = time_perturbation(cfg.time, m, cat.geometry.regions[0].tau);
        for (auto& c : cat.boundary) {
            if (c.kind != BoundaryKind::Dirichlet && c.kind != BoundaryKind::Robin) continue;
            auto ctp = s.tp;
            ctp.G1_ab_Lab = -cfg.time.gamma * c.Laa;
            c.time = ctp;
        }
    }
    return s;
}

oracle::SpectrumSpec spectrum_spec(const ScenarioConfig& cfg) {
    if (!has_oracle(cfg)) throw SchemaError("scenario has no spectral oracle (custom geometry, spectral or D/N data)");
    oracle::SpectrumSpec s;
    s.problem = oracle::problem_from_string(cfg.geometry);
    s.params = cfg.params;
    s.left = cfg.boundary;
    s.right = cfg.right.value_or(cfg.boundary);
    s.V = cfg.V;
    s.time = cfg.time;
    s.validate();
    return s;
}

RodProblem rod_problem(const ScenarioConfig& cfg) {
    if (cfg.geometry != "interval") throw SchemaError("rod problems need geometry interval");
    if (!cfg.content) throw SchemaError("rod problems need a content section");
    if (!cfg.time.is_static()) throw SchemaError("heat content time dependence is set by content.G1, F1, E1");
    const auto& cc = *cfg.content;
    RodProblem rod;
    rod.L = cfg.params.at(0);
    rod.phi = cc.phi;
    rod.rho = cc.rho;
    if (cc.E && cfg.V != 0.0) throw SchemaError("set either operator.V or content.E, not both");
    rod.E = cc.E ? *cc.E : Profile(-cfg.V);
    rod.p0 = cc.p0;
    rod.p1 = cc.p1;
    const EndCondition r = cfg.right.value_or(cfg.boundary);
    if (cfg.boundary.kind == BoundaryKind::DNJunction) throw SchemaError("rod ends must be dirichlet, neumann or robin");
    rod.left = {cfg.boundary.kind, cfg.boundary.S, cc.left.psi0, cc.left.psi1};
    rod.right = {r.kind, r.S, cc.right.psi0, cc.right.psi1};
    rod.G1 = cc.G1;
    rod.F1 = cc.F1;
    rod.E1 = cc.E1;
    rod.validate();
    return rod;
}

SpectralBCData load_spectral_data(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read spectral data '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw SchemaError(path.string() + ": expected an object");
    static const char* keys[] = {"m", "psi_hat", "theta", "gammas", "boundary_measure", "Laa", "LabLab", "LaaLbb",
                                 "tau", "rho_mm"};
    for (const auto& [k, v] : j.items()) {
        if (std::find(std::begin(keys), std::end(keys), k) == std::end(keys)) {
            throw SchemaError(path.string() + ": unknown key '" + k + "'");
        }
    }
    for (const char* k : {"m", "psi_hat", "theta", "gammas", "boundary_measure"}) {
        if (!j.contains(k)) throw SchemaError(path.string() + ": '" + k + "' is required");
    }
    SpectralBCData d;
    auto num = [&](const char* k, double def) {
        if (!j.contains(k)) return def;
        if (!j[k].is_number()) throw SchemaError(path.string() + ": '" + k + "' must be a number");
        return j[k].get<double>();
    };
    if (!j["m"].is_number_integer()) throw SchemaError(path.string() + ": 'm' must be an integer");
    d.m = j["m"].get<int>();
    d.psi_hat = json_matrix(j["psi_hat"], "psi_hat");
    d.theta = json_matrix(j["theta"], "theta");
    if (!j["gammas"].is_array()) throw SchemaError(path.string() + ": 'gammas' must be a list of matrices");
    for (const auto& g : j["gammas"]) d.gammas.push_back(json_matrix(g, "gammas"));
    d.boundary_measure = num("boundary_measure", 0.0);
    d.Laa = num("Laa", 0.0);
    d.LabLab = num("LabLab", 0.0);
    d.LaaLbb = num("LaaLbb", 0.0);
    d.tau = num("tau", 0.0);
    d.rho_mm = num("rho_mm", 0.0);
    validate(d);
    return d;
}

std::vector<int> default_orders(const ScenarioConfig& cfg) {
    const bool closed = formula_setup(cfg).cat.closed();
    std::vector<int> out;
    for (int n = 0; n <= cfg.fit.n_max; ++n) {
        if (!closed || n % 2 == 0) out.push_back(n);
    }
    return out;
}

std::vector<CoefficientReport> formula_reports(const ScenarioConfig& cfg, Task family, int n_max) {
    if (family == Task::Content) {
        if (!cfg.content) throw SchemaError("heat content needs a content section");
        return content_reports(cfg, n_max);
    }
    std::vector<CoefficientReport> out;
    if (cfg.spectral) {
        const auto data = load_spectral_data(*cfg.spectral);
        if (cfg.geometry != "custom") throw SchemaError("spectral data needs geometry custom");
        if (cfg.custom_m != data.m) throw SchemaError("geometry.m and the spectral data disagree on m");
        const auto cat = custom_geometry(cfg, data.m);
        for (int n = 0; n <= n_max; ++n) {
            try {
                out.push_back(spectral_coefficient(n, data, cfg.jets, cat.geometry));
            } catch (const UnsupportedOrder& e) {
                out.push_back(refusal_report("trace", n, ReportStatus::Unsupported, e.what()));
            }
        }
        return out;
    }
    const auto s = formula_setup(cfg);
    for (int n = 0; n <= n_max; ++n) {
        try {
            out.push_back(trace_coefficient(n, s.cat, s.tp, cfg.jets));
        } catch (const NotLocallyComputable& e) {
            out.push_back(refusal_report("trace", n, ReportStatus::NotLocallyComputable, e.what()));
        } catch (const UnsupportedOrder& e) {
            out.push_back(refusal_report("trace", n, ReportStatus::Unsupported, e.what()));
        }
    }
    return out;
}

std::string fit_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "n,fitted,predicted,abs_err,uncertainty,trusted_flag\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + format_double(r.fitted) + "," +
               (r.predicted ? format_double(*r.predicted) : std::string("nan")) + "," +
               (r.predicted ? format_double(r.abs_err) : std::string("nan")) + "," + format_double(r.uncertainty) +
               "," + (r.trusted ? "1" : "0") + "\n";
    }
    return out;
}

nlohmann::json fit_json(const std::vector<ComparisonRow>& rows, const FitResult& fit) {
    nlohmann::json j;
    j["t_min"] = fit.t_min;
    j["t_max"] = fit.t_max;
    j["n_max"] = fit.n_max;
    j["condition_estimate"] = fit.condition_estimate;
    j["residual_norm"] = fit.residual_norm;
    j["trusted"] = fit.trusted;
    auto& arr = j["coefficients"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e;
        e["n"] = r.n;
        e["fitted"] = r.fitted;
        e["predicted"] = r.predicted ? nlohmann::json(*r.predicted) : nlohmann::json(nullptr);
        e["abs_err"] = r.predicted ? nlohmann::json(r.abs_err) : nlohmann::json(nullptr);
        e["uncertainty"] = r.uncertainty;
        e["trusted_flag"] = r.trusted;
        if (r.tolerance) {
            e["tolerance"] = *r.tolerance;
            e["passed"] = r.passed;
        }
        if (r.sequential) {
            e["sequential"] = *r.sequential;
            e["sequential_uncertainty"] = r.sequential_uncertainty;
        }
        arr.push_back(e);
    }
    return j;
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
    RunResult res;
    const Task task = opt.task.value_or(cfg.task);
    std::ostringstream sum;
    sum << "scenario " << cfg.name << ": " << to_string(task) << "\n";
    try {
        std::filesystem::path dir = opt.out_dir;
        if (dir.empty()) dir = cfg.output_dir.empty() ? std::filesystem::path("heatcoeff_out") / cfg.name : std::filesystem::path(cfg.output_dir);
        if (opt.write_files) {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec) throw SchemaError("cannot create output directory '" + dir.string() + "': " + ec.message());
        }
        const auto file = [&](const std::string& suffix) { return dir / (cfg.name + suffix); };
        const bool content = task == Task::Content || (task == Task::Verify && cfg.content.has_value());
        const Task family = content ? Task::Content : Task::Trace;

        auto emit_reports = [&](int n_max) {
            res.reports = formula_reports(cfg, family, n_max);
            for (const auto& r : res.reports) {
                sum << "  " << (content ? "beta_" : "a_") << r.n << " = ";
                if (r.status == ReportStatus::Ok) {
                    sum << fmt("%.15g", r.value) << (r.conjectural ? "  (conjectural)" : "") << "\n";
                } else {
                    sum << to_string(r.status) << ": " << r.message << "\n";
                }
            }
            if (opt.write_files) {
                write_text(file(".coeffs.csv"), to_csv(res.reports), res);
                write_text(file(".coeffs.json"), to_json(res.reports).dump(2) + "\n", res);
            }
        };

        switch (task) {
            case Task::Coeffs: emit_reports(cfg.coeffs_n_max); break;
            case Task::Spectrum: {
                auto spec = spectrum_spec(cfg);
                spec.lambda_max = cfg.spectrum_lambda_max;
                spec.count = cfg.spectrum_count;
                if (spec.lambda_max == 0.0 && spec.count == 0) {
                    throw SchemaError("spectrum task needs spectrum.lambda_max or spectrum.count");
                }
                const auto sp = oracle::eigenvalues(spec);
                auto values = sp.expanded();
                if (spec.count > 0 && values.size() > spec.count) values.resize(spec.count);
                std::string csv = "index,eigenvalue\n";
                for (std::size_t i = 0; i < values.size(); ++i) csv += std::to_string(i) + "," + format_double(values[i]) + "\n";
                sum << "  " << values.size() << " eigenvalues, complete up to " << fmt("%.6g", sp.lambda_max) << "\n";
                if (opt.write_files) write_text(file(".spectrum.csv"), csv, res);
                break;
            }
            case Task::Trace: {
                const auto ts = geometric_grid(cfg.fit.t_min, cfg.fit.t_max, cfg.fit.samples);
                auto spec = spectrum_spec(cfg);
                spec.lambda_max = cfg.fit.lambda_max;
                const auto s = oracle::heat_trace_samples(spec, ts);
                sum << "  " << s.size() << " heat trace samples on [" << fmt("%g", cfg.fit.t_min) << ", "
                    << fmt("%g", cfg.fit.t_max) << "]\n";
                if (opt.write_files) write_text(file(".trace.csv"), samples_csv(s), res);
                break;
            }
            case Task::Content: {
                emit_reports(std::min(cfg.coeffs_n_max, 4));
                const auto ts = geometric_grid(cfg.fit.t_min, cfg.fit.t_max, cfg.fit.samples);
                const auto s = content_samples(cfg, ts);
                sum << "  " << s.size() << " heat content samples on [" << fmt("%g", cfg.fit.t_min) << ", "
                    << fmt("%g", cfg.fit.t_max) << "]\n";
                if (opt.write_files) write_text(file(".content.csv"), samples_csv(s), res);
                break;
            }
            case Task::Verify: {
                if (!has_oracle(cfg)) {
                    if (!cfg.tolerance.empty()) throw SchemaError("verify.tolerance given but the scenario has no oracle");
                    emit_reports(cfg.coeffs_n_max);
                    sum << "  no numerical oracle for this scenario; formula evaluation only\n";
                    break;
                }
                emit_reports(std::min(cfg.fit.n_max, 4));
                auto v = verify(cfg, content, res.reports, opt.tolerance_scale);
                sum << "  fit t in [" << fmt("%g", v.fit.t_min) << ", " << fmt("%g", v.fit.t_max) << "], "
                    << v.samples.size() << " samples, condition " << fmt("%.3g", v.fit.condition_estimate)
                    << ", residual " << fmt("%.3g", v.fit.residual_norm) << "\n";
                sum << comparison_table(v.rows) << v.notes;
                if (opt.write_files) {
                    write_text(file(content ? ".content.csv" : ".trace.csv"), samples_csv(v.samples), res);
                    write_text(file(".fit.csv"), fit_csv(v.rows), res);
                    write_text(file(".fit.json"), fit_json(v.rows, v.fit).dump(2) + "\n", res);
                }
                res.fit = v.fit;
                res.comparison = std::move(v.rows);
                res.exit_code = v.exit_code;
                sum << "  result: "
                    << (v.exit_code == kExitOk ? "ok" : v.exit_code == kExitMismatch ? "MISMATCH" : "NUMERICAL FAILURE")
                    << "\n";
                break;
            }
        }
    } catch (const SchemaError& e) {
        sum << "  config error: " << e.what() << "\n";
        res.exit_code = kExitSchema;
    } catch (const InvalidInput& e) {
        sum << "  invalid input: " << e.what() << "\n";
        res.exit_code = kExitSchema;
    } catch (const UnsupportedOrder& e) {
        sum << "  unsupported: " << e.what() << "\n";
        res.exit_code = kExitSchema;
    } catch (const NotLocallyComputable& e) {
        sum << "  " << e.what() << "\n";
        res.exit_code = kExitSchema;
    } catch (const NumericalFailure& e) {
        sum << "  numerical failure: " << e.what() << "\n";
        res.exit_code = kExitNumerical;
    }
    res.summary = sum.str();
    return res;
}

}  // namespace heatcoeff
