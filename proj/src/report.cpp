#include "heatcoeff/report.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heatcoeff/errors.hpp"

namespace heatcoeff {

PartBuilder& PartBuilder::add(std::string label, Rational coefficient, double monomial) {
    return add(std::move(label), coefficient, 1.0, {}, monomial);
}

PartBuilder& PartBuilder::add(std::string label, Rational coefficient, double factor,
                              std::string factor_label, double monomial) {
    Term t;
    t.label = std::move(label);
    t.coefficient = coefficient;
    t.factor = factor;
    t.factor_label = std::move(factor_label);
    t.monomial = monomial;
    t.value = coefficient.to_double() * factor * monomial;
    part_.terms.push_back(std::move(t));
    return *this;
}

Part PartBuilder::finish(double normalization) && {
    double sum = 0.0;
    for (const auto& t : part_.terms) sum += t.value;
    part_.value = normalization * sum;
    return std::move(part_);
}

double four_pi_power(int twice_exponent) {
    if (twice_exponent == 0) return 1.0;
    return std::pow(4.0 * std::numbers::pi, 0.5 * twice_exponent);
}

CoefficientReport make_report(std::string family, int n, int normalization_twice_exponent) {
    CoefficientReport r;
    r.family = std::move(family);
    r.n = n;
    r.normalization_twice_exponent = normalization_twice_exponent;
    r.normalization = four_pi_power(normalization_twice_exponent);
    return r;
}

void add_part(CoefficientReport& report, Part part) {
    report.conjectural = report.conjectural || part.conjectural;
    report.parts.push_back(std::move(part));
    double sum = 0.0;
    for (const auto& p : report.parts) sum += p.value;
    report.value = sum;
}

CoefficientReport merge(CoefficientReport a, const CoefficientReport& b) {
    if (a.n != b.n || a.family != b.family) throw InvalidInput("merge: reports of different orders");
    if (a.status != ReportStatus::Ok) return a;
    if (b.status != ReportStatus::Ok) return b;
    if (a.parts.empty()) {
        a.normalization_twice_exponent = b.normalization_twice_exponent;
        a.normalization = b.normalization;
    } else if (!b.parts.empty() && a.normalization_twice_exponent != b.normalization_twice_exponent) {
        throw InvalidInput("merge: reports with different normalizations");
    }
    for (const auto& p : b.parts) add_part(a, p);
    return a;
}

CoefficientReport refusal_report(std::string family, int n, ReportStatus status, std::string message) {
    CoefficientReport r;
    r.family = std::move(family);
    r.n = n;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.status = status;
    r.message = std::move(message);
    return r;
}

std::string to_string(ReportStatus status) {
    switch (status) {
        case ReportStatus::Ok: return "ok";
        case ReportStatus::NotLocallyComputable: return "NotLocallyComputable";
        case ReportStatus::Unsupported: return "Unsupported";
    }
    return "?";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return {buf, ptr};
}

namespace {

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const CoefficientReport& r) {
    nlohmann::json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["status"] = to_string(r.status);
    j["value"] = json_number(r.value);
    j["normalization"] = {{"base", "4pi"},
                          {"exponent", r.normalization_exponent()},
                          {"value", r.normalization}};
    j["conjectural"] = r.conjectural;
    if (!r.message.empty()) j["message"] = r.message;
    auto& parts = j["parts"] = nlohmann::json::array();
    for (const auto& p : r.parts) {
        nlohmann::json jp;
        jp["label"] = p.label;
        jp["value"] = json_number(p.value);
        jp["conjectural"] = p.conjectural;
        auto& terms = jp["terms"] = nlohmann::json::array();
        for (const auto& t : p.terms) {
            nlohmann::json jt{{"label", t.label},
                              {"coefficient", t.coefficient.str()},
                              {"monomial", json_number(t.monomial)},
                              {"value", json_number(t.value)}};
            if (!t.factor_label.empty()) jt["factor"] = {{"label", t.factor_label}, {"value", t.factor}};
            terms.push_back(std::move(jt));
        }
        parts.push_back(std::move(jp));
    }
    return j;
}

nlohmann::json to_json(const std::vector<CoefficientReport>& reports) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

std::string csv_header() { return "n,total,part_label,part_value,normalization,conjectural_flag\n"; }

std::string to_csv_rows(const CoefficientReport& r) {
    std::ostringstream os;
    const std::string total = format_double(r.value);
    if (r.status != ReportStatus::Ok) {
        os << r.n << ',' << total << ',' << to_string(r.status) << ",nan,"
           << format_double(r.normalization) << ',' << (r.conjectural ? 1 : 0) << '\n';
        return os.str();
    }
    if (r.parts.empty()) {
        os << r.n << ',' << total << ",none,0," << format_double(r.normalization) << ",0\n";
    }
    for (const auto& p : r.parts) {
        os << r.n << ',' << total << ',' << p.label << ',' << format_double(p.value) << ','
           << format_double(r.normalization) << ',' << (p.conjectural ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string to_csv(const std::vector<CoefficientReport>& reports) {
    std::string out = csv_header();
    for (const auto& r : reports) out += to_csv_rows(r);
    return out;
}

}  // namespace heatcoeff
