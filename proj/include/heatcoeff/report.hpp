#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "heatcoeff/rational.hpp"

namespace heatcoeff {

// One printed term: exact coefficient (times an optional irrational factor
// such as 1/sqrt(pi) or a C(m) combination) times an integrated invariant.
struct Term {
    std::string label;
    Rational coefficient;
    double factor = 1.0;
    std::string factor_label;  // empty when factor == 1
    double monomial = 0.0;     // integrated, traced invariant
    double value = 0.0;        // coefficient * factor * monomial
};

struct Part {
    std::string label;
    double value = 0.0;  // normalization * sum of term values, in term order
    std::vector<Term> terms;
    bool conjectural = false;
};

enum class ReportStatus { Ok, NotLocallyComputable, Unsupported };

struct CoefficientReport {
    std::string family = "trace";  // "trace" (a_n) or "content" (beta_n)
    int n = 0;
    double value = 0.0;  // sum of parts, in part order
    std::vector<Part> parts;
    int normalization_twice_exponent = 0;  // (4 pi)^(e/2)
    double normalization = 1.0;
    bool conjectural = false;
    ReportStatus status = ReportStatus::Ok;
    std::string message;

    double normalization_exponent() const { return 0.5 * normalization_twice_exponent; }
};

// Accumulates terms of one part in a fixed order.
class PartBuilder {
public:
    explicit PartBuilder(std::string label) { part_.label = std::move(label); }

    PartBuilder& add(std::string label, Rational coefficient, double monomial);
    PartBuilder& add(std::string label, Rational coefficient, double factor, std::string factor_label,
                     double monomial);
    PartBuilder& conjectural(bool flag = true) {
        part_.conjectural = flag;
        return *this;
    }
    Part finish(double normalization) &&;

private:
    Part part_;
};

double four_pi_power(int twice_exponent);

// Report with no parts yet and the given (4 pi)^(e/2) normalization.
CoefficientReport make_report(std::string family, int n, int normalization_twice_exponent);

// Appends a part and recomputes the total.
void add_part(CoefficientReport& report, Part part);

// Concatenates the parts of b onto a; orders and normalizations must agree.
CoefficientReport merge(CoefficientReport a, const CoefficientReport& b);

// Refusal row (D/N at n >= 3, orders with no printed formula).
CoefficientReport refusal_report(std::string family, int n, ReportStatus status, std::string message);

std::string to_string(ReportStatus status);

nlohmann::json to_json(const CoefficientReport& report);
nlohmann::json to_json(const std::vector<CoefficientReport>& reports);

// Columns: n,total,part_label,part_value,normalization,conjectural_flag
std::string csv_header();
std::string to_csv_rows(const CoefficientReport& report);
std::string to_csv(const std::vector<CoefficientReport>& reports);

// Shortest round-trip decimal form, used by every CSV writer.
std::string format_double(double v);

}  // namespace heatcoeff
