#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "triwalsh/rational.hpp"

namespace triwalsh {

// Output record of every lemma-lab operation. measured and bound are exact;
// verdict "pass"/"fail" only where the comparison is constant-free, "report"
// where the paper leaves an unnamed constant C and the ratio is the result.
struct LemmaReport {
    std::string lemma;
    std::vector<std::pair<std::string, std::string>> params;
    Rational measured = 0;
    Rational bound = 0;
    Rational ratio = 0;  // measured / bound (0 when bound is 0)
    std::string verdict = "report";
    std::int64_t ms = 0;
    std::string note;

    void set_ratio() { ratio = bound == 0 ? Rational(0) : Rational(measured / bound); }
    void add_param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
    void add_param(const std::string& k, std::int64_t v) { params.emplace_back(k, std::to_string(v)); }
    bool failed() const { return verdict == "fail"; }
};

std::string params_string(const LemmaReport& r);

// CSV: lemma,params,measured_num,measured_den,bound_num,bound_den,ratio_decimal,verdict,ms
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const LemmaReport& r);
void write_json(std::ostream& out, const std::vector<LemmaReport>& rows);

// Rational over-approximation u of delta = ((2^16-1)/2^16)^(1/16) with
// u^16 >= (2^16-1)/2^16 and u < 1, tight to 64 fractional bits. Using u in a
// bound can only weaken it, so no check passes by rounding.
class DeltaConstant {
  public:
    static const DeltaConstant& upper();

    const Rational& value() const { return value_; }
    Rational pow(unsigned e) const;

  private:
    DeltaConstant();
    Rational value_;
};

}  // namespace triwalsh
