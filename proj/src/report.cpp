#include "triwalsh/report.hpp"

#include <ostream>

#include <json.hpp>

namespace triwalsh {

std::string params_string(const LemmaReport& r) {
    std::string s;
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) s.push_back(';');
        s += r.params[i].first;
        s.push_back('=');
        s += r.params[i].second;
    }
    return s;
}

void write_csv_header(std::ostream& out) {
    out << "lemma,params,measured_num,measured_den,bound_num,bound_den,ratio_decimal,verdict,ms\n";
}

void write_csv_row(std::ostream& out, const LemmaReport& r) {
    out << r.lemma << ',' << params_string(r) << ',' << boost::multiprecision::numerator(r.measured)
        << ',' << boost::multiprecision::denominator(r.measured) << ','
        << boost::multiprecision::numerator(r.bound) << ','
        << boost::multiprecision::denominator(r.bound) << ',' << decimal_string(r.ratio) << ','
        << r.verdict << ',' << r.ms << '\n';
}

void write_json(std::ostream& out, const std::vector<LemmaReport>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json params = nlohmann::json::object();
        for (auto& [k, v] : r.params) params[k] = v;
        nlohmann::json row{
            {"lemma", r.lemma},
            {"params", params},
            {"measured_num", boost::multiprecision::numerator(r.measured).str()},
            {"measured_den", boost::multiprecision::denominator(r.measured).str()},
            {"bound_num", boost::multiprecision::numerator(r.bound).str()},
            {"bound_den", boost::multiprecision::denominator(r.bound).str()},
            {"ratio_num", boost::multiprecision::numerator(r.ratio).str()},
            {"ratio_den", boost::multiprecision::denominator(r.ratio).str()},
            {"ratio_decimal", decimal_string(r.ratio)},
            {"verdict", r.verdict},
            {"ms", r.ms},
        };
        if (!r.note.empty()) row["note"] = r.note;
        arr.push_back(std::move(row));
    }
    out << arr.dump(2) << '\n';
}

DeltaConstant::DeltaConstant() {
    // smallest p with (p / 2^64)^16 >= (2^16 - 1) / 2^16,
    // i.e. p^16 >= (2^16 - 1) * 2^1008
    BigInt target = BigInt(65535) << 1008;
    BigInt lo = BigInt(1) << 63, hi = BigInt(1) << 64;
    while (lo < hi) {
        BigInt mid = (lo + hi) >> 1;
        if (boost::multiprecision::pow(mid, 16) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    value_ = Rational(lo, BigInt(1) << 64);
}

const DeltaConstant& DeltaConstant::upper() {
    static const DeltaConstant instance;
    return instance;
}

Rational DeltaConstant::pow(unsigned e) const {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= value_;
    return r;
}

}  // namespace triwalsh
