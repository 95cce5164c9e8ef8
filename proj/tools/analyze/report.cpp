#include "report.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

namespace analyze {

namespace {

std::string fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    const std::string out = buf;
    return out == "-0.000000" ? "0.000000" : out;
}

std::string range(const std::pair<double, double>& r) { return "[" + fixed(r.first) + ", " + fixed(r.second) + "]"; }

}  // namespace

Report make_report(const tsfloquet::FloquetReport& r, const tsfloquet::SystemSpec& spec, std::string source) {
    Report out;
    out.source = std::move(source);
    out.discrete = spec.ts.is_discrete();
    out.shi = r.shi;
    out.n = r.n;
    out.a_terms = r.a_terms;
    out.a_partial = r.a_partial;
    out.b = r.b;
    out.err_bound = r.error.value;
    out.err_exact = r.error.exact;
    const auto point = tsfloquet::multipliers({r.a_partial, r.a_partial}, r.b);
    out.moduli = {point[0].lo, point[1].lo};
    out.moduli_range = {std::pair{r.moduli[0].lo, r.moduli[0].hi}, std::pair{r.moduli[1].lo, r.moduli[1].hi}};
    out.verdict = tsfloquet::to_string(r.verdict.kind);
    out.justification = r.verdict.justification;
    out.warnings = r.warnings;
    return out;
}

std::vector<std::string> transcript(const Report& r) {
    // the program prints |(A -+ sqrt(A^2 - 4B)) / 2| in this order
    const std::complex<double> root = std::sqrt(std::complex<double>(r.a_partial * r.a_partial - 4.0 * r.b, 0.0));
    const double first = std::abs((r.a_partial - root) / 2.0);
    const double second = std::abs((r.a_partial + root) / 2.0);
    const std::string n = std::to_string(r.n);
    if (r.discrete && r.err_exact) {
        return {"The value of A is " + fixed(r.a_partial), "The value of B is " + fixed(r.b),
                "The modulus of multipliers are " + fixed(first) + " " + fixed(second) + "."};
    }
    return {"The value of A(" + n + ") is " + fixed(r.a_partial), "The value of B is " + fixed(r.b),
            "The " + n + "th approximate modulus are " + fixed(first) + " " + fixed(second) + "."};
}

std::string render_text(const Report& r) {
    std::string out;
    for (const auto& line : transcript(r)) out += line + "\n";
    out += "\n";
    out += "A(" + std::to_string(r.n) + ") = " + fixed(r.a_partial) + "\n";
    if (!r.a_terms.empty()) {
        out += "A_j =";
        for (std::size_t j = 0; j < r.a_terms.size(); ++j) out += (j == 0 ? " " : ", ") + fixed(r.a_terms[j]);
        out += "\n";
    }
    out += "B = " + fixed(r.b) + "\n";
    out += "|rho| = " + fixed(r.moduli[0]) + ", " + fixed(r.moduli[1]) + "\n";
    out += "|rho| range = " + range(r.moduli_range[0]) + ", " + range(r.moduli_range[1]) + "\n";
    out += "error bound = " + (r.err_exact ? std::string("exact") : fixed(r.err_bound)) + "\n";
    out += "verdict = " + r.verdict + "\n";
    out += "reason = " + r.justification + "\n";
    for (const auto& w : r.warnings) out += "warning = " + w + "\n";
    if (r.oracle) {
        out += "oracle A = " + fixed(r.oracle->a_oracle) + ", B = " + fixed(r.oracle->b_oracle) + "\n";
        char buf[96];
        std::snprintf(buf, sizeof buf, "oracle delta A = %.3e, delta B = %.3e", r.oracle->delta_a, r.oracle->delta_b);
        out += std::string(buf) + "\n";
    }
    return out;
}

nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["source"] = r.source;
    j["discrete"] = r.discrete;
    j["shi"] = r.shi;
    j["n"] = r.n;
    j["A_terms"] = r.a_terms;
    j["A_partial"] = r.a_partial;
    j["B"] = r.b;
    j["err_bound"] = r.err_bound;
    j["err_exact"] = r.err_exact;
    j["moduli"] = r.moduli;
    j["moduli_range"] = {{r.moduli_range[0].first, r.moduli_range[0].second},
                         {r.moduli_range[1].first, r.moduli_range[1].second}};
    j["verdict"] = r.verdict;
    j["justification"] = r.justification;
    j["warnings"] = r.warnings;
    if (r.oracle) {
        j["oracle"] = {{"A", r.oracle->a_oracle},
                       {"B", r.oracle->b_oracle},
                       {"delta_A", r.oracle->delta_a},
                       {"delta_B", r.oracle->delta_b}};
    } else {
        j["oracle"] = nullptr;
    }
    j["seconds"] = r.seconds;
    return j;
}

Report from_json(const nlohmann::json& j) {
    Report r;
    r.source = j.at("source").get<std::string>();
    r.discrete = j.at("discrete").get<bool>();
    r.shi = j.at("shi").get<bool>();
    r.n = j.at("n").get<std::size_t>();
    r.a_terms = j.at("A_terms").get<std::vector<double>>();
    r.a_partial = j.at("A_partial").get<double>();
    r.b = j.at("B").get<double>();
    r.err_bound = j.at("err_bound").get<double>();
    r.err_exact = j.at("err_exact").get<bool>();
    r.moduli = j.at("moduli").get<std::array<double, 2>>();
    const auto& range = j.at("moduli_range");
    for (std::size_t i = 0; i < 2; ++i) r.moduli_range[i] = {range.at(i).at(0).get<double>(), range.at(i).at(1).get<double>()};
    r.verdict = j.at("verdict").get<std::string>();
    r.justification = j.at("justification").get<std::string>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (const auto& o = j.at("oracle"); !o.is_null()) {
        r.oracle = OracleDeltas{o.at("A").get<double>(), o.at("B").get<double>(), o.at("delta_A").get<double>(),
                                o.at("delta_B").get<double>()};
    }
    r.seconds = j.at("seconds").get<double>();
    return r;
}

}  // namespace analyze
