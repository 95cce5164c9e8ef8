#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsfloquet/floquet.hpp"

namespace analyze {

struct OracleDeltas {
    double a_oracle = 0.0;
    double b_oracle = 0.0;
    double delta_a = 0.0;
    double delta_b = 0.0;

    friend bool operator==(const OracleDeltas&, const OracleDeltas&) = default;
};

/// Everything a run prints.
struct Report {
    std::string source;
    bool discrete = false;
    bool shi = false;
    std::size_t n = 0;
    std::vector<double> a_terms;
    double a_partial = 0.0;
    double b = 0.0;
    double err_bound = 0.0;
    bool err_exact = false;
    /// Moduli at A(n), ascending.
    std::array<double, 2> moduli{};
    /// Moduli over A(n) +- err_bound, ascending.
    std::array<std::pair<double, double>, 2> moduli_range{};
    std::string verdict;
    std::string justification;
    std::vector<std::string> warnings;
    std::optional<OracleDeltas> oracle;
    double seconds = 0.0;

    friend bool operator==(const Report&, const Report&) = default;
};

[[nodiscard]] Report make_report(const tsfloquet::FloquetReport& r, const tsfloquet::SystemSpec& spec,
                                 std::string source);

/// The lines the reference program prints for this report.
[[nodiscard]] std::vector<std::string> transcript(const Report& r);

/// Transcript followed by the summary lines, six decimals throughout.
[[nodiscard]] std::string render_text(const Report& r);

[[nodiscard]] nlohmann::ordered_json to_json(const Report& r);
[[nodiscard]] Report from_json(const nlohmann::json& j);

}  // namespace analyze
