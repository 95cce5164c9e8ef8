#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsfloquet/system.hpp"

namespace analyze {

/// Contents of a `key = value` system description.
struct ConfigFile {
    std::optional<double> t0;
    std::optional<double> period;
    std::vector<double> points;
    std::vector<std::pair<double, double>> intervals;
    std::string p = "0";
    std::string q;
    std::optional<std::string> qprime;
    std::optional<std::size_t> n;
    std::optional<double> tol;
    bool oracle = false;
    bool shi = false;
    bool json = false;
    std::string source = "<string>";
};

/// Throws Error{ParseError} with the offending line number.
[[nodiscard]] ConfigFile parse_config(std::string_view text, std::string source = "<string>");
[[nodiscard]] ConfigFile load_config(const std::filesystem::path& path);

/// Time scale described by the config: t0 defaults to the smallest coordinate and
/// period to the span of the coordinates.
[[nodiscard]] tsfloquet::TimeScale build_time_scale(const ConfigFile& config);

/// Throws Error{ValidationError} ("q required") and the library's validation errors.
[[nodiscard]] tsfloquet::SystemSpec build_system(const ConfigFile& config);

/// k (scattered points per period) on purely discrete scales, else 3.
[[nodiscard]] std::size_t default_n(const tsfloquet::TimeScale& ts);

}  // namespace analyze
