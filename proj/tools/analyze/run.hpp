#pragma once

#include <cstddef>
#include <optional>
#include <ostream>

#include "config.hpp"
#include "report.hpp"
#include "tsfloquet/error.hpp"

namespace analyze {

/// Command-line overrides; unset fields fall back to the config.
struct Flags {
    std::optional<std::size_t> n;
    std::optional<double> tol;
    bool oracle = false;
    bool shi = false;
    bool json = false;
};

inline constexpr int kExitStable = 0;
inline constexpr int kExitUnstable = 1;
inline constexpr int kExitUndetermined = 2;
inline constexpr int kExitBadInput = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitCheckFailed = 5;
inline constexpr int kExitInternal = 6;

/// validate -> solve_phi -> B -> A(n) -> bound -> multipliers -> verdict (+ oracle).
[[nodiscard]] Report run(const ConfigFile& config, const Flags& flags);

[[nodiscard]] int exit_code(const Report& report);
[[nodiscard]] int exit_code(tsfloquet::ErrorCode code);

/// Whole program: argument parsing, single or batch runs, output. Returns the exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& diag);

}  // namespace analyze
