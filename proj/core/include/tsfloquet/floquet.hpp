#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsfloquet/bounds.hpp"
#include "tsfloquet/calculus.hpp"
#include "tsfloquet/error.hpp"
#include "tsfloquet/expr.hpp"
#include "tsfloquet/oracle.hpp"
#include "tsfloquet/series.hpp"
#include "tsfloquet/stability.hpp"
#include "tsfloquet/system.hpp"
#include "tsfloquet/timescale.hpp"

namespace tsfloquet {

struct AnalysisOptions {
    std::size_t n = 3;
    /// Use the continuous B = 1 form through the 2m-fold term with m = n / 2.
    bool shi = false;
    BoundOptions bounds{};
    SeriesOptions series{};
};

struct FloquetReport {
    std::size_t n = 0;
    std::vector<double> a_terms;
    double a_partial = 0.0;
    ErrorBound error{};
    BoundConstants constants{};
    double b = 0.0;
    std::array<RealInterval, 2> moduli{};
    Verdict verdict{};
    std::vector<std::string> warnings;
    bool shi = false;
};

/// solve_phi -> compute_B -> A(n) -> error bound -> multipliers -> verdict.
[[nodiscard]] FloquetReport analyze(const SystemSpec& spec, const AnalysisOptions& options = {});

}  // namespace tsfloquet
