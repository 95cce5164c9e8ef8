#pragma once

#include <cstddef>

#include "tsfloquet/system.hpp"

namespace tsfloquet {

/// Upper bounds used by the truncation estimate:
/// k1 >= sup |(cos_phi(t) Q(t0+T, s) / phi(t0) - sin_phi(t) P(t0+T, s)) phi(t)| over t <= s,
/// k2 >= sup |Q(t, s)| over s <= t, k3 >= sup |h|.
struct BoundConstants {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
};

struct BoundOptions {
    /// Grid points per dense run.
    std::size_t samples = 512;
    /// Multiplier applied to every supremum.
    double safety = 1.0;
    /// Golden-section polish of grid maxima on dense runs.
    bool refine = true;
};

/// Suprema over the scattered points and a uniform grid on every dense run,
/// with local maxima polished by golden-section search.
[[nodiscard]] BoundConstants estimate_bounds(const SystemSpec& spec, const PhaseTable& table,
                                             const BoundOptions& options = {});

struct ErrorBound {
    double value = 0.0;
    /// The truncated series already equals A.
    bool exact = false;
};

/// |A - A(n)| <= (k1 / k2) (e^{k2 k3 T} - sum_{j<=n} (k2 k3 T)^j / j!).
///
/// Exact when the scale is purely discrete with k scattered points and n >= k,
/// or when k2 or k3 vanishes.
[[nodiscard]] ErrorBound error_bound(const SystemSpec& spec, const BoundConstants& k, std::size_t n);
[[nodiscard]] ErrorBound error_bound(const SystemSpec& spec, const PhaseTable& table, std::size_t n);

/// sum_{j > n} x^j / j! for x >= 0, summed directly.
[[nodiscard]] double exp_tail(double x, std::size_t n);

}  // namespace tsfloquet
