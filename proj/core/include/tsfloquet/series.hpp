#pragma once

#include <cstddef>
#include <vector>

#include "tsfloquet/system.hpp"

namespace tsfloquet {

/// Deepest nesting accepted on scales with a dense part.
inline constexpr std::size_t kMaxDenseDepth = 8;

struct SeriesOptions {
    /// Panels for a dense run spanning the whole period on the first pass.
    std::size_t initial_panels = 16;
    /// Refinement stops with QuadratureNonConvergence beyond this many panels per period.
    std::size_t max_panels = 4096;
};

/// The terms A_0, ..., A_n of the trace series.
///
/// A_0 = (1 + phi(t0+T)/phi(t0)) cos_phi(t0+T). For j >= 1 the n-fold nested
/// integrals are evaluated through the inner recursion
///   G_0 = phi sin_phi, H_0 = phi cos_phi,
///   G_j(r) = ∫_{t0}^r Q(r,s) h(s) G_{j-1}(s) Δs   (same for H),
///   A_j = -∫ P(t0+T,s) h G_{j-1} Δs + (1/phi(t0)) ∫ Q(t0+T,s) h H_{j-1} Δs.
/// Because cos_phi(r, sigma(s)) = Re[e(r) / e(sigma(s))] with e = e_{i phi}(., t0),
/// every level is a single complex running integral on a DeltaGrid. The grid is
/// doubled until the partial sums move by at most quad_tol. On discrete scales the
/// sums are finite and exact.
///
/// Throws DepthBudgetExceeded for n > kMaxDenseDepth on scales with a dense part.
[[nodiscard]] std::vector<double> a_terms(const SystemSpec& spec, const PhaseTable& table, std::size_t n,
                                          const SeriesOptions& options = {});

[[nodiscard]] double a_term(const SystemSpec& spec, const PhaseTable& table, std::size_t n);

/// A(n) = A_0 + ... + A_n.
[[nodiscard]] double a_partial(const SystemSpec& spec, const PhaseTable& table, std::size_t n);

/// A_n on a purely discrete scale as the explicit sum over strictly decreasing
/// n-tuples of scattered points weighted by the product of graininesses, with
/// pointwise kernels. Cost grows like C(k, n); meant for checking.
[[nodiscard]] double a_term_by_enumeration(const SystemSpec& spec, const PhaseTable& table, std::size_t n);

/// Continuous-scale (one period of R) form with B = 1:
///   2 cos Φ(t0+T) + Σ_{m=1}^{terms} 2^{1-2m} ∫...∫ cos Ψ(t_1..t_{2m}) Π h(t_i),
///   Ψ = Φ(t0+T) - 2Φ(t_1,t_2) - ... - 2Φ(t_{2m-1},t_{2m}),  Φ(t,s) = ∫_s^t phi.
/// Throws NotContinuousScale, BNotOne.
[[nodiscard]] double shi_continuous_a(const SystemSpec& spec, const PhaseTable& table, std::size_t terms,
                                      const SeriesOptions& options = {});

}  // namespace tsfloquet
