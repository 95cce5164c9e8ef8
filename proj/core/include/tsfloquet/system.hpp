#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsfloquet/calculus.hpp"
#include "tsfloquet/expr.hpp"
#include "tsfloquet/timescale.hpp"

namespace tsfloquet {

/// x^{ΔΔ} + p(t) x^Δ + q(t) x = 0 on one period of a periodic time scale.
struct SystemSpec {
    TimeScale ts;
    Expression p;
    Expression q;
    Expression qprime;
    double quad_tol = kDefaultQuadTol;
};

/// Builds and validates a system. `qprime` defaults to the symbolic derivative of q.
///
/// Checks, at every right-scattered t in [t0, t0+T): 1 - mu p + mu^2 q != 0
/// (NotRegressive) and q != 0 (InvalidSystem); q > 0 on a 512-point sample of
/// every dense run (NegativeQOnDense).
[[nodiscard]] SystemSpec make_system(TimeScale ts, Expression p, Expression q,
                                     std::optional<Expression> qprime = std::nullopt,
                                     double quad_tol = kDefaultQuadTol);

/// Solution phi of phi(sigma(t)) phi(t) = q(t): stored values on the right-scattered
/// points, sqrt(q) on dense points.
class PhaseTable {
public:
    /// phi(t) for t in [t0, t0+T].
    [[nodiscard]] double phi(double t) const;
    /// phi(sigma(t)) for t in [t0, t0+T).
    [[nodiscard]] double phi_sigma(double t) const;
    /// Delta derivative: difference quotient at scattered t, q'/(2 sqrt q) at dense t.
    [[nodiscard]] double phi_delta(double t) const;

    [[nodiscard]] double phi_t0() const { return phi(ts_.t0()); }
    [[nodiscard]] double phi_end() const noexcept { return phi_end_; }
    [[nodiscard]] const std::vector<std::pair<double, double>>& scattered_values() const noexcept {
        return scattered_;
    }
    /// Junctions where the back-substituted chain does not meet sqrt(q) continuously.
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    [[nodiscard]] const TimeScale& ts() const noexcept { return ts_; }

private:
    friend PhaseTable solve_phi(const SystemSpec& spec, double seed);
    PhaseTable(TimeScale ts, Expression q, Expression qprime)
        : ts_(std::move(ts)), q_(std::move(q)), qprime_(std::move(qprime)) {}

    [[nodiscard]] double dense_phi(double t) const;
    [[nodiscard]] double lookup(double canonical_t) const;

    TimeScale ts_;
    Expression q_;
    Expression qprime_;
    std::vector<std::pair<double, double>> scattered_;  // ascending in t
    double phi_end_ = 0.0;
    std::vector<std::string> warnings_;
};

/// Purely discrete scales start the forward recursion from phi(t0) = seed.
/// Hybrid scales back-substitute from sqrt(q) at the next dense left endpoint,
/// or from phi(t0+T) = phi(t0) after the last dense run. Throws PhiVanishes.
[[nodiscard]] PhaseTable solve_phi(const SystemSpec& spec, double seed = 1.0);

/// h(t) = -p(t) - phi^Δ(t) / phi(t).
[[nodiscard]] double h_fn(const SystemSpec& spec, const PhaseTable& table, double t);

/// P(t, s) = sin_phi(t, sigma(s)) / phi(sigma(s)).
[[nodiscard]] double kernel_P(const SystemSpec& spec, const PhaseTable& table, double t, double s);
/// Q(t, s) = phi(t) cos_phi(t, sigma(s)) / phi(sigma(s)).
[[nodiscard]] double kernel_Q(const SystemSpec& spec, const PhaseTable& table, double t, double s);

/// cos_phi(t, s) and sin_phi(t, s) for the phase function of `table`.
[[nodiscard]] double table_cos(const SystemSpec& spec, const PhaseTable& table, double t, double s);
[[nodiscard]] double table_sin(const SystemSpec& spec, const PhaseTable& table, double t, double s);

/// B = e_{-p + mu q}(t0 + T, t0), the product of the two multipliers.
[[nodiscard]] double compute_B(const SystemSpec& spec);

}  // namespace tsfloquet
