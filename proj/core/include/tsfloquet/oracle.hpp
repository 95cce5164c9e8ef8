#pragma once

#include <cstddef>

#include "tsfloquet/system.hpp"

namespace tsfloquet {

struct Matrix2 {
    double a11 = 1.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 1.0;

    [[nodiscard]] static Matrix2 identity() { return {}; }
    [[nodiscard]] double trace() const noexcept { return a11 + a22; }
    [[nodiscard]] double det() const noexcept { return a11 * a22 - a12 * a21; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22, x.a21 * y.a11 + x.a22 * y.a21,
                x.a21 * y.a12 + x.a22 * y.a22};
    }
};

inline constexpr double kDefaultRkTol = 1e-10;

/// Monodromy matrix of the first-order system Y^Δ = S(t) Y, S = [[0, 1], [-q, -p]],
/// over one period: exact jumps Y <- (I + mu S) Y at scattered points and
/// Dormand-Prince 5(4) with step control on dense runs. Throws StepSizeUnderflow.
[[nodiscard]] Matrix2 monodromy(const SystemSpec& spec, double rk_tol = kDefaultRkTol);

struct CheckResult {
    double a_oracle = 0.0;
    double b_oracle = 0.0;
    double a_series = 0.0;
    double b_series = 0.0;
    double bound = 0.0;
    double delta_a = 0.0;
    double delta_b = 0.0;
};

/// Compares trace and determinant of the monodromy matrix with A(n) and B.
/// Passes when |delta_B| <= tol and |delta_A| <= error_bound(n) + tol; throws
/// CheckFailed otherwise.
[[nodiscard]] CheckResult cross_check(const SystemSpec& spec, std::size_t n, double tol);

}  // namespace tsfloquet
