#pragma once

#include <array>
#include <string>

namespace tsfloquet {

struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] static RealInterval around(double centre, double radius) { return {centre - radius, centre + radius}; }
    [[nodiscard]] double mid() const noexcept { return 0.5 * (lo + hi); }
};

/// Moduli of the roots of rho^2 - A rho + B = 0 for every A in `a`, as two
/// intervals sorted ascending (smaller modulus first).
[[nodiscard]] std::array<RealInterval, 2> multipliers(RealInterval a, double b);

enum class Stability { Stable, ExponentiallyStable, Unstable, Undetermined };

[[nodiscard]] std::string to_string(Stability s);

struct Verdict {
    Stability kind = Stability::Undetermined;
    std::string justification;
};

/// |B - 1| below this counts as B = 1.
inline constexpr double kUnitDeterminantTol = 1e-9;

/// Certified verdict from an enclosure of A and the value of B.
///
/// With B = 1 the multipliers are reciprocal: A inside (-2, 2) gives two distinct
/// unit-modulus multipliers (stable), A outside [-2, 2] a multiplier of modulus
/// above one (unstable). Otherwise the moduli decide: one certainly above one is
/// unstable, both certainly below one is exponentially stable.
[[nodiscard]] Verdict verdict(RealInterval a, double b);

}  // namespace tsfloquet
