#include "tsfloquet/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tsfloquet {

namespace {

/// Larger root modulus; non-decreasing in |a| and never below sqrt|b|.
double large_modulus(double abs_a, double b) {
    const double disc = 0.25 * abs_a * abs_a - b;
    if (disc < 0.0) return std::sqrt(b);
    return 0.5 * abs_a + std::sqrt(disc);
}

double small_modulus(double large, double b) {
    if (large == 0.0) return 0.0;
    return std::abs(b) / large;
}

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    const std::string out = buf;
    return out == "-0.000000" ? "0.000000" : out;
}

std::string show(RealInterval r) { return "[" + fixed6(r.lo) + ", " + fixed6(r.hi) + "]"; }

}  // namespace

std::array<RealInterval, 2> multipliers(RealInterval a, double b) {
    const double abs_min = (a.lo <= 0.0 && a.hi >= 0.0) ? 0.0 : std::min(std::abs(a.lo), std::abs(a.hi));
    const double abs_max = std::max(std::abs(a.lo), std::abs(a.hi));
    const double large_lo = large_modulus(abs_min, b);
    const double large_hi = large_modulus(abs_max, b);
    const RealInterval large{large_lo, large_hi};
    const RealInterval small{small_modulus(large_hi, b), small_modulus(large_lo, b)};
    return {small, large};
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::ExponentiallyStable: return "exponentially stable";
        case Stability::Unstable: return "unstable";
        case Stability::Undetermined: return "undetermined";
    }
    return "undetermined";
}

Verdict verdict(RealInterval a, double b) {
    if (std::abs(b - 1.0) <= kUnitDeterminantTol) {
        if (a.lo > -2.0 && a.hi < 2.0) {
            return {Stability::Stable,
                    "B = 1 and A in " + show(a) + " lies inside (-2, 2): distinct multipliers on the unit circle"};
        }
        if (a.lo > 2.0 || a.hi < -2.0) {
            return {Stability::Unstable, "B = 1 and A in " + show(a) + " lies outside [-2, 2]: a multiplier has modulus > 1"};
        }
        return {Stability::Undetermined,
                "A in " + show(a) + " meets the boundary |A| = 2; increase n or handle the critical case manually"};
    }
    const auto m = multipliers(a, b);
    if (m[1].lo > 1.0) {
        return {Stability::Unstable, "multiplier modulus in " + show(m[1]) + " exceeds 1"};
    }
    if (m[1].hi < 1.0) {
        return {Stability::ExponentiallyStable, "both multiplier moduli are below 1 (largest in " + show(m[1]) + ")"};
    }
    return {Stability::Undetermined,
            "multiplier modulus in " + show(m[1]) + " straddles 1; increase n or handle the critical case manually"};
}

}  // namespace tsfloquet
