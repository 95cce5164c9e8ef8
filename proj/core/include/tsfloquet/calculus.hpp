#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "tsfloquet/error.hpp"
#include "tsfloquet/timescale.hpp"

namespace tsfloquet {

using Complex = std::complex<double>;

inline constexpr double kDefaultQuadTol = 1e-9;
inline constexpr std::size_t kQuadratureBudget = 1'000'000;

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
    double a;
    double b;
    V value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class V, class F>
Panel<V> gauss_kronrod_panel(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const V fc = static_cast<V>(f(c));
    V kronrod = fc * kKronrodWeights[7];
    V gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const V pair = static_cast<V>(f(c - dx)) + static_cast<V>(f(c + dx));
        kronrod += pair * kKronrodWeights[j];
        if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
    }
    return {a, b, kronrod * h, std::abs(kronrod - gauss) * std::abs(h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// Splits the panel with the largest embedded error estimate until the summed
/// estimate is below `abs_tol`. Throws QuadratureNonConvergence once
/// `max_evaluations` integrand evaluations are spent.
template <class V, class F>
V adaptive_quadrature(F&& f, double a, double b, double abs_tol = kDefaultQuadTol,
                      std::size_t max_evaluations = kQuadratureBudget) {
    if (a == b) return V{};
    std::priority_queue<detail::Panel<V>> panels;
    auto first = detail::gauss_kronrod_panel<V>(f, a, b);
    std::size_t evaluations = 15;
    V total = first.value;
    double error = first.error;
    panels.push(first);
    // floor relative to the magnitude avoids chasing round-off
    while (!std::isfinite(error) || error > std::max(abs_tol, 50.0 * 2.2e-16 * std::abs(total))) {
        if (evaluations + 30 > max_evaluations) {
            throw Error(ErrorCode::QuadratureNonConvergence,
                        "tolerance " + std::to_string(abs_tol) + " not reached on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "], estimate " + std::to_string(error));
        }
        if (!std::isfinite(error)) {
            throw Error(ErrorCode::QuadratureNonConvergence, "integrand is not finite on [" + std::to_string(a) +
                                                                 ", " + std::to_string(b) + "]");
        }
        auto worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gauss_kronrod_panel<V>(f, worst.a, mid);
        auto right = detail::gauss_kronrod_panel<V>(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // re-sum to shed the drift of the running updates
    V resum{};
    while (!panels.empty()) {
        resum += panels.top().value;
        panels.pop();
    }
    return resum;
}

/// Delta integral of f over [a, b)_T: exact mu-weighted sums at right-scattered
/// points plus adaptive quadrature on every dense run (tolerance `tol` each).
template <class V, class F>
V delta_integral(const TimeScale& ts, F&& f, double a, double b, double tol = kDefaultQuadTol) {
    if (b < a) return -delta_integral<V>(ts, f, b, a, tol);
    V sum{};
    for (const Piece& p : ts.pieces(a, b)) {
        if (p.kind == Piece::Kind::Scattered) {
            sum += static_cast<V>(f(p.lo)) * p.mu;
        } else {
            sum += adaptive_quadrature<V>(f, p.lo, p.hi, tol);
        }
    }
    return sum;
}

/// Generalised exponential e_g(t, s): product of (1 + mu g) over the scattered
/// points of [s, t) times exp of the integral of g over the dense runs.
/// For t < s the reciprocal e_g(s, t)^-1 is returned. Throws NotRegressive.
template <class F>
Complex ts_exponential(const TimeScale& ts, F&& g, double t, double s, double tol = kDefaultQuadTol) {
    if (t < s) return 1.0 / ts_exponential(ts, g, s, t, tol);
    Complex product{1.0, 0.0};
    Complex dense{};
    for (const Piece& p : ts.pieces(s, t)) {
        if (p.kind == Piece::Kind::Scattered) {
            const Complex factor = Complex{1.0, 0.0} + p.mu * static_cast<Complex>(g(p.lo));
            if (std::abs(factor) < 1e-14) {
                throw Error(ErrorCode::NotRegressive, "1 + mu g vanishes at t = " + std::to_string(p.lo));
            }
            product *= factor;
        } else {
            dense += adaptive_quadrature<Complex>([&](double x) { return static_cast<Complex>(g(x)); }, p.lo,
                                                  p.hi, tol);
        }
    }
    return product * std::exp(dense);
}

/// e_{i phi}(t, s) for a real phase function phi.
template <class Phi>
Complex phase_exponential(const TimeScale& ts, Phi&& phi, double t, double s, double tol = kDefaultQuadTol) {
    return ts_exponential(ts, [&](double x) { return Complex{0.0, phi(x)}; }, t, s, tol);
}

/// Time-scale cosine cos_phi(t, s) = Re e_{i phi}(t, s).
template <class Phi>
double cos_phi(const TimeScale& ts, Phi&& phi, double t, double s, double tol = kDefaultQuadTol) {
    return phase_exponential(ts, phi, t, s, tol).real();
}

/// Time-scale sine sin_phi(t, s) = Im e_{i phi}(t, s).
template <class Phi>
double sin_phi(const TimeScale& ts, Phi&& phi, double t, double s, double tol = kDefaultQuadTol) {
    return phase_exponential(ts, phi, t, s, tol).imag();
}

}  // namespace tsfloquet
