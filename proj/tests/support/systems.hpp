#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsfloquet/floquet.hpp"

namespace testing_support {

using namespace tsfloquet;

inline constexpr double kPi = std::numbers::pi;

/// Shortest text that parses back to exactly x.
inline std::string num(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    return x < 0 ? "(" + s + ")" : s;
}

inline SystemSpec system_of(PeriodicTimeScale pts, const std::string& p, const std::string& q) {
    return make_system(TimeScale::validate(std::move(pts)), parse_expression(p), parse_expression(q));
}

inline SystemSpec integers_period2() {
    return system_of({0, 2, {Point{0}, Point{1}, Point{2}}}, "(-17 + 15*neg1pow(t))/16", "(1 - 15*neg1pow(t))/16");
}

inline SystemSpec even_integers_period6() {
    return system_of({0, 6, {Point{0}, Point{2}, Point{4}, Point{6}}}, "(sin(pi/3*t) + 2)/10",
                     "(sin(pi/3*t) + 2)/20");
}

inline SystemSpec gapped_line() {
    return system_of({0, 2 * kPi, {Interval{0, kPi}, Point{2 * kPi}}}, "if(eq(mod(t, 2*pi), pi), 0.25, 0)", "1");
}

inline SystemSpec sine_damped_line() { return system_of({0, kPi, {Interval{0, kPi}}}, "sin(2*t)/2", "1/4"); }

inline SystemSpec mathieu(double lambda, double h) {
    return system_of({0, kPi, {Interval{0, kPi}}}, "0", num(lambda) + " - " + num(h) + "*cos(2*t)");
}

/// a + b*sin(c*t + d) with the given ranges.
inline std::string random_trig(std::mt19937_64& rng, double a, double b_max) {
    std::uniform_real_distribution<double> amp(-b_max, b_max);
    std::uniform_real_distribution<double> freq(0.3, 2.5);
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    return num(a) + " + " + num(amp(rng)) + "*sin(" + num(freq(rng)) + "*t + " + num(phase(rng)) + ")";
}

/// Purely discrete system with k scattered points per period and random gaps.
/// Returns nullopt when the draw is not regressive.
inline std::optional<SystemSpec> random_discrete(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> gap(0.3, 1.5);
    std::uniform_real_distribution<double> level(0.4, 1.6);
    std::bernoulli_distribution flip(0.3);
    PeriodicTimeScale pts;
    pts.t0 = 0.0;
    double t = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        pts.segments.emplace_back(Point{t});
        t += gap(rng);
    }
    pts.segments.emplace_back(Point{t});
    pts.period = t;
    const double qa = level(rng) * (flip(rng) ? -1.0 : 1.0);
    const std::string q = random_trig(rng, qa, 0.8 * std::abs(qa));
    const std::string p = random_trig(rng, level(rng) - 1.0, 0.5);
    try {
        return system_of(std::move(pts), p, q);
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Hybrid system satisfying the smoothness hypothesis on phi: the values of q at
/// scattered points are chosen so that the back-substituted chain meets sqrt(q)
/// at both ends of every scattered run. Returns nullopt when not regressive.
inline std::optional<SystemSpec> random_hybrid(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> runs_dist(1, 3);
    std::uniform_int_distribution<int> points_dist(0, 2);
    std::uniform_real_distribution<double> len(0.4, 1.5);
    std::uniform_real_distribution<double> gap(0.2, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::string qd = random_trig(rng, 0.5 + unit(rng), 0.3);
    const Expression qd_expr = parse_expression(qd);
    const std::string p = random_trig(rng, 0.4 * (unit(rng) - 0.5), 0.3);

    PeriodicTimeScale pts;
    pts.t0 = 0.0;
    std::vector<std::pair<double, double>> overrides;  // (t, q value)
    double t = 0.0;
    const int runs = runs_dist(rng);
    for (int r = 0; r < runs; ++r) {
        const double a = t;
        const double b = a + len(rng);
        pts.segments.emplace_back(Interval{a, b});
        // the scattered run: b, then extra isolated points, ending before the next dense start
        std::vector<double> chain_t{b};
        t = b + gap(rng);
        const int extra = points_dist(rng);
        for (int i = 0; i < extra; ++i) {
            pts.segments.emplace_back(Point{t});
            chain_t.push_back(t);
            t += gap(rng);
        }
        const double next = t;  // next dense left end, or t0 + T after the last run
        std::vector<double> chain_phi{std::sqrt(qd_expr(b))};
        for (int i = 0; i < extra; ++i) {
            const double sign = unit(rng) < 0.25 ? -1.0 : 1.0;
            chain_phi.push_back(sign * (0.6 + 0.8 * unit(rng)) * std::sqrt(qd_expr(chain_t[i + 1])));
        }
        const double phi_next = r + 1 < runs ? std::sqrt(qd_expr(next)) : std::sqrt(qd_expr(0.0));
        chain_phi.push_back(phi_next);
        for (std::size_t i = 0; i + 1 < chain_phi.size(); ++i) {
            overrides.emplace_back(chain_t[i], chain_phi[i] * chain_phi[i + 1]);
        }
    }
    pts.segments.emplace_back(Point{t});
    pts.period = t;

    std::string q = qd;
    for (auto it = overrides.rbegin(); it != overrides.rend(); ++it) {
        q = "if(eq(t, " + num(it->first) + "), " + num(it->second) + ", " + q + ")";
    }
    try {
        return system_of(std::move(pts), p, q);
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Random hybrid system with no care for the junctions (phi may jump).
inline std::optional<SystemSpec> random_hybrid_unmatched(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PeriodicTimeScale pts{0.0, 3.0, {Interval{0.0, 1.0}, Point{1.6}, Point{2.2}, Point{3.0}}};
    try {
        return system_of(std::move(pts), random_trig(rng, 0.2 * unit(rng), 0.2), random_trig(rng, 1.0 + unit(rng), 0.6));
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace testing_support
