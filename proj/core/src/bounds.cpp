#include "tsfloquet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "tsfloquet/delta_grid.hpp"

namespace tsfloquet {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Sample {
    double t;
    bool dense;              // t lies in the interior or left end of a dense run
    std::size_t run;         // dense run index (meaningful when dense)
    double phi;
    double phi_s;            // phi(sigma(t))
    Complex e;               // e_{i phi}(t, t0)
    Complex e_s;             // e_{i phi}(sigma(t), t0)
    double h;
};

double gl_integral(const std::function<double(double)>& f, double a, double b) {
    const LegendreRule& rule = legendre_rule();
    const double c = 0.5 * (a + b);
    const double w = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kPanelOrder; ++i) sum += rule.weights[i] * f(c + w * rule.nodes[i]);
    return sum * w;
}

class Sampler {
public:
    Sampler(const SystemSpec& spec, const PhaseTable& table, std::size_t per_run) : spec_(spec), table_(table) {
        const TimeScale& ts = spec.ts;
        const auto phi = [&](double x) { return table_.phi(x); };
        Complex e{1.0, 0.0};
        std::size_t run = 0;
        for (const Piece& p : ts.pieces()) {
            if (p.kind == Piece::Kind::Scattered) {
                const double f = table.phi(p.lo);
                const Complex jump = 1.0 + kI * p.mu * f;
                samples_.push_back({p.lo, false, 0, f, table.phi_sigma(p.lo), e, e * jump, h_fn(spec, table, p.lo)});
                e *= jump;
                continue;
            }
            const double step = (p.hi - p.lo) / static_cast<double>(per_run);
            runs_.push_back({p.lo, p.hi});
            for (std::size_t j = 0; j < per_run; ++j) {
                const double t = p.lo + step * static_cast<double>(j);
                if (j > 0) e *= std::exp(kI * gl_integral(phi, t - step, t));
                const double f = table.phi(t);
                samples_.push_back({t, true, run, f, f, e, e, h_fn(spec, table, t)});
            }
            e *= std::exp(kI * gl_integral(phi, p.hi - step, p.hi));
            ++run;
        }
        end_e_ = e;
        const double end = ts.end();
        const double f = table.phi_end();
        samples_.push_back({end, false, 0, f, f, e, e, h_fn(spec, table, ts.t0())});
    }

    [[nodiscard]] const std::vector<Sample>& samples() const { return samples_; }
    [[nodiscard]] Complex end_e() const { return end_e_; }

    /// Sample at a dense point t near samples_[anchor] (same run).
    [[nodiscard]] Sample at(std::size_t anchor, double t) const {
        const Sample& a = samples_[anchor];
        const auto phi = [&](double x) { return table_.phi(x); };
        Sample s = a;
        s.t = t;
        s.phi = s.phi_s = table_.phi(t);
        s.e = s.e_s = a.e * std::exp(kI * gl_integral(phi, a.t, t));
        s.h = h_fn(spec_, table_, t);
        return s;
    }

    /// Range of dense t that stays within one grid cell of samples_[i].
    [[nodiscard]] std::pair<double, double> cell(std::size_t i) const {
        const Sample& s = samples_[i];
        const auto [lo, hi] = runs_[s.run];
        const double lo_t = (i > 0 && samples_[i - 1].dense && samples_[i - 1].run == s.run) ? samples_[i - 1].t : lo;
        const double hi_t = (i + 1 < samples_.size() && samples_[i + 1].dense && samples_[i + 1].run == s.run)
                                ? samples_[i + 1].t
                                : hi;
        return {lo_t, hi_t};
    }

private:
    const SystemSpec& spec_;
    const PhaseTable& table_;
    std::vector<Sample> samples_;
    std::vector<std::pair<double, double>> runs_;
    Complex end_e_{1.0, 0.0};
};

/// Golden-section search for the maximum of f on [a, b]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b) {
    constexpr double r = 0.6180339887498949;
    double x1 = b - r * (b - a);
    double x2 = a + r * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 80 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    std::pair<double, double> best{x1, f1};
    for (const double x : {x2, a, b}) {
        const double fx = x == x2 ? f2 : f(x);
        if (fx > best.second) best = {x, fx};
    }
    return best;
}

double q_value(const Sample& r, const Sample& s) {
    return std::abs(r.phi * (r.e / s.e_s).real() / s.phi_s);
}

double k1_value(const Sample& t, const Sample& s, Complex end_e, double ratio) {
    const Complex k = end_e / s.e_s;
    return std::abs((t.e.real() * ratio * k.real() - t.e.imag() * k.imag()) * t.phi / s.phi_s);
}

/// s may pair with r when s < r, or s == r on a dense run.
bool admissible(const Sample& early, std::size_t i, std::size_t j) {
    return i < j || (i == j && early.dense);
}

/// Coordinate-wise golden-section polish of a two-argument supremum at grid pair (i, j), i <= j.
template <class F>
double polish_pair(const Sampler& sm, std::size_t i, std::size_t j, double best, F&& value) {
    const auto& smp = sm.samples();
    Sample early = smp[i];
    Sample late = smp[j];
    const bool same_run = early.dense && late.dense && early.run == late.run;
    for (int round = 0; round < 4; ++round) {
        if (late.dense) {
            auto [lo, hi] = sm.cell(j);
            if (same_run) lo = std::max(lo, early.t);
            if (hi > lo) {
                const auto [x, v] = golden_max([&](double t) { return value(early, sm.at(j, t)); }, lo, hi);
                if (v > best) {
                    best = v;
                    late = sm.at(j, x);
                }
            }
        }
        if (early.dense) {
            auto [lo, hi] = sm.cell(i);
            if (same_run) hi = std::min(hi, late.t);
            if (hi > lo) {
                const auto [x, v] = golden_max([&](double t) { return value(sm.at(i, t), late); }, lo, hi);
                if (v > best) {
                    best = v;
                    early = sm.at(i, x);
                }
            }
        }
    }
    return best;
}

}  // namespace

BoundConstants estimate_bounds(const SystemSpec& spec, const PhaseTable& table, const BoundOptions& options) {
    const Sampler sm(spec, table, std::max<std::size_t>(options.samples, 4));
    const auto& smp = sm.samples();
    const std::size_t n = smp.size();
    const double ratio = table.phi_end() / table.phi_t0();
    const Complex end_e = sm.end_e();

    BoundConstants k;

    // h is only integrated over [t0, t0+T), so the end sample is left out
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double v = std::abs(smp[i].h);
        k.k3 = std::max(k.k3, v);
        if (!options.refine || !smp[i].dense) continue;
        const bool left_ok = i == 0 || !smp[i - 1].dense || std::abs(smp[i - 1].h) <= v;
        const bool right_ok = !smp[i + 1].dense || std::abs(smp[i + 1].h) <= v;
        if (left_ok && right_ok) {
            const auto [lo, hi] = sm.cell(i);
            const auto [x, v] = golden_max([&](double t) { return std::abs(h_fn(spec, table, t)); }, lo, hi);
            k.k3 = std::max(k.k3, v);
        }
    }

    // two-argument suprema; the early argument ranges over [t0, t0+T)
    std::optional<std::pair<std::size_t, std::size_t>> arg_q, arg_k1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Sample& s = smp[i];
        for (std::size_t j = i; j < n; ++j) {
            if (!admissible(s, i, j)) continue;
            const double vq = q_value(smp[j], s);
            if (vq > k.k2) {
                k.k2 = vq;
                arg_q = {i, j};
            }
        }
        // K1: t <= s, s = smp[i] in the role of the outer variable
        for (std::size_t j = 0; j <= i; ++j) {
            if (!admissible(smp[j], j, i)) continue;
            const double v1 = k1_value(smp[j], s, end_e, ratio);
            if (v1 > k.k1) {
                k.k1 = v1;
                arg_k1 = {j, i};
            }
        }
    }
    if (options.refine && arg_q) {
        k.k2 = polish_pair(sm, arg_q->first, arg_q->second, k.k2,
                           [](const Sample& s, const Sample& r) { return q_value(r, s); });
    }
    if (options.refine && arg_k1) {
        k.k1 = polish_pair(sm, arg_k1->first, arg_k1->second, k.k1,
                           [&](const Sample& t, const Sample& s) { return k1_value(t, s, end_e, ratio); });
    }

    k.k1 *= options.safety;
    k.k2 *= options.safety;
    k.k3 *= options.safety;
    return k;
}

double exp_tail(double x, std::size_t n) {
    if (x <= 0.0) return 0.0;
    double term = 1.0;
    for (std::size_t j = 1; j <= n + 1; ++j) term *= x / static_cast<double>(j);
    double sum = 0.0;
    for (std::size_t j = n + 1; j < n + 2000; ++j) {
        sum += term;
        if (term <= 1e-18 * sum) break;
        term *= x / static_cast<double>(j + 1);
    }
    return sum;
}

ErrorBound error_bound(const SystemSpec& spec, const BoundConstants& k, std::size_t n) {
    if (spec.ts.is_discrete() && n >= spec.ts.scattered_count()) return {0.0, true};
    if (k.k2 == 0.0 || k.k3 == 0.0) return {0.0, true};
    const double x = k.k2 * k.k3 * spec.ts.period();
    return {k.k1 / k.k2 * exp_tail(x, n), false};
}

ErrorBound error_bound(const SystemSpec& spec, const PhaseTable& table, std::size_t n) {
    if (spec.ts.is_discrete() && n >= spec.ts.scattered_count()) return {0.0, true};
    return error_bound(spec, estimate_bounds(spec, table), n);
}

}  // namespace tsfloquet
