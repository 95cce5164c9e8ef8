#include "tsfloquet/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsfloquet/error.hpp"

namespace tsfloquet {

namespace {

constexpr double kPhiFloor = 1e-14;
constexpr double kJunctionTol = 1e-6;
constexpr std::size_t kDenseSamples = 512;

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

SystemSpec make_system(TimeScale ts, Expression p, Expression q, std::optional<Expression> qprime, double quad_tol) {
    if (!(quad_tol > 0.0)) throw Error(ErrorCode::InvalidSystem, "quadrature tolerance must be positive");
    for (const Piece& piece : ts.pieces()) {
        if (piece.kind == Piece::Kind::Scattered) {
            const double t = piece.lo;
            const double mu = piece.mu;
            const double qt = q(t);
            const double reg = 1.0 - mu * p(t) + mu * mu * qt;
            if (!(std::abs(reg) > 1e-12)) {
                throw Error(ErrorCode::NotRegressive, "1 - mu p + mu^2 q vanishes at t = " + fmt_double(t));
            }
            if (qt == 0.0) throw Error(ErrorCode::InvalidSystem, "q vanishes at scattered t = " + fmt_double(t));
            continue;
        }
        for (std::size_t k = 0; k < kDenseSamples; ++k) {
            const double t = piece.lo + (piece.hi - piece.lo) * static_cast<double>(k) / kDenseSamples;
            if (!(q(t) > 0.0)) {
                throw Error(ErrorCode::NegativeQOnDense, "q must be positive on dense points, q(" + fmt_double(t) +
                                                             ") = " + fmt_double(q(t)));
            }
        }
    }
    Expression qp = qprime ? *qprime : differentiate(q);
    return SystemSpec{std::move(ts), std::move(p), std::move(q), std::move(qp), quad_tol};
}

// ---------------------------------------------------------------------------

double PhaseTable::dense_phi(double t) const {
    const double qt = q_(t);
    if (!(qt > 0.0)) {
        throw Error(ErrorCode::NegativeQOnDense, "q(" + fmt_double(t) + ") = " + fmt_double(qt) + " on a dense point");
    }
    return std::sqrt(qt);
}

double PhaseTable::lookup(double t) const {
    auto it = std::lower_bound(scattered_.begin(), scattered_.end(), t,
                               [](const auto& entry, double v) { return entry.first < v; });
    if (it == scattered_.end() || it->first != t) {
        throw Error(ErrorCode::PointNotInTimeScale, "no phase value stored at t = " + fmt_double(t));
    }
    return it->second;
}

double PhaseTable::phi(double t) const {
    const double c = ts_.canonical(t);
    if (c == ts_.end()) return phi_end_;
    if (ts_.mu(c) > 0.0) return lookup(c);
    return dense_phi(c);
}

double PhaseTable::phi_sigma(double t) const {
    const double c = ts_.canonical(t);
    const double mu = ts_.mu(c);
    if (mu == 0.0) return phi(c);
    return phi(c + mu);
}

double PhaseTable::phi_delta(double t) const {
    const double c = ts_.canonical(t);
    const double mu = ts_.mu(c);
    if (mu > 0.0) return (phi(c + mu) - phi(c)) / mu;
    return qprime_(c) / (2.0 * dense_phi(c));
}

PhaseTable solve_phi(const SystemSpec& spec, double seed) {
    const TimeScale& ts = spec.ts;
    PhaseTable table(ts, spec.q, spec.qprime);
    const std::vector<double> points = ts.scattered_points_in(ts.t0(), ts.end());

    auto check = [](double t, double v) {
        if (!(std::abs(v) >= kPhiFloor) || !std::isfinite(v)) {
            throw Error(ErrorCode::PhiVanishes, "phi(" + fmt_double(t) + ") = " + fmt_double(v));
        }
        return v;
    };

    if (ts.is_discrete()) {
        table.scattered_.reserve(points.size());
        double cur = check(points.front(), seed);
        for (std::size_t i = 0; i < points.size(); ++i) {
            table.scattered_.emplace_back(points[i], cur);
            cur = check(i + 1 < points.size() ? points[i + 1] : ts.end(), spec.q(points[i]) / cur);
        }
        table.phi_end_ = cur;
        return table;
    }

    // Back-substitution: phi(tau) = q(tau) / phi(sigma(tau)), walking down from a
    // dense left endpoint (sqrt q) or from t0 + T (phi(t0)).
    double first_dense = ts.end();
    for (const Segment& seg : ts.segments()) {
        if (std::holds_alternative<Interval>(seg)) {
            first_dense = std::get<Interval>(seg).a;
            break;
        }
    }

    std::vector<double> values(points.size(), 0.0);
    auto index_of = [&](double t) {
        auto it = std::lower_bound(points.begin(), points.end(), t);
        return static_cast<std::size_t>(it - points.begin());
    };
    bool end_known = false;
    auto value_at = [&](double x) {
        x = ts.canonical(x);
        if (x == ts.end()) {
            if (!end_known) throw Error(ErrorCode::PhiVanishes, "phi(t0+T) needed before phi(t0) is known");
            return table.phi_end_;
        }
        if (ts.mu(x) == 0.0) return table.dense_phi(x);
        const std::size_t j = index_of(x);
        return values[j];
    };
    auto back_substitute = [&](auto pred) {
        for (std::size_t i = points.size(); i-- > 0;) {
            const double tau = points[i];
            if (!pred(tau)) continue;
            values[i] = check(tau, spec.q(tau) / value_at(tau + ts.mu(tau)));
        }
    };

    back_substitute([&](double tau) { return tau < first_dense; });
    table.phi_end_ = ts.mu(ts.t0()) > 0.0 ? values[0] : table.dense_phi(ts.t0());
    end_known = true;
    back_substitute([&](double tau) { return tau > first_dense; });

    table.scattered_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) table.scattered_.emplace_back(points[i], values[i]);

    // Right ends of dense runs where the stored value disagrees with the limit of sqrt(q).
    for (const Segment& seg : ts.segments()) {
        const auto* iv = std::get_if<Interval>(&seg);
        if (iv == nullptr) continue;
        const double b = iv->b;
        if (b != ts.end() && ts.mu(b) == 0.0) continue;
        // left limit of q at b: q may take a different value at the scattered point itself
        const double delta = 1e-7 * std::max(1.0, std::abs(b));
        const double qb = spec.q(b - delta) + delta * spec.qprime(b - delta);
        if (!(qb > 0.0)) continue;
        const double stored = table.phi(b);
        if (std::abs(stored - std::sqrt(qb)) > kJunctionTol) {
            table.warnings_.push_back("phi is discontinuous at t = " + fmt_double(b) + ": sqrt(q) = " +
                                      fmt_double(std::sqrt(qb)) + ", back-substituted value = " + fmt_double(stored));
        }
    }
    return table;
}

double h_fn(const SystemSpec& spec, const PhaseTable& table, double t) {
    return -spec.p(t) - table.phi_delta(t) / table.phi(t);
}

double table_cos(const SystemSpec& spec, const PhaseTable& table, double t, double s) {
    return cos_phi(spec.ts, [&](double x) { return table.phi(x); }, t, s, spec.quad_tol);
}

double table_sin(const SystemSpec& spec, const PhaseTable& table, double t, double s) {
    return sin_phi(spec.ts, [&](double x) { return table.phi(x); }, t, s, spec.quad_tol);
}

double kernel_P(const SystemSpec& spec, const PhaseTable& table, double t, double s) {
    const double ss = spec.ts.canonical(spec.ts.sigma(s));
    return table_sin(spec, table, t, ss) / table.phi(ss);
}

double kernel_Q(const SystemSpec& spec, const PhaseTable& table, double t, double s) {
    const double ss = spec.ts.canonical(spec.ts.sigma(s));
    return table.phi(t) * table_cos(spec, table, t, ss) / table.phi(ss);
}

double compute_B(const SystemSpec& spec) {
    const TimeScale& ts = spec.ts;
    auto g = [&](double t) { return -spec.p(t) + ts.mu(t) * spec.q(t); };
    return ts_exponential(ts, g, ts.end(), ts.t0(), spec.quad_tol).real();
}

}  // namespace tsfloquet
