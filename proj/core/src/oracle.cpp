#include "tsfloquet/oracle.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "tsfloquet/bounds.hpp"
#include "tsfloquet/error.hpp"
#include "tsfloquet/series.hpp"

namespace tsfloquet {

namespace {

using State = std::array<double, 4>;  // row-major Y

void propagate_dense(const SystemSpec& spec, State& y, double a, double b, double rk_tol) {
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(rk_tol, rk_tol, odeint::runge_kutta_dopri5<State>());
    const auto rhs = [&](const State& x, State& dx, double t) {
        const double p = spec.p(t);
        const double q = spec.q(t);
        // S Y with S = [[0, 1], [-q, -p]]
        dx[0] = x[2];
        dx[1] = x[3];
        dx[2] = -q * x[0] - p * x[2];
        dx[3] = -q * x[1] - p * x[3];
    };
    double t = a;
    double dt = (b - a) / 64.0;
    const double min_dt = 1e-14 * std::max(1.0, std::abs(b));
    while (t < b) {
        if (t + dt > b) dt = b - t;
        if (dt < min_dt) {
            if (b - t < min_dt) break;
            throw Error(ErrorCode::StepSizeUnderflow, "step size underflow at t = " + std::to_string(t));
        }
        if (stepper.try_step(rhs, y, t, dt) == odeint::fail) continue;
    }
}

}  // namespace

Matrix2 monodromy(const SystemSpec& spec, double rk_tol) {
    State y{1.0, 0.0, 0.0, 1.0};
    for (const Piece& piece : spec.ts.pieces()) {
        if (piece.kind == Piece::Kind::Dense) {
            propagate_dense(spec, y, piece.lo, piece.hi, rk_tol);
            continue;
        }
        const double mu = piece.mu;
        const double p = spec.p(piece.lo);
        const double q = spec.q(piece.lo);
        const Matrix2 jump{1.0, mu, -mu * q, 1.0 - mu * p};
        const Matrix2 next = jump * Matrix2{y[0], y[1], y[2], y[3]};
        y = {next.a11, next.a12, next.a21, next.a22};
    }
    return {y[0], y[1], y[2], y[3]};
}

CheckResult cross_check(const SystemSpec& spec, std::size_t n, double tol) {
    const PhaseTable table = solve_phi(spec);
    const Matrix2 m = monodromy(spec);
    CheckResult r;
    r.a_oracle = m.trace();
    r.b_oracle = m.det();
    r.a_series = a_partial(spec, table, n);
    r.b_series = compute_B(spec);
    r.bound = error_bound(spec, table, n).value;
    r.delta_a = r.a_oracle - r.a_series;
    r.delta_b = r.b_oracle - r.b_series;
    if (std::abs(r.delta_b) > tol || std::abs(r.delta_a) > r.bound + tol) {
        throw Error(ErrorCode::CheckFailed, "oracle A = " + std::to_string(r.a_oracle) + ", series A(" +
                                                std::to_string(n) + ") = " + std::to_string(r.a_series) +
                                                " (bound " + std::to_string(r.bound) + "); oracle B = " +
                                                std::to_string(r.b_oracle) + ", B = " + std::to_string(r.b_series));
    }
    return r;
}

}  // namespace tsfloquet
