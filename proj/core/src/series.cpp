#include "tsfloquet/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tsfloquet/delta_grid.hpp"
#include "tsfloquet/error.hpp"

namespace tsfloquet {

namespace {

constexpr Complex kI{0.0, 1.0};

/// Values of the phase exponential and coefficients at the grid nodes.
struct NodeData {
    std::vector<double> phi;
    std::vector<double> h;
    std::vector<Complex> e;        // e_{i phi}(t_i, t0)
    std::vector<Complex> weight;   // h / (phi^sigma e^sigma)
    Complex e_end;                 // e_{i phi}(t0+T, t0)
};

NodeData sample(const SystemSpec& spec, const PhaseTable& table, const DeltaGrid& grid) {
    const std::size_t n = grid.size();
    const auto t = grid.nodes();
    const auto mu = grid.mu();
    NodeData d;
    d.phi.resize(n);
    d.h.resize(n);
    d.e.resize(n);
    d.weight.resize(n);

    std::vector<double> dense_phi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d.phi[i] = table.phi(t[i]);
        d.h[i] = h_fn(spec, table, t[i]);
        if (mu[i] == 0.0) dense_phi[i] = d.phi[i];
    }
    double theta_end = 0.0;
    const std::vector<double> theta = grid.cumulative<double>(dense_phi, &theta_end);

    Complex product{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        d.e[i] = product * std::exp(kI * theta[i]);
        if (mu[i] > 0.0) {
            const Complex jump = 1.0 + kI * mu[i] * d.phi[i];
            product *= jump;
            d.weight[i] = d.h[i] / (table.phi_sigma(t[i]) * d.e[i] * jump);
        } else {
            d.weight[i] = d.h[i] / (d.phi[i] * d.e[i]);
        }
    }
    d.e_end = product * std::exp(kI * theta_end);
    return d;
}

std::vector<double> terms_on_grid(const SystemSpec& spec, const PhaseTable& table, const DeltaGrid& grid,
                                  std::size_t n) {
    const NodeData d = sample(spec, table, grid);
    const std::size_t size = grid.size();
    const double phi0 = table.phi_t0();
    const double phi_end = table.phi_end();
    const double ratio = phi_end / phi0;

    std::vector<double> out;
    out.reserve(n + 1);
    out.push_back((1.0 + ratio) * d.e_end.real());
    if (n == 0) return out;

    std::vector<double> g(size), hh(size);
    for (std::size_t i = 0; i < size; ++i) {
        g[i] = d.phi[i] * d.e[i].imag();
        hh[i] = d.phi[i] * d.e[i].real();
    }
    std::vector<double> integrand(size);
    std::vector<Complex> wg(size), wh(size);
    for (std::size_t level = 1; level <= n; ++level) {
        for (std::size_t i = 0; i < size; ++i) {
            const Complex k = d.e_end * d.weight[i];
            integrand[i] = -k.imag() * g[i] + ratio * k.real() * hh[i];
        }
        out.push_back(grid.integrate<double>(integrand));
        if (level == n) break;
        for (std::size_t i = 0; i < size; ++i) {
            wg[i] = d.weight[i] * g[i];
            wh[i] = d.weight[i] * hh[i];
        }
        const std::vector<Complex> cg = grid.cumulative<Complex>(wg);
        const std::vector<Complex> ch = grid.cumulative<Complex>(wh);
        for (std::size_t i = 0; i < size; ++i) {
            g[i] = d.phi[i] * (d.e[i] * cg[i]).real();
            hh[i] = d.phi[i] * (d.e[i] * ch[i]).real();
        }
    }
    return out;
}

double max_partial_change(const std::vector<double>& a, const std::vector<double>& b, double* scale) {
    double pa = 0.0;
    double pb = 0.0;
    double worst = 0.0;
    *scale = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa += a[i];
        pb += b[i];
        worst = std::max(worst, std::abs(pa - pb));
        *scale = std::max(*scale, std::abs(pb));
    }
    return worst;
}

/// Runs `compute(panels)` on doubling grids until two successive results agree.
template <class Compute>
std::vector<double> refine(const SystemSpec& spec, const SeriesOptions& options, Compute&& compute) {
    if (spec.ts.is_discrete()) return compute(std::size_t{1});
    std::size_t panels = options.initial_panels;
    std::vector<double> coarse = compute(panels);
    while (panels * 2 <= options.max_panels) {
        panels *= 2;
        std::vector<double> fine = compute(panels);
        double scale = 1.0;
        const double change = max_partial_change(coarse, fine, &scale);
        if (change <= spec.quad_tol * scale) return fine;
        coarse = std::move(fine);
    }
    throw Error(ErrorCode::QuadratureNonConvergence,
                "nested integrals did not settle to " + std::to_string(spec.quad_tol) + " within " +
                    std::to_string(options.max_panels) + " panels per period");
}

}  // namespace

std::vector<double> a_terms(const SystemSpec& spec, const PhaseTable& table, std::size_t n,
                            const SeriesOptions& options) {
    if (!spec.ts.is_discrete() && n > kMaxDenseDepth) {
        throw Error(ErrorCode::DepthBudgetExceeded, "n = " + std::to_string(n) + " exceeds " +
                                                        std::to_string(kMaxDenseDepth) +
                                                        " on a scale with a dense part");
    }
    return refine(spec, options, [&](std::size_t panels) {
        const DeltaGrid grid(spec.ts, panels);
        return terms_on_grid(spec, table, grid, n);
    });
}

double a_term(const SystemSpec& spec, const PhaseTable& table, std::size_t n) {
    return a_terms(spec, table, n).back();
}

double a_partial(const SystemSpec& spec, const PhaseTable& table, std::size_t n) {
    const auto terms = a_terms(spec, table, n);
    return std::accumulate(terms.begin(), terms.end(), 0.0);
}

double a_term_by_enumeration(const SystemSpec& spec, const PhaseTable& table, std::size_t n) {
    const TimeScale& ts = spec.ts;
    if (!ts.is_discrete()) {
        throw Error(ErrorCode::InvalidSystem, "tuple enumeration needs a purely discrete time scale");
    }
    const double t0 = ts.t0();
    const double end = ts.end();
    const double phi0 = table.phi_t0();
    if (n == 0) return (1.0 + table.phi_end() / phi0) * table_cos(spec, table, end, t0);

    // descending, so that index order matches t_1 > t_2 > ... > t_n
    std::vector<double> pts = ts.scattered_points_in(t0, end);
    std::reverse(pts.begin(), pts.end());
    const std::size_t k = pts.size();
    if (n > k) return 0.0;

    std::vector<double> mu(k), h(k), phi(k), c(k), s(k), p_end(k), q_end(k);
    std::vector<std::vector<double>> q(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        mu[i] = ts.mu(pts[i]);
        h[i] = h_fn(spec, table, pts[i]);
        phi[i] = table.phi(pts[i]);
        c[i] = table_cos(spec, table, pts[i], t0);
        s[i] = table_sin(spec, table, pts[i], t0);
        p_end[i] = kernel_P(spec, table, end, pts[i]);
        q_end[i] = kernel_Q(spec, table, end, pts[i]);
        for (std::size_t j = i + 1; j < k; ++j) q[i][j] = kernel_Q(spec, table, pts[i], pts[j]);
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    double sum = 0.0;
    for (;;) {
        const std::size_t first = idx.front();
        const std::size_t last = idx.back();
        double value = (c[last] * q_end[first] / phi0 - s[last] * p_end[first]) * phi[last] * h[first];
        double weight = mu[first];
        for (std::size_t m = 1; m < n; ++m) {
            value *= q[idx[m - 1]][idx[m]] * h[idx[m]];
            weight *= mu[idx[m]];
        }
        sum += weight * value;

        // next combination in lexicographic order
        std::size_t pos = n;
        while (pos-- > 0) {
            if (idx[pos] < k - n + pos) break;
            if (pos == 0) return sum;
        }
        ++idx[pos];
        for (std::size_t m = pos + 1; m < n; ++m) idx[m] = idx[m - 1] + 1;
    }
}

double shi_continuous_a(const SystemSpec& spec, const PhaseTable& table, std::size_t terms,
                        const SeriesOptions& options) {
    const TimeScale& ts = spec.ts;
    if (!ts.is_continuous()) {
        throw Error(ErrorCode::NotContinuousScale, "the continuous form needs a single dense run spanning the period");
    }
    const double b = compute_B(spec);
    if (std::abs(b - 1.0) > 1e-9) {
        throw Error(ErrorCode::BNotOne, "the continuous form needs B = 1, got B = " + std::to_string(b));
    }
    if (2 * terms > kMaxDenseDepth) {
        throw Error(ErrorCode::DepthBudgetExceeded, std::to_string(2 * terms) + "-fold integral exceeds the depth budget");
    }

    auto compute = [&](std::size_t panels) {
        const DeltaGrid grid(ts, panels);
        const std::size_t size = grid.size();
        std::vector<double> phi(size), h(size);
        for (std::size_t i = 0; i < size; ++i) {
            phi[i] = table.phi(grid.nodes()[i]);
            h[i] = h_fn(spec, table, grid.nodes()[i]);
        }
        double total_phase = 0.0;
        const std::vector<double> phase = grid.cumulative<double>(phi, &total_phase);
        const Complex rotation = std::exp(kI * total_phase);

        std::vector<double> out{2.0 * std::cos(total_phase)};
        std::vector<Complex> acc(size), integrand(size);
        for (std::size_t m = 1; m <= terms; ++m) {
            // innermost variable t_{2m} carries e^{+2iΦ}, then signs alternate outwards
            std::fill(acc.begin(), acc.end(), Complex{1.0, 0.0});
            Complex total{};
            for (std::size_t level = 1; level <= 2 * m; ++level) {
                const double sign = level % 2 == 1 ? 2.0 : -2.0;
                for (std::size_t i = 0; i < size; ++i) integrand[i] = h[i] * std::exp(kI * (sign * phase[i])) * acc[i];
                acc = grid.cumulative<Complex>(integrand, &total);
            }
            out.push_back((rotation * total).real() / std::ldexp(1.0, static_cast<int>(2 * m - 1)));
        }
        return out;
    };
    const auto parts = refine(spec, options, compute);
    return std::accumulate(parts.begin(), parts.end(), 0.0);
}

}  // namespace tsfloquet
