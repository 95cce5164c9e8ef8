#include "tsfloquet/delta_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tsfloquet {

namespace {

// Legendre P_n and its derivative by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
    }
    const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

LegendreRule build_rule() {
    constexpr std::size_t m = kPanelOrder;
    LegendreRule r{};
    for (std::size_t i = 0; i < m; ++i) {
        // Newton from the Chebyshev-like initial guess; roots come out descending
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(m, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [p, dp] = legendre(m, x);
        (void)p;
        r.nodes[m - 1 - i] = x;
        r.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    // Lagrange basis at the nodes via barycentric weights.
    std::array<double, m> bary{};
    for (std::size_t k = 0; k < m; ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != k) prod *= r.nodes[k] - r.nodes[j];
        }
        bary[k] = 1.0 / prod;
    }
    auto basis = [&](std::size_t k, double x) {
        double prod = bary[k];
        for (std::size_t j = 0; j < m; ++j) {
            if (j != k) prod *= x - r.nodes[j];
        }
        return prod;
    };
    // The m-point rule mapped onto [-1, x_i] integrates the degree m-1 basis exactly.
    for (std::size_t i = 0; i < m; ++i) {
        const double half = 0.5 * (r.nodes[i] + 1.0);
        const double mid = 0.5 * (r.nodes[i] - 1.0);
        for (std::size_t k = 0; k < m; ++k) {
            double acc = 0.0;
            for (std::size_t q = 0; q < m; ++q) acc += r.weights[q] * basis(k, mid + half * r.nodes[q]);
            r.integration[i][k] = half * acc;
        }
    }
    return r;
}

}  // namespace

const LegendreRule& legendre_rule() {
    static const LegendreRule rule = build_rule();
    return rule;
}

DeltaGrid::DeltaGrid(const TimeScale& ts, double a, double b, std::size_t panels_per_period) {
    const LegendreRule& rule = legendre_rule();
    for (const Piece& p : ts.pieces(a, b)) {
        if (p.kind == Piece::Kind::Scattered) {
            blocks_.push_back({nodes_.size(), true, 0.0});
            nodes_.push_back(p.lo);
            weights_.push_back(p.mu);
            mu_.push_back(p.mu);
            continue;
        }
        const double len = p.hi - p.lo;
        const auto share = static_cast<std::size_t>(
            std::ceil(static_cast<double>(panels_per_period) * len / ts.period() - 1e-9));
        const std::size_t panels = std::max<std::size_t>(2, share);
        const double width = len / static_cast<double>(panels);
        for (std::size_t k = 0; k < panels; ++k) {
            const double lo = p.lo + width * static_cast<double>(k);
            const double hw = 0.5 * width;
            blocks_.push_back({nodes_.size(), false, hw});
            for (std::size_t i = 0; i < kPanelOrder; ++i) {
                nodes_.push_back(lo + hw * (rule.nodes[i] + 1.0));
                weights_.push_back(hw * rule.weights[i]);
                mu_.push_back(0.0);
            }
        }
        dense_panels_ += panels;
    }
}

}  // namespace tsfloquet
