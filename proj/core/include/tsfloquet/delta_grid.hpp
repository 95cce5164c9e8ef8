#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tsfloquet/timescale.hpp"

namespace tsfloquet {

/// Nodes per dense panel of a DeltaGrid.
inline constexpr std::size_t kPanelOrder = 16;

/// Gauss-Legendre rule on [-1, 1] with kPanelOrder nodes (ascending).
struct LegendreRule {
    std::array<double, kPanelOrder> nodes;
    std::array<double, kPanelOrder> weights;
    /// integration[i][k] = integral from -1 to nodes[i] of the k-th Lagrange basis polynomial.
    std::array<std::array<double, kPanelOrder>, kPanelOrder> integration;
};

[[nodiscard]] const LegendreRule& legendre_rule();

/// Discretisation of [a, b)_T for nested delta integration.
///
/// Right-scattered points are nodes carrying their graininess as weight; each
/// dense run is split into equal panels of kPanelOrder Gauss-Legendre nodes.
/// Cumulative integrals are available at every node, so an integrand that is
/// itself a running integral can be fed back in level after level.
class DeltaGrid {
public:
    /// `panels_per_period`: panels for a dense run as long as the whole period
    /// (shorter runs get a proportional share, at least two).
    DeltaGrid(const TimeScale& ts, double a, double b, std::size_t panels_per_period);
    DeltaGrid(const TimeScale& ts, std::size_t panels_per_period)
        : DeltaGrid(ts, ts.t0(), ts.end(), panels_per_period) {}

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    /// Quadrature weight of each node (graininess for scattered nodes).
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    /// Graininess at each node (0 on dense runs).
    [[nodiscard]] std::span<const double> mu() const noexcept { return mu_; }
    [[nodiscard]] bool scattered(std::size_t i) const noexcept { return mu_[i] > 0.0; }
    [[nodiscard]] std::size_t dense_panels() const noexcept { return dense_panels_; }

    /// out[i] = integral over [a, t_i) of f; a scattered node's own mass is excluded.
    template <class V>
    std::vector<V> cumulative(std::span<const V> f, V* total = nullptr) const;

    template <class V>
    [[nodiscard]] V integrate(std::span<const V> f) const {
        V sum{};
        for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * weights_[i];
        return sum;
    }

private:
    struct Block {
        std::size_t first;
        bool scattered;
        double half_width;
    };

    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> mu_;
    std::vector<Block> blocks_;
    std::size_t dense_panels_ = 0;
};

template <class V>
std::vector<V> DeltaGrid::cumulative(std::span<const V> f, V* total) const {
    const LegendreRule& rule = legendre_rule();
    std::vector<V> out(f.size());
    V base{};
    for (const Block& blk : blocks_) {
        if (blk.scattered) {
            out[blk.first] = base;
            base += f[blk.first] * mu_[blk.first];
            continue;
        }
        const V* fp = f.data() + blk.first;
        V panel_sum{};
        for (std::size_t i = 0; i < kPanelOrder; ++i) {
            V acc{};
            for (std::size_t k = 0; k < kPanelOrder; ++k) acc += fp[k] * rule.integration[i][k];
            out[blk.first + i] = base + acc * blk.half_width;
            panel_sum += fp[i] * rule.weights[i];
        }
        base += panel_sum * blk.half_width;
    }
    if (total != nullptr) *total = base;
    return out;
}

}  // namespace tsfloquet
