#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace tsfloquet {

/// Isolated point of a time scale.
struct Point {
    double x;
};

/// Closed real interval [a, b] with a < b.
struct Interval {
    double a;
    double b;
};

using Segment = std::variant<Point, Interval>;

[[nodiscard]] double left_of(const Segment& s) noexcept;
[[nodiscard]] double right_of(const Segment& s) noexcept;

/// Unvalidated description of one period [t0, t0 + period] of a periodic time scale.
struct PeriodicTimeScale {
    double t0 = 0.0;
    double period = 0.0;
    std::vector<Segment> segments;
};

/// Membership tolerance used throughout: 1e-12 * max(1, |t|).
[[nodiscard]] double membership_tol(double t) noexcept;

/// One piece of the decomposition of [a, b) into dense runs and right-scattered points.
/// Dense: the half-open run [lo, hi). Scattered: the point lo with graininess mu (hi = lo + mu).
struct Piece {
    enum class Kind { Dense, Scattered };
    Kind kind;
    double lo;
    double hi;
    double mu;
};

/// A validated, immutable period of a T-periodic time scale.
///
/// Segments are sorted, disjoint, and cover t0 and t0 + T. Coordinates within the
/// membership tolerance of t0 or t0 + T are snapped onto them. Queries outside
/// [t0, t0 + T] are errors: the analysis never leaves one period.
class TimeScale {
public:
    /// Throws Error{NonpositivePeriod, DegenerateInterval, OutOfPeriod,
    /// OverlappingSegments, EndpointNotCovered}.
    static TimeScale validate(PeriodicTimeScale spec);

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] double end() const noexcept { return end_; }
    [[nodiscard]] std::span<const Segment> segments() const noexcept { return segments_; }

    [[nodiscard]] bool contains(double t) const noexcept;

    /// Graininess. Throws PointNotInTimeScale.
    [[nodiscard]] double mu(double t) const;
    [[nodiscard]] double sigma(double t) const { return t + mu(t); }
    [[nodiscard]] bool is_right_scattered(double t) const { return mu(t) > 0.0; }

    /// Right-scattered points t with a <= t < b, ascending.
    [[nodiscard]] std::vector<double> scattered_points_in(double a, double b) const;

    /// Decomposition of [a, b)_T in ascending order. a, b must belong to the scale.
    [[nodiscard]] std::vector<Piece> pieces(double a, double b) const;
    [[nodiscard]] std::vector<Piece> pieces() const { return pieces(t0_, end_); }

    /// Number of right-scattered points in [t0, t0 + T).
    [[nodiscard]] std::size_t scattered_count() const;

    [[nodiscard]] bool is_discrete() const noexcept { return interval_count_ == 0; }
    /// One interval spanning the whole period, i.e. one period of R.
    [[nodiscard]] bool is_continuous() const noexcept;
    [[nodiscard]] std::size_t interval_count() const noexcept { return interval_count_; }

    /// Canonical coordinate of a scale point (snaps onto segment endpoints).
    [[nodiscard]] double canonical(double t) const;

private:
    TimeScale() = default;
    [[nodiscard]] std::size_t locate(double t) const;
    [[nodiscard]] double mu_at_segment_end(std::size_t idx) const noexcept;

    double t0_ = 0.0;
    double period_ = 0.0;
    double end_ = 0.0;
    double mu_t0_ = 0.0;
    std::size_t interval_count_ = 0;
    std::vector<Segment> segments_;
};

}  // namespace tsfloquet
