#include "tsfloquet/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsfloquet/error.hpp"

namespace tsfloquet {

namespace {

std::string describe(double t) {
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

double snap(double x, double t0, double end) {
    if (std::abs(x - t0) <= membership_tol(t0)) return t0;
    if (std::abs(x - end) <= membership_tol(end)) return end;
    return x;
}

}  // namespace

double left_of(const Segment& s) noexcept {
    return std::holds_alternative<Point>(s) ? std::get<Point>(s).x : std::get<Interval>(s).a;
}

double right_of(const Segment& s) noexcept {
    return std::holds_alternative<Point>(s) ? std::get<Point>(s).x : std::get<Interval>(s).b;
}

double membership_tol(double t) noexcept { return 1e-12 * std::max(1.0, std::abs(t)); }

TimeScale TimeScale::validate(PeriodicTimeScale spec) {
    if (!std::isfinite(spec.period) || !(spec.period > 0.0)) {
        throw Error(ErrorCode::NonpositivePeriod, "period must be positive, got " + describe(spec.period));
    }
    if (!std::isfinite(spec.t0)) {
        throw Error(ErrorCode::EndpointNotCovered, "t0 must be finite");
    }

    TimeScale ts;
    ts.t0_ = spec.t0;
    ts.period_ = spec.period;
    ts.end_ = spec.t0 + spec.period;

    for (auto& seg : spec.segments) {
        if (auto* iv = std::get_if<Interval>(&seg)) {
            if (!std::isfinite(iv->a) || !std::isfinite(iv->b) ||
                iv->b - iv->a <= membership_tol(std::max(std::abs(iv->a), std::abs(iv->b)))) {
                throw Error(ErrorCode::DegenerateInterval,
                            "interval [" + describe(iv->a) + ", " + describe(iv->b) + "] needs a < b");
            }
            iv->a = snap(iv->a, ts.t0_, ts.end_);
            iv->b = snap(iv->b, ts.t0_, ts.end_);
        } else {
            auto& p = std::get<Point>(seg);
            if (!std::isfinite(p.x)) throw Error(ErrorCode::OutOfPeriod, "non-finite point");
            p.x = snap(p.x, ts.t0_, ts.end_);
        }
        if (left_of(seg) < ts.t0_ || right_of(seg) > ts.end_) {
            throw Error(ErrorCode::OutOfPeriod, "segment [" + describe(left_of(seg)) + ", " +
                                                    describe(right_of(seg)) + "] leaves [t0, t0+T]");
        }
    }

    std::stable_sort(spec.segments.begin(), spec.segments.end(),
                     [](const Segment& l, const Segment& r) { return left_of(l) < left_of(r); });

    for (std::size_t i = 1; i < spec.segments.size(); ++i) {
        const double prev = right_of(spec.segments[i - 1]);
        const double next = left_of(spec.segments[i]);
        if (prev >= next - membership_tol(next)) {
            throw Error(ErrorCode::OverlappingSegments,
                        "segments meet or overlap near t = " + describe(next));
        }
    }

    if (spec.segments.empty() || left_of(spec.segments.front()) != ts.t0_) {
        throw Error(ErrorCode::EndpointNotCovered, "t0 = " + describe(ts.t0_) + " is not in the time scale");
    }
    if (right_of(spec.segments.back()) != ts.end_) {
        throw Error(ErrorCode::EndpointNotCovered,
                    "t0 + T = " + describe(ts.end_) + " is not in the time scale");
    }

    ts.segments_ = std::move(spec.segments);
    ts.interval_count_ = static_cast<std::size_t>(std::count_if(
        ts.segments_.begin(), ts.segments_.end(),
        [](const Segment& s) { return std::holds_alternative<Interval>(s); }));

    // mu(t0): a leading interval makes t0 dense, a leading point jumps to the next segment.
    ts.mu_t0_ = std::holds_alternative<Interval>(ts.segments_.front())
                    ? 0.0
                    : left_of(ts.segments_[1]) - ts.t0_;
    return ts;
}

bool TimeScale::contains(double t) const noexcept {
    try {
        (void)locate(t);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::size_t TimeScale::locate(double t) const {
    const double tol = membership_tol(t);
    // first segment whose right end is >= t - tol
    auto it = std::lower_bound(segments_.begin(), segments_.end(), t - tol,
                               [](const Segment& s, double v) { return right_of(s) < v; });
    if (it != segments_.end() && left_of(*it) - tol <= t) {
        return static_cast<std::size_t>(it - segments_.begin());
    }
    throw Error(ErrorCode::PointNotInTimeScale, "t = " + describe(t) + " is not in the time scale period");
}

double TimeScale::mu_at_segment_end(std::size_t idx) const noexcept {
    if (idx + 1 == segments_.size()) return mu_t0_;
    return left_of(segments_[idx + 1]) - right_of(segments_[idx]);
}

double TimeScale::mu(double t) const {
    const std::size_t idx = locate(t);
    const Segment& seg = segments_[idx];
    if (std::holds_alternative<Interval>(seg)) {
        const double b = std::get<Interval>(seg).b;
        if (t < b - membership_tol(b)) return 0.0;
    }
    return mu_at_segment_end(idx);
}

double TimeScale::canonical(double t) const {
    const std::size_t idx = locate(t);
    const Segment& seg = segments_[idx];
    const double lo = left_of(seg);
    const double hi = right_of(seg);
    if (std::abs(t - lo) <= membership_tol(lo)) return lo;
    if (std::abs(t - hi) <= membership_tol(hi)) return hi;
    return t;
}

std::vector<double> TimeScale::scattered_points_in(double a, double b) const {
    std::vector<double> out;
    for (const Piece& p : pieces(a, b)) {
        if (p.kind == Piece::Kind::Scattered) out.push_back(p.lo);
    }
    return out;
}

std::vector<Piece> TimeScale::pieces(double a, double b) const {
    a = canonical(a);
    b = canonical(b);
    std::vector<Piece> out;
    if (!(a < b)) return out;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& seg = segments_[i];
        const double hi = right_of(seg);
        if (hi < a) continue;
        if (left_of(seg) >= b) break;
        if (const auto* iv = std::get_if<Interval>(&seg)) {
            const double lo = std::max(a, iv->a);
            const double top = std::min(b, iv->b);
            if (lo < top) out.push_back({Piece::Kind::Dense, lo, top, 0.0});
        }
        // right end (or the point itself) is scattered when a gap follows
        if (hi >= a && hi < b) {
            const double m = mu_at_segment_end(i);
            if (m > 0.0) out.push_back({Piece::Kind::Scattered, hi, hi + m, m});
        }
    }
    return out;
}

std::size_t TimeScale::scattered_count() const { return scattered_points_in(t0_, end_).size(); }

bool TimeScale::is_continuous() const noexcept {
    return segments_.size() == 1 && std::holds_alternative<Interval>(segments_.front());
}

}  // namespace tsfloquet
