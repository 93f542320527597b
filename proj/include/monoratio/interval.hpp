#pragma once

#include <algorithm>
#include <cmath>

namespace monoratio {

/// Direction of a (not necessarily strictly) monotone function.
enum class Direction { Up, Down };

inline const char* to_string(Direction d) { return d == Direction::Up ? "Up" : "Down"; }

inline Direction flipped(Direction d) { return d == Direction::Up ? Direction::Down : Direction::Up; }

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval point(double x) { return {x, x, true, true}; }

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }

    /// Image under x -> -x.
    Interval mirrored() const { return {-hi, -lo, hi_closed, lo_closed}; }

    bool near(const Interval& o, double tol) const {
        return std::abs(lo - o.lo) <= tol && std::abs(hi - o.hi) <= tol;
    }

    bool operator==(const Interval&) const = default;
};

}  // namespace monoratio
