#pragma once

#include <iosfwd>
#include <limits>

namespace crnkit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Interval contained in [0, inf] with per-endpoint openness.
///
/// One type covers both the open rate/concentration intervals (allotments) and the
/// compact ones (temperings). A zero lower endpoint and an infinite upper endpoint are
/// always open.
class PositiveInterval {
public:
    /// Closed interval [lo, hi].
    static PositiveInterval closed(double lo, double hi);
    /// Open interval (lo, hi).
    static PositiveInterval open(double lo, double hi);
    /// The degenerate interval [v, v].
    static PositiveInterval point(double v);
    /// (0, inf).
    static PositiveInterval whole();

    /// Throws std::invalid_argument if the endpoints do not describe a nonempty
    /// subinterval of [0, inf] obeying the openness rules above.
    PositiveInterval(double lo, double hi, bool lo_open, bool hi_open);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool lo_open() const noexcept { return lo_open_; }
    bool hi_open() const noexcept { return hi_open_; }

    bool is_compact() const noexcept { return !lo_open_ && !hi_open_ && lo_ > 0 && hi_ < kInfinity; }
    bool bounded_away() const noexcept { return lo_ > 0 && hi_ < kInfinity; }

    bool contains(double v) const noexcept;
    /// Membership in the closure, with absolute slack `tol`.
    bool closure_contains(double v, double tol = 0.0) const noexcept;
    double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }

    friend bool operator==(const PositiveInterval&, const PositiveInterval&) = default;

private:
    double lo_;
    double hi_;
    bool lo_open_;
    bool hi_open_;
};

/// {i*j : i in I, j in J}. Products that overflow become an open infinite endpoint.
PositiveInterval interval_mul(const PositiveInterval& a, const PositiveInterval& b);

/// {i^c : i in I} for real c. Integer exponents n >= 1 are computed as the n-fold
/// product I*I^(n-1) so that they agree bitwise with repeated interval_mul.
PositiveInterval interval_pow(const PositiveInterval& base, double exponent);

/// Smallest interval containing both arguments; a shared endpoint is closed if either
/// side has it closed.
PositiveInterval interval_hull(const PositiveInterval& a, const PositiveInterval& b);

std::ostream& operator<<(std::ostream& os, const PositiveInterval& interval);

}  // namespace crnkit
