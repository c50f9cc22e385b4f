#include "crnkit/interval.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crnkit {

namespace {

// Builds a result interval from computed endpoints. Rounding can collapse a
// nondegenerate interval onto a single point; such results are kept as closed points
// rather than rejected as empty.
PositiveInterval make_result(double lo, double hi, bool lo_open, bool hi_open) {
    if (!(lo >= 0.0)) lo = 0.0;
    if (lo == 0.0) lo_open = true;
    if (hi == kInfinity) hi_open = true;
    if (lo == hi && (lo_open || hi_open)) {
        if (lo == 0.0 || hi == kInfinity) {
            throw std::domain_error("interval arithmetic produced an empty interval");
        }
        lo_open = hi_open = false;
    }
    return PositiveInterval(lo, hi, lo_open, hi_open);
}

bool is_small_positive_integer(double c) {
    return c >= 1.0 && c <= 1024.0 && std::floor(c) == c;
}

}  // namespace

PositiveInterval::PositiveInterval(double lo, double hi, bool lo_open, bool hi_open)
    : lo_(lo), hi_(hi), lo_open_(lo_open), hi_open_(hi_open) {
    if (std::isnan(lo) || std::isnan(hi)) throw std::invalid_argument("interval endpoint is NaN");
    if (lo < 0.0) throw std::invalid_argument("interval lower endpoint is negative");
    if (lo == kInfinity) throw std::invalid_argument("interval lower endpoint is infinite");
    if (lo > hi) throw std::invalid_argument("interval has lo > hi");
    if (lo == 0.0 && !lo_open) throw std::invalid_argument("interval lower endpoint 0 must be open");
    if (hi == kInfinity && !hi_open) throw std::invalid_argument("infinite upper endpoint must be open");
    if (lo == hi && (lo_open || hi_open)) throw std::invalid_argument("interval is empty");
}

PositiveInterval PositiveInterval::closed(double lo, double hi) { return {lo, hi, false, false}; }
PositiveInterval PositiveInterval::open(double lo, double hi) { return {lo, hi, true, true}; }
PositiveInterval PositiveInterval::point(double v) { return {v, v, false, false}; }
PositiveInterval PositiveInterval::whole() { return {0.0, kInfinity, true, true}; }

bool PositiveInterval::contains(double v) const noexcept {
    const bool above = lo_open_ ? v > lo_ : v >= lo_;
    const bool below = hi_open_ ? v < hi_ : v <= hi_;
    return above && below;
}

bool PositiveInterval::closure_contains(double v, double tol) const noexcept {
    return v >= lo_ - tol && v <= hi_ + tol;
}

PositiveInterval interval_mul(const PositiveInterval& a, const PositiveInterval& b) {
    return make_result(a.lo() * b.lo(), a.hi() * b.hi(), a.lo_open() || b.lo_open(),
                       a.hi_open() || b.hi_open());
}

PositiveInterval interval_pow(const PositiveInterval& base, double exponent) {
    if (!std::isfinite(exponent)) throw std::invalid_argument("interval exponent must be finite");
    if (exponent == 0.0) return PositiveInterval::point(1.0);

    if (is_small_positive_integer(exponent)) {
        const auto n = static_cast<int>(exponent);
        PositiveInterval result = base;
        for (int i = 1; i < n; ++i) result = interval_mul(base, result);
        return result;
    }
    if (exponent > 0.0) {
        return make_result(std::pow(base.lo(), exponent), std::pow(base.hi(), exponent),
                           base.lo_open(), base.hi_open());
    }
    // x -> x^c is decreasing for c < 0, so the endpoints swap roles.
    const double lo = base.hi() == kInfinity ? 0.0 : std::pow(base.hi(), exponent);
    const double hi = base.lo() == 0.0 ? kInfinity : std::pow(base.lo(), exponent);
    return make_result(lo, hi, base.hi_open(), base.lo_open());
}

PositiveInterval interval_hull(const PositiveInterval& a, const PositiveInterval& b) {
    double lo = a.lo();
    bool lo_open = a.lo_open();
    if (b.lo() < lo || (b.lo() == lo && !b.lo_open())) {
        lo_open = b.lo() == lo ? (lo_open && b.lo_open()) : b.lo_open();
        lo = b.lo();
    }
    double hi = a.hi();
    bool hi_open = a.hi_open();
    if (b.hi() > hi || (b.hi() == hi && !b.hi_open())) {
        hi_open = b.hi() == hi ? (hi_open && b.hi_open()) : b.hi_open();
        hi = b.hi();
    }
    return {lo, hi, lo_open, hi_open};
}

std::ostream& operator<<(std::ostream& os, const PositiveInterval& interval) {
    os << (interval.lo_open() ? '(' : '[') << interval.lo() << ", ";
    if (interval.hi() == kInfinity) {
        os << "inf";
    } else {
        os << interval.hi();
    }
    return os << (interval.hi_open() ? ')' : ']');
}

}  // namespace crnkit
