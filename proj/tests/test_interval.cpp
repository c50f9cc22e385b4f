#include <doctest.h>

#include <crnkit/interval.hpp>

#include <random>
#include <sstream>
#include <stdexcept>

using crnkit::kInfinity;
using crnkit::PositiveInterval;

TEST_CASE("construction enforces openness at 0 and inf") {
    CHECK_THROWS_AS(PositiveInterval(0.0, 1.0, false, false), std::invalid_argument);
    CHECK_THROWS_AS(PositiveInterval(1.0, kInfinity, false, false), std::invalid_argument);
    CHECK_THROWS_AS(PositiveInterval(2.0, 1.0, false, false), std::invalid_argument);
    CHECK_THROWS_AS(PositiveInterval(1.0, 1.0, true, false), std::invalid_argument);
    CHECK_THROWS_AS(PositiveInterval(-1.0, 1.0, true, true), std::invalid_argument);
    CHECK_NOTHROW(PositiveInterval::whole());
    CHECK(PositiveInterval::point(2.0).is_compact());
    CHECK_FALSE(PositiveInterval::open(0.0, 1.0).bounded_away());
}

TEST_CASE("membership respects open endpoints") {
    const auto k = PositiveInterval::open(1.0, 2.0);
    CHECK_FALSE(k.contains(1.0));
    CHECK(k.contains(1.5));
    CHECK(k.closure_contains(1.0));
    CHECK(k.closure_contains(2.0 + 1e-13, 1e-12));
    CHECK_FALSE(k.closure_contains(2.1));
}

TEST_CASE("interval product") {
    const auto a = interval_mul(PositiveInterval::closed(1, 2), PositiveInterval::point(3));
    CHECK(a == PositiveInterval::closed(3, 6));

    const auto i = PositiveInterval(0.5, 7.0, true, false);
    CHECK(interval_mul(i, PositiveInterval::point(1)) == i);

    const auto unit = PositiveInterval::open(0, 1);
    CHECK(interval_mul(unit, unit) == PositiveInterval::open(0, 1));

    const auto mixed = interval_mul(PositiveInterval(1, 2, true, false), PositiveInterval(3, 4, false, true));
    CHECK(mixed == PositiveInterval(3, 8, true, true));

    const auto big = interval_mul(PositiveInterval::closed(1, 1e200), PositiveInterval::closed(1, 1e200));
    CHECK(big.hi() == kInfinity);
    CHECK(big.hi_open());
}

TEST_CASE("interval powers") {
    CHECK(interval_pow(PositiveInterval::closed(1, 2), 2) == PositiveInterval::closed(1, 4));
    CHECK(interval_pow(PositiveInterval::open(0.3, 9), 0) == PositiveInterval::point(1));
    CHECK(interval_pow(PositiveInterval::closed(2, 4), -1) == PositiveInterval::closed(0.25, 0.5));

    const auto swapped = interval_pow(PositiveInterval(2, 4, true, false), -1);
    CHECK(swapped == PositiveInterval(0.25, 0.5, false, true));

    const auto from_zero = interval_pow(PositiveInterval::open(0, 1), -2);
    CHECK(from_zero.lo() == 1.0);
    CHECK(from_zero.hi() == kInfinity);
    CHECK(from_zero.hi_open());

    const auto half = interval_pow(PositiveInterval::closed(4, 9), 0.5);
    CHECK(half.lo() == doctest::Approx(2.0));
    CHECK(half.hi() == doctest::Approx(3.0));
}

TEST_CASE("integer powers agree bitwise with repeated products") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double lo = u(rng);
        const double hi = lo * (1.0 + u(rng));
        const auto base = PositiveInterval(lo, hi, trial % 2 == 0, trial % 3 == 0);
        auto product = base;
        for (int n = 1; n <= 6; ++n) {
            if (n > 1) product = interval_mul(product, base);
            const auto p = interval_pow(base, n);
            CHECK(p.lo() == product.lo());
            CHECK(p.hi() == product.hi());
            CHECK(p.lo_open() == product.lo_open());
            CHECK(p.hi_open() == product.hi_open());
        }
    }
}

TEST_CASE("hull keeps the closed side of a shared endpoint") {
    const auto h = interval_hull(PositiveInterval(1, 2, true, false), PositiveInterval(1, 3, false, true));
    CHECK(h == PositiveInterval(1, 3, false, true));
    const auto g = interval_hull(PositiveInterval::point(5), PositiveInterval::closed(1, 2));
    CHECK(g == PositiveInterval::closed(1, 5));
}

TEST_CASE("printing") {
    std::ostringstream ss;
    ss << PositiveInterval(1, kInfinity, false, true);
    CHECK(ss.str() == "[1, inf)");
}
