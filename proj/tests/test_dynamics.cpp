#include <doctest.h>

#include <crnkit/dynamics.hpp>
#include <crnkit/stoichiometry.hpp>

#include <cmath>

using namespace crnkit;

namespace {

const SpeciesSet kA({"A"});
const SpeciesSet kAB({"A", "B"});

Complex a1(double a) { return Complex({a}); }
Complex c(double a, double b) { return Complex({a, b}); }

SubconfinedSystem one_species(std::vector<Reaction> rs, std::vector<PositiveInterval> k, double x0 = 1.0) {
    auto net = ReactionNetwork::from_reactions(kA, std::move(rs));
    return SubconfinedSystem::confined(net, Tempering(net, std::move(k)), {x0});
}

SubconfinedSystem lv_reversed(double k = 1.0) {
    auto net = ReactionNetwork::from_reactions(kAB, {{c(2, 0), c(1, 0)}, {c(0, 2), c(1, 1)}, {c(0, 0), c(0, 1)}});
    return SubconfinedSystem::confined(net, Tempering::uniform(net, k), {1, 1});
}

Trajectory run(const SubconfinedSystem& sys, const Vector& x, double t_end, double h, double dt = 1.0,
               RateScheme scheme = RateScheme::Midpoint, std::uint64_t seed = 0) {
    return simulate(sys, x, sample_rate_path(sys, std::min(dt, t_end), t_end, seed, scheme), t_end, h);
}

}  // namespace

TEST_CASE("monomials with real exponents") {
    CHECK(monomial({2, 3}, {2, 1}) == doctest::Approx(12));
    CHECK(monomial({4}, {0.5}) == doctest::Approx(2));
    CHECK(monomial({0, 3}, {0, 1}) == doctest::Approx(3));
    CHECK(monomial({5}, {0}) == 1.0);
}

TEST_CASE("fiber membership") {
    const auto sys = lv_reversed();
    const auto at_steady = fiber_contains(sys, {1, 1}, {0, 0}, 1e-12);
    CHECK(at_steady.contains);
    CHECK(at_steady.residual == 0.0);
    CHECK(at_steady.coefficients == Vector{1, 1, 1});

    const auto inflow = one_species({{a1(0), a1(1)}}, {PositiveInterval::closed(1, 2)});
    const auto inside = fiber_contains(inflow, {0.7}, {1.5}, 1e-12);
    CHECK(inside.contains);
    CHECK(inside.coefficients[0] == doctest::Approx(1.5));
    const auto outside = fiber_contains(inflow, {0.7}, {3}, 1e-12);
    CHECK_FALSE(outside.contains);
    CHECK(outside.residual == doctest::Approx(1.0));
    CHECK(outside.coefficients[0] == doctest::Approx(2.0));

    const auto empty = fiber_contains(inflow, {-1}, {1.5}, 1e-12);
    CHECK_FALSE(empty.contains);
    CHECK(std::isinf(empty.residual));

    auto net = ReactionNetwork::from_reactions(kA, {{a1(0), a1(1)}});
    const SubconfinedSystem boxed(net, Tempering::uniform(net, 1), Allotment(kA, {PositiveInterval::open(1, 2)}), {1.5});
    CHECK(std::isinf(fiber_contains(boxed, {3}, {1}, 1e-9).residual));
    CHECK(fiber_contains(boxed, {2}, {1}, 1e-9).contains);
}

TEST_CASE("rate paths") {
    const auto unit = one_species({{a1(0), a1(1)}}, {PositiveInterval::point(1)});
    for (auto scheme : {RateScheme::Midpoint, RateScheme::UniformRandom, RateScheme::ExtremalCycling}) {
        const auto p = sample_rate_path(unit, 0.5, 3, 4, scheme);
        for (const auto& v : p.values) CHECK(v == Vector{1});
    }
    const auto wide = one_species({{a1(0), a1(1)}}, {PositiveInterval::closed(1, 2)});
    const auto mid = sample_rate_path(wide, 1, 2, 0, RateScheme::Midpoint);
    for (const auto& v : mid.values) CHECK(v == Vector{1.5});

    const auto cyc = sample_rate_path(wide, 1, 2, 0, RateScheme::ExtremalCycling);
    CHECK(cyc.breakpoints == std::vector<double>{0, 1});
    CHECK(cyc.at(0.0) == Vector{1});
    CHECK(cyc.at(0.999) == Vector{1});
    CHECK(cyc.at(1.0) == Vector{2});
    CHECK(cyc.at(1.5) == Vector{2});

    const auto r1 = sample_rate_path(wide, 0.1, 5, 99, RateScheme::UniformRandom);
    const auto r2 = sample_rate_path(wide, 0.1, 5, 99, RateScheme::UniformRandom);
    CHECK(r1.values == r2.values);
    CHECK(r1.values.size() == 50);
    for (const auto& v : r1.values) CHECK((v[0] >= 1 && v[0] <= 2));
    CHECK(sample_rate_path(wide, 0.1, 5, 100, RateScheme::UniformRandom).values != r1.values);

    CHECK_THROWS_AS(sample_rate_path(wide, 0, 1, 0, RateScheme::Midpoint), std::invalid_argument);
    CHECK_THROWS_AS(sample_rate_path(wide, 2, 1, 0, RateScheme::Midpoint), std::invalid_argument);
    CHECK(parse_rate_scheme("extremal-cycling") == RateScheme::ExtremalCycling);
    CHECK_THROWS(parse_rate_scheme("nope"));
}

TEST_CASE("closed-form trajectories") {
    const auto inflow = one_species({{a1(0), a1(1)}}, {PositiveInterval::point(1)});
    const auto lin = run(inflow, {1}, 1, 1e-3);
    CHECK(lin.status == TrajectoryStatus::Completed);
    CHECK(lin.times.back() == 1.0);
    CHECK(std::abs(lin.states.back()[0] - 2.0) <= 1e-9);

    const auto decay = one_species({{a1(1), a1(0)}}, {PositiveInterval::point(1)});
    const auto ex = run(decay, {1}, 1, 1e-3);
    CHECK(std::abs(ex.states.back()[0] - std::exp(-1.0)) <= 1e-6);

    const auto steady = run(lv_reversed(), {1, 1}, 10, 1e-3);
    for (const auto& x : steady.states) {
        CHECK(std::abs(x[0] - 1) <= 1e-9);
        CHECK(std::abs(x[1] - 1) <= 1e-9);
    }
}

TEST_CASE("steps land on rate breakpoints") {
    const auto wide = one_species({{a1(0), a1(1)}, {a1(1), a1(0)}},
                                  {PositiveInterval::closed(1, 2), PositiveInterval::closed(1, 2)});
    const auto tr = run(wide, {1}, 1.0, 0.3, 0.5, RateScheme::ExtremalCycling);
    const std::vector<double> expected{0, 0.3, 0.5, 0.8, 1.0};
    REQUIRE(tr.times.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(tr.times[i] == doctest::Approx(expected[i]));
    CHECK(tr.times[2] == 0.5);
}

TEST_CASE("RK4 converges at fourth order") {
    const auto decay = one_species({{a1(1), a1(0)}}, {PositiveInterval::point(1)});
    const double e1 = std::abs(run(decay, {1}, 1, 0.1).states.back()[0] - std::exp(-1.0));
    const double e2 = std::abs(run(decay, {1}, 1, 0.05).states.back()[0] - std::exp(-1.0));
    CHECK(e1 / e2 > 12);
}

TEST_CASE("floor and ceiling aborts keep the partial trajectory") {
    const auto inflow = one_species({{a1(0), a1(1)}}, {PositiveInterval::point(1)});
    const auto up = run(inflow, {1}, 2e12, 1e10, 2e12);
    CHECK(up.status == TrajectoryStatus::CeilingAbort);
    REQUIRE(up.abort_state);
    CHECK((*up.abort_state)[0] >= kOverflowCeiling);
    for (const auto& x : up.states) CHECK(x[0] < kOverflowCeiling);

    const auto decay = one_species({{a1(1), a1(0)}}, {PositiveInterval::point(50)});
    const auto down = run(decay, {1}, 10, 0.1);
    CHECK(down.status == TrajectoryStatus::FloorAbort);
    for (const auto& x : down.states) CHECK(x[0] > 0);
}

TEST_CASE("trajectories conserve the invariant polyhedron") {
    auto net = ReactionNetwork::from_reactions(kAB, {{c(1, 0), c(0, 1)}, {c(0, 1), c(1, 0)}, {c(2, 0), c(1, 1)}});
    const SubconfinedSystem sys = SubconfinedSystem::confined(
        net, Tempering(net, {PositiveInterval::closed(1, 2), PositiveInterval::closed(0.5, 1), PositiveInterval::point(1)}),
        {2, 0.5});
    const auto tr = run(sys, {2, 0.5}, 10, 1e-3, 1, RateScheme::UniformRandom, 5);
    CHECK(conservation_residual(net, tr) <= 1e-6);
    for (const auto& x : tr.states) CHECK(invariant_polyhedron_contains(net, {2, 0.5}, x, 1e-6));
    CHECK(tr.warnings.empty());
    const auto off = run(sys, {1, 1}, 1, 1e-2);
    CHECK(off.warnings.size() == 1);
}

TEST_CASE("finite-difference tangents approach the fiber at second order") {
    const auto sys = lv_reversed();
    auto max_residual = [&](double h) {
        const auto tr = run(sys, {0.5, 1.5}, 1, h);
        double worst = 0;
        for (std::size_t i = 1; i + 1 < tr.states.size(); ++i) {
            Vector v(2);
            for (int s = 0; s < 2; ++s) v[s] = (tr.states[i + 1][s] - tr.states[i - 1][s]) / (2 * h);
            Vector exact = mass_action_rhs(sys.network(), {1, 1, 1}, tr.states[i]);
            worst = std::max({worst, std::abs(v[0] - exact[0]), std::abs(v[1] - exact[1])});
        }
        return worst;
    };
    const double r1 = max_residual(0.02);
    const double r2 = max_residual(0.01);
    CHECK(r1 / r2 > 3.5);
}

TEST_CASE("simulation is bitwise deterministic") {
    const auto sys = one_species({{a1(0), a1(1)}, {a1(1), a1(0)}},
                                 {PositiveInterval::closed(1, 2), PositiveInterval::closed(1, 2)});
    const auto a = run(sys, {1}, 5, 1e-2, 0.1, RateScheme::UniformRandom, 7);
    const auto b = run(sys, {1}, 5, 1e-2, 0.1, RateScheme::UniformRandom, 7);
    CHECK(a.times == b.times);
    CHECK(a.states == b.states);
}

TEST_CASE("Lyapunov monitor") {
    CHECK(lyapunov_value({1, 1}, {1, 1}) == -2.0);
    CHECK(lyapunov_value({0.3, 4}, {0.3, 4}) == doctest::Approx(-4.3));
    CHECK(lyapunov_value({2, 1}, {1, 1}) == doctest::Approx(2 * (std::log(2.0) - 1) - 1).epsilon(1e-12));
    CHECK(lyapunov_value({2, 1}, {1, 1}) == doctest::Approx(-1.613706).epsilon(1e-6));
    CHECK_THROWS_AS(lyapunov_value({0, 1}, {1, 1}), std::invalid_argument);

    auto net = ReactionNetwork::from_reactions(kAB, {{c(1, 0), c(0, 1)}, {c(0, 1), c(1, 0)}});
    const auto sys = SubconfinedSystem::confined(net, Tempering::uniform(net, 1), {2, 0.5});
    const auto tr = run(sys, {2, 0.5}, 10, 1e-3);
    for (std::size_t i = 1; i < tr.states.size(); ++i) {
        CHECK(lyapunov_value(tr.states[i], {1.25, 1.25}) - lyapunov_value(tr.states[i - 1], {1.25, 1.25}) <= 1e-9);
    }
}
