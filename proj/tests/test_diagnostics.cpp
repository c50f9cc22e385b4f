#include <doctest.h>

#include <crnkit/diagnostics.hpp>
#include <crnkit/reduction.hpp>

#include <cmath>

using namespace crnkit;

namespace {

const SpeciesSet kA({"A"});
const SpeciesSet kAB({"A", "B"});

Complex a1(double a) { return Complex({a}); }
Complex c(double a, double b) { return Complex({a, b}); }

SubconfinedSystem lv_reversed() {
    auto net = ReactionNetwork::from_reactions(kAB, {{c(2, 0), c(1, 0)}, {c(0, 2), c(1, 1)}, {c(0, 0), c(0, 1)}});
    return SubconfinedSystem::confined(net, Tempering::uniform(net, 1), {1, 1});
}

SubconfinedSystem tampered_reduction() {
    auto net = ReactionNetwork::from_reactions(kA, {{a1(2), a1(1)}, {a1(0), a1(1)}, {a1(0), a1(0)}});
    return SubconfinedSystem::confined(
        net, Tempering(net, {PositiveInterval::point(1), PositiveInterval::closed(2, 3), PositiveInterval::point(1)}),
        {1});
}

SubconfinedSystem exchange() {
    auto net = ReactionNetwork::from_reactions(kA, {{a1(0), a1(1)}, {a1(1), a1(0)}});
    return SubconfinedSystem::confined(net, Tempering(net, {PositiveInterval::closed(1, 2), PositiveInterval::closed(1, 2)}),
                                       {1});
}

SubconfinedSystem inflow() {
    auto net = ReactionNetwork::from_reactions(kA, {{a1(0), a1(1)}});
    return SubconfinedSystem::confined(net, Tempering::uniform(net, 1), {1});
}

Trajectory from_cube_path(const std::vector<Vector>& zs) {
    Trajectory t;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        t.times.push_back(static_cast<double>(i));
        t.states.push_back(to_orthant(zs[i]));
    }
    t.rate_path.breakpoints = {0};
    t.rate_path.values = {{}};
    return t;
}

Trajectory lv_trajectory(double h) {
    const auto sys = lv_reversed();
    return simulate(sys, {0.01, 1}, sample_rate_path(sys, 1, 1, 0, RateScheme::Midpoint), 1, h);
}

EnsembleSpec spec(std::size_t n, double lo, double hi) {
    EnsembleSpec e;
    e.n_traj = n;
    e.seed = 1;
    e.init = Box{{lo}, {hi}};
    e.dt = 0.5;
    e.t_end = 10;
    e.h = 1e-2;
    return e;
}

}  // namespace

TEST_CASE("block segments") {
    const auto face = Face::parse(kAB, "0*");
    CHECK(block_segments(from_cube_path({{0.5, 0.5}, {0.6, 0.5}}), face, 0.1).empty());

    const auto constant = from_cube_path(std::vector<Vector>(6, Vector{0.05, 0.5}));
    const auto all = block_segments(constant, face, 0.1);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == IndexRange{0, 5});

    const auto crossing =
        from_cube_path({{0.5, 0.5}, {0.3, 0.5}, {0.15, 0.5}, {0.08, 0.5}, {0.05, 0.5}, {0.08, 0.5}, {0.2, 0.5}, {0.4, 0.5}});
    const auto once = block_segments(crossing, face, 0.1);
    REQUIRE(once.size() == 1);
    CHECK(once[0] == IndexRange{3, 5});

    const auto twice = from_cube_path({{0.05, 0.5}, {0.5, 0.5}, {0.05, 0.5}, {0.06, 0.5}});
    CHECK(block_segments(twice, face, 0.1) == std::vector<IndexRange>{{0, 0}, {2, 3}});
}

TEST_CASE("vertexical allotment") {
    const auto mu = vertexical_allotment(kAB, {0}, 0.1);
    CHECK(mu[0] == PositiveInterval::whole());
    CHECK(mu[1].lo() == doctest::Approx(0.1 / 0.9));
    CHECK(mu[1].hi() == doctest::Approx(9.0));
    CHECK(mu[1].lo_open());
}

TEST_CASE("factorization holds near the A = 0 face") {
    const auto sys = lv_reversed();
    const auto tr = lv_trajectory(1e-3);
    const auto report = verify_factorization(sys, tr, {0}, 0.1, 1e-4);
    CHECK(report.pass);
    REQUIRE(report.faces.size() == 2);
    const auto& near_zero = report.faces[0];
    CHECK(near_zero.face.pattern() == "0*");
    CHECK(near_zero.projected.pattern() == "0");
    REQUIRE(near_zero.segments.size() == 1);
    CHECK(near_zero.samples.size() > 50);
    CHECK(report.max_residual <= 1e-4);
    CHECK(report.faces[1].segments.empty());
    CHECK(report.reparametrization == "identity");

    const auto& first = near_zero.samples.front();
    const double a = first.point[0];
    CHECK(first.tangent[0] == doctest::Approx(-a * a + 1).epsilon(1e-5));
}

TEST_CASE("tangent estimates converge at second order") {
    const auto sys = lv_reversed();
    const auto coarse = verify_factorization(sys, lv_trajectory(2e-3), {0}, 0.1, 1e-4);
    const auto fine = verify_factorization(sys, lv_trajectory(1e-3), {0}, 0.1, 1e-4);
    REQUIRE(fine.max_tangent_defect > 0);
    CHECK(coarse.max_tangent_defect / fine.max_tangent_defect >= 3);
}

TEST_CASE("a shrunken reduced tempering is rejected") {
    const auto sys = lv_reversed();
    const auto report = verify_factorization_against(sys, tampered_reduction(), lv_trajectory(1e-3), {0}, 0.1, 1e-4);
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual >= 0.1);
    CHECK(report.max_residual == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("trajectories that never enter a block pass vacuously") {
    const auto sys = lv_reversed();
    const auto tr = simulate(sys, {1, 1}, sample_rate_path(sys, 1, 1, 0, RateScheme::Midpoint), 1, 1e-2);
    const auto report = verify_factorization(sys, tr, {0}, 0.1, 1e-4);
    CHECK(report.pass);
    CHECK(report.segment_count == 0);
    CHECK_THROWS_AS(verify_factorization(sys, tr, {0, 1}, 0.1, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(verify_factorization(sys, tr, {0}, 0.6, 1e-4), std::invalid_argument);
}

TEST_CASE("short segments are skipped and reported") {
    Trajectory t = from_cube_path({{0.5, 0.5}, {0.05, 0.5}, {0.06, 0.5}, {0.5, 0.5}});
    const auto report = verify_factorization(lv_reversed(), t, {0}, 0.1, 1e-4);
    CHECK(report.faces[0].skipped_segments.size() == 1);
    CHECK(report.faces[0].samples.empty());
    CHECK(report.pass);
}

TEST_CASE("persistence of the exchange band") {
    const auto report = persistence_probe(exchange(), spec(40, 1, 1));
    REQUIRE(report.trajectories.size() == 40);
    for (const auto& t : report.trajectories) {
        CHECK(t.sampled);
        CHECK(t.status == TrajectoryStatus::Completed);
        CHECK(t.min_state[0] >= 0.5 - 1e-6);
        CHECK(t.max_state[0] <= 2 + 1e-6);
    }
    REQUIRE(report.min_boundary_distance);
    CHECK(*report.min_boundary_distance >= 1.0 / 3.0 - 1e-6);
    CHECK(report.floor_aborts + report.ceiling_aborts == 0);
}

TEST_CASE("inflow escapes to the ceiling") {
    EnsembleSpec e = spec(5, 1, 1);
    e.t_end = 2e12;
    e.dt = 2e12;
    e.h = 1e10;
    const auto report = persistence_probe(inflow(), e);
    CHECK(report.ceiling_aborts == 5);
    for (const auto& t : report.trajectories) CHECK(t.status == TrajectoryStatus::CeilingAbort);
}

TEST_CASE("empty ensembles give empty reports") {
    const auto report = persistence_probe(exchange(), spec(0, 1, 1));
    CHECK(report.trajectories.empty());
    CHECK_FALSE(report.min_boundary_distance);
    CHECK(repulsion_probe(exchange(), Face::parse(kA, "0"), {}, spec(5, 0.5, 2)).entries.empty());
}

TEST_CASE("repulsion from the origin of the exchange cube") {
    const auto table = repulsion_probe(exchange(), Face::parse(kA, "0"), {0.1, 0.3, 0.7}, spec(20, 0.5, 2));
    REQUIRE(table.entries.size() == 3);
    for (std::size_t j = 0; j < 2; ++j) {
        const auto& e = table.entries[j];
        CHECK(e.sampled == 20);
        REQUIRE(e.d2);
        CHECK(*e.d2 >= 1.0 / 3.0 - 1e-6);
        CHECK(*e.min_start_distance >= e.d1);
    }
    CHECK(table.entries[2].unsampled == 20);
    CHECK_FALSE(table.entries[2].d2);
    CHECK(table.flat_positive());
    CHECK_THROWS_AS(repulsion_probe(exchange(), Face::parse(kA, "0"), {0.2, 0.1}, spec(1, 0.5, 2)),
                    std::invalid_argument);

    const auto persistence = persistence_probe(exchange(), spec(20, 0.5, 2));
    CHECK(*persistence.min_boundary_distance > 0);
}

TEST_CASE("conservative exchange never approaches the boundary") {
    auto net = ReactionNetwork::from_reactions(kAB, {{c(1, 0), c(0, 1)}, {c(0, 1), c(1, 0)}});
    const auto sys = SubconfinedSystem::confined(net, Tempering::uniform(net, 1), {2, 0.5});
    for (const Vector& start : {Vector{2, 0.5}, Vector{0.3, 2.2}, Vector{1.25, 1.25}}) {
        const auto tr = simulate(sys, start, sample_rate_path(sys, 1, 10, 0, RateScheme::Midpoint), 10, 1e-3);
        const double initial = boundary_distances(to_cube(start)).boundary;
        for (const auto& x : tr.states) CHECK(boundary_distances(to_cube(x)).boundary >= initial - 1e-6);
    }
}

TEST_CASE("permanence") {
    auto e = spec(10, 1, 1);
    const auto band = permanence_probe(exchange(), Box{{0.9}, {1.1}}, Box{{0.4}, {2.1}}, e);
    CHECK(band.pass);
    CHECK(band.exits == 0);

    e.scheme = RateScheme::Midpoint;
    e.h = 1e-3;
    const auto escape = permanence_probe(inflow(), Box{{1}, {1}}, Box{{0.5}, {2.1}}, e);
    CHECK_FALSE(escape.pass);
    for (const auto& t : escape.trajectories) {
        REQUIRE(t.exit_time);
        CHECK(*t.exit_time == doctest::Approx(1.1).epsilon(1e-2));
    }

    auto point = spec(3, 1, 1);
    point.init = Box{{1, 1}, {1, 1}};
    const auto steady = permanence_probe(lv_reversed(), Box{{1, 1}, {1, 1}}, Box{{1, 1}, {1, 1}}, point);
    CHECK(steady.pass);

    CHECK_THROWS_AS(permanence_probe(exchange(), Box{{0.3}, {1.1}}, Box{{0.4}, {2.1}}, e), std::invalid_argument);
}

TEST_CASE("ensembles are deterministic and independent of the worker count") {
    auto e = spec(16, 0.5, 2);
    e.threads = 1;
    const auto a = persistence_probe(exchange(), e);
    e.threads = 4;
    const auto b = persistence_probe(exchange(), e);
    REQUIRE(a.trajectories.size() == b.trajectories.size());
    for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
        CHECK(a.trajectories[i].start == b.trajectories[i].start);
        CHECK(a.trajectories[i].min_state == b.trajectories[i].min_state);
        CHECK(a.trajectories[i].min_boundary_distance == b.trajectories[i].min_boundary_distance);
    }
    CHECK(a.min_vertex_distances == b.min_vertex_distances);
}
