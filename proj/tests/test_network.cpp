#include <doctest.h>

#include <crnkit/network.hpp>
#include <crnkit/stoichiometry.hpp>
#include <crnkit/system.hpp>

#include <algorithm>
#include <random>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace crnkit;

namespace {

const SpeciesSet kAB({"A", "B"});

Complex c(double a, double b) { return Complex({a, b}); }

ReactionNetwork ab_exchange() {
    return ReactionNetwork::from_reactions(kAB, {{c(1, 0), c(0, 1)}, {c(0, 1), c(1, 0)}});
}

ReactionNetwork lv_reversed() {
    return ReactionNetwork::from_reactions(kAB, {{c(2, 0), c(1, 0)}, {c(0, 2), c(1, 1)}, {c(0, 0), c(0, 1)}});
}

}  // namespace

TEST_CASE("species sets validate names") {
    CHECK_THROWS_AS(SpeciesSet({}), std::invalid_argument);
    CHECK_THROWS_AS(SpeciesSet({"A", "A"}), std::invalid_argument);
    CHECK_THROWS_AS(SpeciesSet({"1A"}), std::invalid_argument);
    CHECK_THROWS_AS(SpeciesSet({"A-B"}), std::invalid_argument);
    const SpeciesSet s({"X_1", "b", "Q"});
    CHECK(s.index_of("Q") == 2u);
    CHECK_FALSE(s.index_of("Z"));
    CHECK(s.subset({"Q", "X_1"}) == SpeciesSubset{0, 2});
    CHECK_THROWS(s.subset({"Z"}));
    CHECK_THROWS(s.subset({"Q", "Q"}));
    CHECK(s.restrict({0, 2}).names() == std::vector<std::string>{"X_1", "Q"});
}

TEST_CASE("complexes") {
    CHECK_THROWS_AS(Complex({1.0, std::nan("")}), std::invalid_argument);
    CHECK(Complex({-0.0, 1.0}) == Complex({0.0, 1.0}));
    CHECK(Complex::zero(3).is_zero());
}

TEST_CASE("flux is product minus reactant") {
    CHECK(flux({c(1, 1), c(0, 2)}) == Vector{-1, 1});
    CHECK(flux({c(0, 0), c(0, 0)}) == Vector{0, 0});
    CHECK(flux({c(0, 2), c(1, 1)}) == Vector{1, -1});
}

TEST_CASE("flux reverses sign under reversal") {
    gen::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const Reaction r{gen::complex(rng, 3, 4, true), gen::complex(rng, 3, 4, true)};
        auto back = flux(r.reversed());
        for (double& x : back) x = -x;
        CHECK(flux(r) == back);
    }
}

TEST_CASE("networks deduplicate and validate") {
    const auto net = ReactionNetwork::from_reactions(kAB, {{c(1, 0), c(0, 1)}, {c(1, 0), c(0, 1)}}, {c(3, 3)});
    CHECK(net.reactions().size() == 1);
    CHECK(net.complexes().size() == 3);
    CHECK(net.complex_index(c(3, 3)) == 2u);
    CHECK_THROWS_AS(ReactionNetwork(kAB, {c(1, 0)}, {{c(1, 0), c(0, 1)}}), std::invalid_argument);
    CHECK_THROWS_AS(ReactionNetwork(kAB, {Complex({1.0})}, {}), std::invalid_argument);

    const auto same = ReactionNetwork::from_reactions(kAB, {{c(0, 1), c(1, 0)}, {c(1, 0), c(0, 1)}});
    CHECK(ab_exchange() == same);
}

TEST_CASE("stoichiometric basis") {
    const auto h = stoichiometric_basis(ab_exchange());
    REQUIRE(h.size() == 1);
    CHECK(h[0][0] == -h[0][1]);
    CHECK(stoichiometric_basis(lv_reversed()).size() == 2);
    const auto trivial = ReactionNetwork::from_reactions(kAB, {{c(1, 0), c(1, 0)}});
    CHECK(stoichiometric_basis(trivial).empty());
}

TEST_CASE("basis rank matches elimination and never exceeds min(|S|, |R|)") {
    gen::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto net = gen::network(rng, 3, 6, 3);
        std::vector<Vector> fluxes;
        for (const auto& r : net.reactions()) fluxes.push_back(flux(r));
        const auto basis = stoichiometric_basis(net);
        CHECK(basis.size() == oracle::rank(fluxes));
        CHECK(basis.size() <= std::min(net.species().size(), net.reactions().size()));
    }
}

TEST_CASE("invariant polyhedron membership") {
    const auto net = ab_exchange();
    CHECK(invariant_polyhedron_contains(net, {1, 1}, {2, 0}, 1e-12));
    CHECK_FALSE(invariant_polyhedron_contains(net, {1, 1}, {1, 2}, 1e-9));
    CHECK(invariant_polyhedron_contains(lv_reversed(), {0.3, 2}, {0.3, 2}, 0.0));
    CHECK_FALSE(invariant_polyhedron_contains(net, {1, 1}, {2.5, -0.5}, 1e-9));
    CHECK_THROWS_AS(invariant_polyhedron_contains(net, {1, 1}, {1}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(invariant_polyhedron_contains(net, {1, 1}, {1, 1}, -1.0), std::invalid_argument);
}

TEST_CASE("displacements along H stay on the polyhedron") {
    gen::Rng rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto net = gen::network(rng, 3, 5, 3);
        const auto basis = stoichiometric_basis(net);
        Vector x0(net.species().size(), 5.0);
        Vector x = x0;
        for (const auto& h : basis) {
            const double a = u(rng);
            for (std::size_t s = 0; s < x.size(); ++s) x[s] += a * h[s];
        }
        if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0; })) continue;
        ++checked;
        CHECK(invariant_polyhedron_contains(net, x0, x, 1e-9));
    }
    CHECK(checked > 100);
}

TEST_CASE("systems validate their parts") {
    const auto net = ab_exchange();
    CHECK_THROWS_AS(Tempering(net, {PositiveInterval::point(1)}), std::invalid_argument);
    CHECK_THROWS_AS(Tempering(net, {PositiveInterval::point(1), PositiveInterval::open(0, 1)}), std::invalid_argument);
    const auto k = Tempering::uniform(net, 1.0);
    CHECK_THROWS_AS(SubconfinedSystem::confined(net, k, {1, 0}), std::invalid_argument);
    const Allotment mu(kAB, {PositiveInterval::open(1, 2), PositiveInterval::whole()});
    CHECK_THROWS_AS(SubconfinedSystem(net, k, mu, {3, 1}), std::invalid_argument);
    CHECK_NOTHROW(SubconfinedSystem(net, k, mu, {1, 1}));
    CHECK(SubconfinedSystem::confined(net, k, {1, 1}).allotment() == Allotment::whole(kAB));
}
