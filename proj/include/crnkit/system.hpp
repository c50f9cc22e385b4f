#pragma once

#include <vector>

#include "crnkit/interval.hpp"
#include "crnkit/network.hpp"

namespace crnkit {

/// Rate interval per reaction, aligned with ReactionNetwork::reactions().
/// Every interval is bounded away from 0 and infinity; openness flags are kept but
/// all numerical checks use the closure.
class Tempering {
public:
    Tempering(const ReactionNetwork& net, std::vector<PositiveInterval> intervals);
    /// Same degenerate interval [k, k] on every reaction.
    static Tempering uniform(const ReactionNetwork& net, double k);

    const std::vector<PositiveInterval>& intervals() const noexcept { return intervals_; }
    const PositiveInterval& operator[](std::size_t reaction) const { return intervals_.at(reaction); }
    std::size_t size() const noexcept { return intervals_.size(); }

    friend bool operator==(const Tempering&, const Tempering&) = default;

private:
    std::vector<PositiveInterval> intervals_;
};

/// Concentration interval per species, aligned with SpeciesSet order.
class Allotment {
public:
    Allotment(const SpeciesSet& species, std::vector<PositiveInterval> intervals);
    /// (0, inf) for every species: the confined case.
    static Allotment whole(const SpeciesSet& species);

    const std::vector<PositiveInterval>& intervals() const noexcept { return intervals_; }
    const PositiveInterval& operator[](std::size_t species) const { return intervals_.at(species); }
    std::size_t size() const noexcept { return intervals_.size(); }

    /// x lies in the closure of the allotment hypercube, up to a relative slack.
    bool closure_contains(const Vector& x, double rel_tol = 1e-12) const;

    friend bool operator==(const Allotment&, const Allotment&) = default;

private:
    std::vector<PositiveInterval> intervals_;
};

/// Network, tempering, allotment, and a strictly positive base point x0 fixing the
/// invariant polyhedron (x0 + H) ∩ R^S_{>=0}. A confined system has the whole
/// allotment.
class SubconfinedSystem {
public:
    SubconfinedSystem(ReactionNetwork network, Tempering tempering, Allotment allotment, Vector base_point);

    static SubconfinedSystem confined(ReactionNetwork network, Tempering tempering, Vector base_point);

    const ReactionNetwork& network() const noexcept { return network_; }
    const Tempering& tempering() const noexcept { return tempering_; }
    const Allotment& allotment() const noexcept { return allotment_; }
    const Vector& base_point() const noexcept { return base_point_; }
    const SpeciesSet& species() const noexcept { return network_.species(); }

    SubconfinedSystem with_allotment(Allotment allotment, Vector base_point) const;
    SubconfinedSystem with_tempering(Tempering tempering) const;

    friend bool operator==(const SubconfinedSystem&, const SubconfinedSystem&) = default;

private:
    ReactionNetwork network_;
    Tempering tempering_;
    Allotment allotment_;
    Vector base_point_;
};

}  // namespace crnkit
