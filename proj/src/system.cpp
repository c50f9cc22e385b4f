#include "crnkit/system.hpp"

#include <cmath>
#include <stdexcept>

namespace crnkit {

Tempering::Tempering(const ReactionNetwork& net, std::vector<PositiveInterval> intervals)
    : intervals_(std::move(intervals)) {
    if (intervals_.size() != net.reactions().size()) {
        throw std::invalid_argument("tempering must assign one interval per reaction");
    }
    for (const auto& k : intervals_) {
        if (!k.bounded_away()) throw std::invalid_argument("tempering intervals must lie within (0, inf)");
    }
}

Tempering Tempering::uniform(const ReactionNetwork& net, double k) {
    return Tempering(net, std::vector<PositiveInterval>(net.reactions().size(), PositiveInterval::point(k)));
}

Allotment::Allotment(const SpeciesSet& species, std::vector<PositiveInterval> intervals)
    : intervals_(std::move(intervals)) {
    if (intervals_.size() != species.size()) {
        throw std::invalid_argument("allotment must assign one interval per species");
    }
}

Allotment Allotment::whole(const SpeciesSet& species) {
    return Allotment(species, std::vector<PositiveInterval>(species.size(), PositiveInterval::whole()));
}

bool Allotment::closure_contains(const Vector& x, double rel_tol) const {
    if (x.size() != intervals_.size()) throw std::invalid_argument("dimension mismatch with allotment");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!intervals_[i].closure_contains(x[i], rel_tol * std::max(1.0, std::abs(x[i])))) return false;
    }
    return true;
}

SubconfinedSystem::SubconfinedSystem(ReactionNetwork network, Tempering tempering, Allotment allotment,
                                     Vector base_point)
    : network_(std::move(network)),
      tempering_(std::move(tempering)),
      allotment_(std::move(allotment)),
      base_point_(std::move(base_point)) {
    if (tempering_.size() != network_.reactions().size()) {
        throw std::invalid_argument("tempering does not match the network");
    }
    if (allotment_.size() != network_.species().size()) {
        throw std::invalid_argument("allotment does not match the species set");
    }
    if (base_point_.size() != network_.species().size()) {
        throw std::invalid_argument("base point dimension does not match the species set");
    }
    for (double v : base_point_) {
        if (!std::isfinite(v) || !(v > 0.0)) throw std::invalid_argument("base point must be strictly positive");
    }
    if (!allotment_.closure_contains(base_point_)) {
        throw std::invalid_argument("base point lies outside the allotment hypercube");
    }
}

SubconfinedSystem SubconfinedSystem::confined(ReactionNetwork network, Tempering tempering, Vector base_point) {
    auto allotment = Allotment::whole(network.species());
    return SubconfinedSystem(std::move(network), std::move(tempering), std::move(allotment), std::move(base_point));
}

SubconfinedSystem SubconfinedSystem::with_allotment(Allotment allotment, Vector base_point) const {
    return SubconfinedSystem(network_, tempering_, std::move(allotment), std::move(base_point));
}

SubconfinedSystem SubconfinedSystem::with_tempering(Tempering tempering) const {
    return SubconfinedSystem(network_, std::move(tempering), allotment_, base_point_);
}

}  // namespace crnkit
