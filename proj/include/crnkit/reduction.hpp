#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "crnkit/network.hpp"
#include "crnkit/system.hpp"

namespace crnkit {

/// Thrown by project_system when a removed species has an allotment touching 0 or inf.
class NotProjectable : public std::invalid_argument {
public:
    NotProjectable(std::vector<std::string> species);
    const std::vector<std::string>& species() const noexcept { return species_; }

private:
    std::vector<std::string> species_;
};

/// Coordinates of v indexed by `kept`.
Vector project_vector(const Vector& v, const SpeciesSubset& kept);
Complex project_complex(const Complex& c, const SpeciesSubset& kept);
Reaction project_reaction(const Reaction& r, const SpeciesSubset& kept);

/// The reduced network on `kept`: every complex and reaction mapped coordinatewise,
/// duplicates merged, trivial reactions retained. Throws std::invalid_argument for an
/// empty or out-of-range subset.
ReactionNetwork reduce_network(const ReactionNetwork& net, const SpeciesSubset& kept);

/// Names of removed species whose allotment is not bounded away from 0 and inf.
std::vector<std::string> unbounded_removed_species(const SubconfinedSystem& system, const SpeciesSubset& kept);
bool is_projectable(const Allotment& allotment, const SpeciesSubset& kept);

/// One source reaction's contribution to a reduced reaction.
struct ProjectionSource {
    std::size_t source;   // reaction index in the original network
    std::size_t reduced;  // reaction index in the reduced network
    PositiveInterval rate;  // kappa(r) times the removed-species allotment powers
};

struct SystemProjection {
    SubconfinedSystem system;
    std::vector<ProjectionSource> sources;

    /// Reduced reactions fed by more than one source reaction.
    std::vector<std::size_t> merged() const;
};

/// The projection of a subconfined system onto `kept`. The reduced tempering of a
/// reaction fed by several source reactions is the hull of their intervals. Throws
/// NotProjectable.
SystemProjection project_system_detailed(const SubconfinedSystem& system, const SpeciesSubset& kept);
SubconfinedSystem project_system(const SubconfinedSystem& system, const SpeciesSubset& kept);

/// Indices of `inner` within `outer` (both sorted subsets of one species set), i.e.
/// the subset of the reduced species set corresponding to `inner`.
SpeciesSubset relative_subset(const SpeciesSubset& outer, const SpeciesSubset& inner);

}  // namespace crnkit
