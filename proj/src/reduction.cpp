#include "crnkit/reduction.hpp"

#include <algorithm>

#include "crnkit/interval.hpp"

namespace crnkit {

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

void check_subset(const SpeciesSubset& kept, std::size_t n) {
    if (kept.empty()) throw std::invalid_argument("kept species set must be nonempty");
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] >= n) throw std::invalid_argument("kept species index out of range");
        if (i > 0 && kept[i] <= kept[i - 1]) throw std::invalid_argument("kept species must be sorted and distinct");
    }
}

std::vector<std::size_t> removed_species(const SpeciesSubset& kept, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) out.push_back(s);
    }
    return out;
}

}  // namespace

NotProjectable::NotProjectable(std::vector<std::string> species)
    : std::invalid_argument("allotment is unbounded on removed species: " + join_names(species)),
      species_(std::move(species)) {}

Vector project_vector(const Vector& v, const SpeciesSubset& kept) {
    Vector out;
    out.reserve(kept.size());
    for (auto s : kept) out.push_back(v.at(s));
    return out;
}

Complex project_complex(const Complex& c, const SpeciesSubset& kept) {
    return Complex(project_vector(c.coefficients(), kept));
}

Reaction project_reaction(const Reaction& r, const SpeciesSubset& kept) {
    return {project_complex(r.reactant, kept), project_complex(r.product, kept)};
}

ReactionNetwork reduce_network(const ReactionNetwork& net, const SpeciesSubset& kept) {
    check_subset(kept, net.species().size());
    std::vector<Complex> complexes;
    complexes.reserve(net.complexes().size());
    for (const auto& c : net.complexes()) complexes.push_back(project_complex(c, kept));
    std::vector<Reaction> reactions;
    reactions.reserve(net.reactions().size());
    for (const auto& r : net.reactions()) reactions.push_back(project_reaction(r, kept));
    return ReactionNetwork(net.species().restrict(kept), std::move(complexes), std::move(reactions));
}

std::vector<std::string> unbounded_removed_species(const SubconfinedSystem& system, const SpeciesSubset& kept) {
    check_subset(kept, system.species().size());
    std::vector<std::string> out;
    for (auto s : removed_species(kept, system.species().size())) {
        if (!system.allotment()[s].bounded_away()) out.push_back(system.species().name(s));
    }
    return out;
}

bool is_projectable(const Allotment& allotment, const SpeciesSubset& kept) {
    check_subset(kept, allotment.size());
    for (auto s : removed_species(kept, allotment.size())) {
        if (!allotment[s].bounded_away()) return false;
    }
    return true;
}

std::vector<std::size_t> SystemProjection::merged() const {
    std::vector<std::size_t> count(system.network().reactions().size(), 0);
    for (const auto& s : sources) ++count[s.reduced];
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < count.size(); ++r) {
        if (count[r] > 1) out.push_back(r);
    }
    return out;
}

SystemProjection project_system_detailed(const SubconfinedSystem& system, const SpeciesSubset& kept) {
    if (auto bad = unbounded_removed_species(system, kept); !bad.empty()) throw NotProjectable(std::move(bad));

    const auto& net = system.network();
    const auto removed = removed_species(kept, net.species().size());
    auto reduced = reduce_network(net, kept);

    std::vector<ProjectionSource> sources;
    std::vector<std::optional<PositiveInterval>> rates(reduced.reactions().size());
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        PositiveInterval rate = system.tempering()[r];
        const auto& reactant = net.reactions()[r].reactant;
        for (auto s : removed) {
            if (reactant[s] != 0.0) rate = interval_mul(rate, interval_pow(system.allotment()[s], reactant[s]));
        }
        const auto target = *reduced.reaction_index(project_reaction(net.reactions()[r], kept));
        rates[target] = rates[target] ? interval_hull(*rates[target], rate) : rate;
        sources.push_back({r, target, rate});
    }

    std::vector<PositiveInterval> tempering;
    for (auto& k : rates) tempering.push_back(*k);
    std::vector<PositiveInterval> allotment;
    for (auto s : kept) allotment.push_back(system.allotment()[s]);
    auto species = reduced.species();
    SubconfinedSystem out(reduced, Tempering(reduced, std::move(tempering)), Allotment(species, std::move(allotment)),
                          project_vector(system.base_point(), kept));
    return {std::move(out), std::move(sources)};
}

SubconfinedSystem project_system(const SubconfinedSystem& system, const SpeciesSubset& kept) {
    return project_system_detailed(system, kept).system;
}

SpeciesSubset relative_subset(const SpeciesSubset& outer, const SpeciesSubset& inner) {
    SpeciesSubset out;
    for (auto s : inner) {
        auto it = std::lower_bound(outer.begin(), outer.end(), s);
        if (it == outer.end() || *it != s) throw std::invalid_argument("inner subset is not contained in outer");
        out.push_back(static_cast<std::size_t>(it - outer.begin()));
    }
    return out;
}

}  // namespace crnkit
