#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crnkit/network.hpp"

namespace crnkit {

/// |<w, v>| at or below this counts as orthogonal on the direct-evaluation path.
inline constexpr double kOrthogonalityTolerance = 1e-12;

/// Default cap on |R| for the exponential subset enumerations.
inline constexpr std::size_t kDefaultReactionLimit = 12;

/// Weakly connected components of the reaction graph, as lists of complex indices.
/// Components are ordered by their smallest complex index; isolated complexes are
/// singleton classes.
std::vector<std::vector<std::size_t>> linkage_classes(const ReactionNetwork& net);

/// Strongly connected components of the reaction graph (Tarjan), as complex indices.
std::vector<std::vector<std::size_t>> strong_components(const ReactionNetwork& net);

bool is_integer(const ReactionNetwork& net);
bool is_chemical(const ReactionNetwork& net);
bool is_reversible(const ReactionNetwork& net);
bool is_strongly_connected(const ReactionNetwork& net);
/// Every reaction joins two complexes of the same strongly connected component.
bool is_weakly_reversible(const ReactionNetwork& net);

struct WSupportReport {
    Vector w;
    std::vector<std::size_t> essential;  // reaction indices with |<w, flux>| > tolerance
    std::vector<std::size_t> support;    // complex indices: <=_w-maximal reactants of essential reactions
};

WSupportReport w_support(const ReactionNetwork& net, const Vector& w);

struct WEndotacticResult {
    bool endotactic = true;
    std::optional<std::size_t> violator;  // reaction index
};

WEndotacticResult is_w_endotactic(const ReactionNetwork& net, const Vector& w);

/// Direct evaluation of the strong condition at a single direction: true when w is
/// orthogonal to the stoichiometric subspace, or some reaction fired from a globally
/// <=_w-maximal reactant has <w, flux> < 0.
bool satisfies_strong_condition(const ReactionNetwork& net, const Vector& w);

enum class Verdict { True, False, Indeterminate };

struct GeometricVerdict {
    Verdict verdict = Verdict::Indeterminate;
    std::optional<Vector> witness;        // violating direction when False
    std::optional<std::size_t> violator;  // violating reaction, when one exists
    std::string note;

    bool holds() const noexcept { return verdict == Verdict::True; }
};

/// Exact decision by enumerating candidate essential sets: for each nontrivial
/// reaction r and each set E of nontrivial reactions containing r, the program
///   <w, flux r> >= 1,  <w, flux r'> = 0 (r' not in E),  <w, reactant r' - reactant r> <= 0 (r' in E)
/// is feasible exactly when some w makes r a violating support reaction. Witnesses are
/// re-checked with is_w_endotactic. Throws std::length_error when the network has more
/// than `reaction_limit` reactions.
GeometricVerdict is_endotactic(const ReactionNetwork& net, std::size_t reaction_limit = kDefaultReactionLimit);

/// Endotactic, and no direction w outside H-perp violates the strong condition. The
/// violation search runs over nonempty sets M of distinct reactants (the candidate
/// <=_w-maximal set) and signed basis vectors h of H.
GeometricVerdict is_strongly_endotactic(const ReactionNetwork& net,
                                        std::size_t reaction_limit = kDefaultReactionLimit);

struct ClassificationReport {
    bool integer = false;
    bool chemical = false;
    bool reversible = false;
    bool strongly_connected = false;
    bool weakly_reversible = false;
    std::size_t linkage_class_count = 0;
    std::size_t stoichiometric_rank = 0;
    GeometricVerdict endotactic;
    GeometricVerdict strongly_endotactic;

    bool indeterminate() const noexcept {
        return endotactic.verdict == Verdict::Indeterminate || strongly_endotactic.verdict == Verdict::Indeterminate;
    }
};

ClassificationReport classify(const ReactionNetwork& net, std::size_t reaction_limit = kDefaultReactionLimit);

}  // namespace crnkit
