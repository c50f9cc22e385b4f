#include "crnkit/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crnkit {

SpeciesSet::SpeciesSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("species set is empty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!valid_name(n)) throw std::invalid_argument("invalid species name '" + n + "'");
        if (!seen.insert(n).second) throw std::invalid_argument("duplicate species '" + n + "'");
    }
}

bool SpeciesSet::valid_name(const std::string& name) {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) return false;
    return std::all_of(name.begin() + 1, name.end(),
                       [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

std::optional<std::size_t> SpeciesSet::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

SpeciesSubset SpeciesSet::subset(const std::vector<std::string>& names) const {
    SpeciesSubset out;
    for (const auto& n : names) {
        auto idx = index_of(n);
        if (!idx) throw std::invalid_argument("unknown species '" + n + "'");
        out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw std::invalid_argument("species listed twice");
    }
    return out;
}

SpeciesSubset SpeciesSet::all() const {
    SpeciesSubset out(names_.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

SpeciesSet SpeciesSet::restrict(const SpeciesSubset& subset) const {
    std::vector<std::string> kept;
    kept.reserve(subset.size());
    for (auto i : subset) kept.push_back(names_.at(i));
    return SpeciesSet(std::move(kept));
}

Complex::Complex(Vector coefficients) : coefficients_(std::move(coefficients)) {
    for (auto& c : coefficients_) {
        if (!std::isfinite(c)) throw std::invalid_argument("complex coefficient is not finite");
        if (c == 0.0) c = 0.0;  // drops the sign of -0
    }
}

Complex Complex::zero(std::size_t dimension) { return Complex(Vector(dimension, 0.0)); }

bool Complex::is_zero() const noexcept {
    return std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c == 0.0; });
}

Vector flux(const Reaction& reaction) {
    const auto& y = reaction.reactant.coefficients();
    const auto& yp = reaction.product.coefficients();
    if (y.size() != yp.size()) throw std::invalid_argument("reactant and product dimensions differ");
    Vector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = yp[i] - y[i];
    return out;
}

ReactionNetwork::ReactionNetwork(SpeciesSet species, std::vector<Complex> complexes,
                                 std::vector<Reaction> reactions)
    : species_(std::move(species)) {
    const std::size_t n = species_.size();
    std::set<Complex> seen_complexes;
    for (auto& c : complexes) {
        if (c.size() != n) throw std::invalid_argument("complex dimension does not match species count");
        if (seen_complexes.insert(c).second) complexes_.push_back(std::move(c));
    }
    complex_order_.resize(complexes_.size());
    std::iota(complex_order_.begin(), complex_order_.end(), std::size_t{0});
    std::sort(complex_order_.begin(), complex_order_.end(),
              [&](std::size_t a, std::size_t b) { return complexes_[a] < complexes_[b]; });

    std::set<Reaction> seen_reactions;
    for (auto& r : reactions) {
        if (!seen_reactions.insert(r).second) continue;
        auto ri = complex_index(r.reactant);
        auto pi = complex_index(r.product);
        if (!ri || !pi) throw std::invalid_argument("reaction uses a complex outside the complex set");
        reactant_index_.push_back(*ri);
        product_index_.push_back(*pi);
        reactions_.push_back(std::move(r));
    }
}

ReactionNetwork ReactionNetwork::from_reactions(SpeciesSet species, std::vector<Reaction> reactions,
                                                std::vector<Complex> isolated) {
    std::vector<Complex> complexes;
    complexes.reserve(2 * reactions.size() + isolated.size());
    for (const auto& r : reactions) {
        complexes.push_back(r.reactant);
        complexes.push_back(r.product);
    }
    for (auto& c : isolated) complexes.push_back(std::move(c));
    return ReactionNetwork(std::move(species), std::move(complexes), std::move(reactions));
}

std::optional<std::size_t> ReactionNetwork::complex_index(const Complex& c) const {
    auto it = std::lower_bound(complex_order_.begin(), complex_order_.end(), c,
                               [&](std::size_t idx, const Complex& key) { return complexes_[idx] < key; });
    if (it == complex_order_.end() || !(complexes_[*it] == c)) return std::nullopt;
    return *it;
}

std::optional<std::size_t> ReactionNetwork::reaction_index(const Reaction& r) const {
    for (std::size_t i = 0; i < reactions_.size(); ++i) {
        if (reactions_[i] == r) return i;
    }
    return std::nullopt;
}

bool operator==(const ReactionNetwork& a, const ReactionNetwork& b) {
    if (!(a.species_ == b.species_)) return false;
    auto sorted = [](auto v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(a.complexes_) == sorted(b.complexes_) && sorted(a.reactions_) == sorted(b.reactions_);
}

}  // namespace crnkit
