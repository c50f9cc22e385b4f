#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace crnkit {

using Vector = std::vector<double>;

/// Sorted, duplicate-free list of species indices.
using SpeciesSubset = std::vector<std::size_t>;

/// Ordered list of distinct species names. The order fixes the coordinate order of
/// every vector over the species.
class SpeciesSet {
public:
    /// Throws std::invalid_argument on an empty list, a duplicate, or a name not
    /// matching [A-Za-z][A-Za-z0-9_]*.
    explicit SpeciesSet(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(const std::string& name) const;

    /// Indices of the given names, sorted. Throws std::invalid_argument for unknown or
    /// repeated names.
    SpeciesSubset subset(const std::vector<std::string>& names) const;
    SpeciesSubset all() const;
    /// Species set restricted to `subset`, in canonical order.
    SpeciesSet restrict(const SpeciesSubset& subset) const;

    static bool valid_name(const std::string& name);

    friend bool operator==(const SpeciesSet&, const SpeciesSet&) = default;

private:
    std::vector<std::string> names_;
};

/// Real linear combination of species. Negative zero is normalized to zero so that
/// equality is plain coefficient equality.
class Complex {
public:
    explicit Complex(Vector coefficients);
    static Complex zero(std::size_t dimension);

    const Vector& coefficients() const noexcept { return coefficients_; }
    std::size_t size() const noexcept { return coefficients_.size(); }
    double operator[](std::size_t i) const { return coefficients_[i]; }
    bool is_zero() const noexcept;

    friend bool operator==(const Complex&, const Complex&) = default;
    friend std::partial_ordering operator<=>(const Complex& a, const Complex& b) {
        return a.coefficients_ <=> b.coefficients_;
    }

private:
    Vector coefficients_;
};

struct Reaction {
    Complex reactant;
    Complex product;

    bool is_trivial() const { return reactant == product; }
    Reaction reversed() const { return {product, reactant}; }

    friend bool operator==(const Reaction&, const Reaction&) = default;
    friend std::partial_ordering operator<=>(const Reaction&, const Reaction&) = default;
};

/// Product minus reactant.
Vector flux(const Reaction& reaction);

/// Species, complexes, and reactions. Complexes and reactions are sets: duplicates are
/// dropped at construction and the first occurrence fixes the order used for indexing.
class ReactionNetwork {
public:
    /// Every reactant and product must be among `complexes`; all complexes must have
    /// one coefficient per species.
    ReactionNetwork(SpeciesSet species, std::vector<Complex> complexes, std::vector<Reaction> reactions);

    /// Complexes are collected from the reactions in order of appearance, followed by
    /// any isolated complexes.
    static ReactionNetwork from_reactions(SpeciesSet species, std::vector<Reaction> reactions,
                                          std::vector<Complex> isolated = {});

    const SpeciesSet& species() const noexcept { return species_; }
    const std::vector<Complex>& complexes() const noexcept { return complexes_; }
    const std::vector<Reaction>& reactions() const noexcept { return reactions_; }

    std::optional<std::size_t> complex_index(const Complex& c) const;
    std::size_t reactant_index(std::size_t reaction) const { return reactant_index_.at(reaction); }
    std::size_t product_index(std::size_t reaction) const { return product_index_.at(reaction); }
    std::optional<std::size_t> reaction_index(const Reaction& r) const;

    /// Set equality of species list, complexes, and reactions (order-insensitive for the
    /// latter two).
    friend bool operator==(const ReactionNetwork& a, const ReactionNetwork& b);

private:
    SpeciesSet species_;
    std::vector<Complex> complexes_;
    std::vector<Reaction> reactions_;
    std::vector<std::size_t> reactant_index_;
    std::vector<std::size_t> product_index_;
    std::vector<std::size_t> complex_order_;  // permutation sorting complexes_
};

}  // namespace crnkit
