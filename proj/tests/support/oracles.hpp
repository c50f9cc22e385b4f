#pragma once

// Direct evaluations used to cross-check the library. Nothing here calls the code
// under test beyond its data types.

#include <crnkit/network.hpp>

#include <vector>

namespace oracle {

using crnkit::ReactionNetwork;
using crnkit::Vector;

double dot(const Vector& a, const Vector& b);

/// Unit directions covering the sphere in dimension 1, 2, or 3: +-1, equally spaced
/// angles, or a Fibonacci lattice.
std::vector<Vector> sphere_grid(std::size_t dim, std::size_t count);

/// The endotactic condition evaluated at one direction straight from its definition.
bool w_endotactic(const ReactionNetwork& net, const Vector& w, double tol = 1e-12);

/// The strong condition at one direction: vacuous when w is orthogonal to every
/// reaction vector, otherwise some reaction from a globally maximal reactant points
/// strictly inward.
bool w_strong(const ReactionNetwork& net, const Vector& w, double tol = 1e-12);

/// Every complex reachable from every other along reactions, by repeated search.
bool strongly_connected(const ReactionNetwork& net);
/// Each reaction's product can reach back to its reactant.
bool weakly_reversible(const ReactionNetwork& net);
bool reversible(const ReactionNetwork& net);

/// Rank by Gaussian elimination with partial pivoting.
std::size_t rank(std::vector<Vector> rows, double tol = 1e-9);

}  // namespace oracle
