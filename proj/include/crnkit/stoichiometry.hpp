#pragma once

#include <vector>

#include "crnkit/network.hpp"

namespace crnkit {

/// Relative pivot threshold used when extracting a basis from reaction vectors.
inline constexpr double kRankTolerance = 1e-10;

/// Linearly independent subset of the reaction vectors spanning the stoichiometric
/// subspace H. Vectors are returned unmodified, in reaction order. Empty when every
/// reaction is trivial.
std::vector<Vector> stoichiometric_basis(const ReactionNetwork& net);

/// Independent subset of `vectors` (same selection rule as stoichiometric_basis).
std::vector<Vector> independent_subset(const std::vector<Vector>& vectors);

/// Orthonormal basis of span(vectors), by twice-applied modified Gram-Schmidt.
std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors);

/// Euclidean norm of the component of (x - x0) orthogonal to span(orthonormal).
double orthogonal_residual(const std::vector<Vector>& orthonormal, const Vector& x0, const Vector& x);

/// Orthogonal projection of x onto the affine space x0 + span(orthonormal).
Vector project_onto_affine(const std::vector<Vector>& orthonormal, const Vector& x0, const Vector& x);

/// Membership of x in the invariant polyhedron (x0 + H) ∩ R^S_{>=0}: x is
/// componentwise nonnegative and its displacement from x0 leaves H by at most `tol`.
/// Throws std::invalid_argument on a dimension mismatch or negative tol.
bool invariant_polyhedron_contains(const ReactionNetwork& net, const Vector& x0, const Vector& x, double tol);

}  // namespace crnkit
