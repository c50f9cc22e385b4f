#pragma once

#include <set>
#include <string>
#include <vector>

#include "crnkit/network.hpp"

namespace crnkit {

/// l(x) = x / (1 + x), componentwise. Requires strictly positive finite input.
Vector to_cube(const Vector& x);
/// Inverse of to_cube, z / (1 - z). Requires z in (0, 1).
Vector to_orthant(const Vector& z);
/// Differential of to_cube at x applied to v: v_i / (1 + x_i)^2.
Vector push_tangent(const Vector& x, const Vector& v);

enum class FaceCoordinate { Free, Zero, One };

/// Face of [0,1]^S: free directions span it, every other coordinate sits at 0 or 1.
class Face {
public:
    Face(SpeciesSet species, std::vector<FaceCoordinate> coordinates);

    /// Vertex with coordinates given by `bits` (0 or 1 per species).
    static Face vertex(SpeciesSet species, const std::vector<int>& bits);
    /// Face with free directions `free` through the vertex `bits` (entries on free
    /// coordinates are ignored).
    static Face along(SpeciesSet species, const SpeciesSubset& free, const std::vector<int>& bits);

    /// Parses one character per species: '0', '1', or '*' for free.
    static Face parse(SpeciesSet species, const std::string& pattern);
    std::string pattern() const;

    const SpeciesSet& species() const noexcept { return species_; }
    const std::vector<FaceCoordinate>& coordinates() const noexcept { return coordinates_; }
    SpeciesSubset free() const;
    SpeciesSubset fixed() const;
    bool is_vertex() const;
    /// Value of a fixed coordinate.
    double value(std::size_t i) const;

    /// Restriction to the coordinates in `kept`.
    Face project(const SpeciesSubset& kept) const;

    friend bool operator==(const Face&, const Face&) = default;

private:
    SpeciesSet species_;
    std::vector<FaceCoordinate> coordinates_;
};

/// Every face F_{S\U}(x): free directions are the removed species, fixed values run
/// over {0,1}^U in binary order (first kept species is the lowest bit).
std::vector<Face> faces_collapsed_by(const SpeciesSet& species, const SpeciesSubset& kept);

/// Box of the eps-block at `face`: fixed coordinates within eps of their value, free
/// coordinates in [eps, 1 - eps]. Requires 0 < eps < 1/2.
bool block_contains(const Face& face, double eps, const Vector& z);

enum class FaceClass { ChargedVertex, Opposite, Neither };

std::string to_string(FaceClass c);

/// Classification against the repulsing set R (species names; names outside S are
/// ignored).
FaceClass classify_face(const Face& face, const std::set<std::string>& repulsing);

/// Euclidean distance from z to the closed face.
double face_distance(const Face& face, const Vector& z);

struct BoundaryDistances {
    std::vector<double> vertices;     // indexed by bitmask, bit i is coordinate i
    std::vector<double> zero_facets;  // distance to {z_i = 0}
    std::vector<double> one_facets;   // distance to {z_i = 1}
    double boundary = 0.0;
};

/// Distances from z in [0,1]^S to the vertices, facets, and boundary of the cube.
/// Vertex distances are omitted above kMaxVertexDimension species.
inline constexpr std::size_t kMaxVertexDimension = 12;
BoundaryDistances boundary_distances(const Vector& z);

}  // namespace crnkit
