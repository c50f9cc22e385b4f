#include "crnkit/cube.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crnkit/interval.hpp"

namespace crnkit {

Vector to_cube(const Vector& x) {
    Vector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i])) throw std::domain_error("to_cube needs a strictly positive point");
        z[i] = x[i] / (1.0 + x[i]);
    }
    return z;
}

Vector to_orthant(const Vector& z) {
    Vector x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0 && z[i] < 1.0)) throw std::domain_error("to_orthant needs a point of the open cube");
        x[i] = z[i] / (1.0 - z[i]);
    }
    return x;
}

Vector push_tangent(const Vector& x, const Vector& v) {
    if (x.size() != v.size()) throw std::invalid_argument("dimension mismatch");
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(x[i] > 0.0)) throw std::domain_error("push_tangent needs a strictly positive point");
        out[i] = v[i] / ((1.0 + x[i]) * (1.0 + x[i]));
    }
    return out;
}

Face::Face(SpeciesSet species, std::vector<FaceCoordinate> coordinates)
    : species_(std::move(species)), coordinates_(std::move(coordinates)) {
    if (coordinates_.size() != species_.size()) throw std::invalid_argument("face needs one coordinate per species");
}

Face Face::vertex(SpeciesSet species, const std::vector<int>& bits) { return along(std::move(species), {}, bits); }

Face Face::along(SpeciesSet species, const SpeciesSubset& free, const std::vector<int>& bits) {
    if (bits.size() != species.size()) throw std::invalid_argument("vertex needs one bit per species");
    std::vector<FaceCoordinate> coords(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (std::binary_search(free.begin(), free.end(), i)) {
            coords[i] = FaceCoordinate::Free;
        } else if (bits[i] == 0 || bits[i] == 1) {
            coords[i] = bits[i] == 0 ? FaceCoordinate::Zero : FaceCoordinate::One;
        } else {
            throw std::invalid_argument("vertex coordinates must be 0 or 1");
        }
    }
    return Face(std::move(species), std::move(coords));
}

Face Face::parse(SpeciesSet species, const std::string& pattern) {
    if (pattern.size() != species.size()) {
        throw std::invalid_argument("face pattern needs one of 0, 1, * per species");
    }
    std::vector<FaceCoordinate> coords;
    for (char c : pattern) {
        switch (c) {
            case '0': coords.push_back(FaceCoordinate::Zero); break;
            case '1': coords.push_back(FaceCoordinate::One); break;
            case '*': coords.push_back(FaceCoordinate::Free); break;
            default: throw std::invalid_argument("face pattern needs one of 0, 1, * per species");
        }
    }
    return Face(std::move(species), std::move(coords));
}

std::string Face::pattern() const {
    std::string out;
    for (auto c : coordinates_) out += c == FaceCoordinate::Free ? '*' : c == FaceCoordinate::Zero ? '0' : '1';
    return out;
}

SpeciesSubset Face::free() const {
    SpeciesSubset out;
    for (std::size_t i = 0; i < coordinates_.size(); ++i) {
        if (coordinates_[i] == FaceCoordinate::Free) out.push_back(i);
    }
    return out;
}

SpeciesSubset Face::fixed() const {
    SpeciesSubset out;
    for (std::size_t i = 0; i < coordinates_.size(); ++i) {
        if (coordinates_[i] != FaceCoordinate::Free) out.push_back(i);
    }
    return out;
}

bool Face::is_vertex() const { return free().empty(); }

double Face::value(std::size_t i) const {
    switch (coordinates_.at(i)) {
        case FaceCoordinate::Zero: return 0.0;
        case FaceCoordinate::One: return 1.0;
        case FaceCoordinate::Free: break;
    }
    throw std::invalid_argument("coordinate is free on this face");
}

Face Face::project(const SpeciesSubset& kept) const {
    std::vector<FaceCoordinate> coords;
    for (auto s : kept) coords.push_back(coordinates_.at(s));
    return Face(species_.restrict(kept), std::move(coords));
}

std::vector<Face> faces_collapsed_by(const SpeciesSet& species, const SpeciesSubset& kept) {
    if (kept.size() >= 8 * sizeof(std::size_t)) throw std::length_error("too many kept species");
    SpeciesSubset removed;
    for (std::size_t s = 0; s < species.size(); ++s) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) removed.push_back(s);
    }
    std::vector<Face> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << kept.size()); ++mask) {
        std::vector<int> bits(species.size(), 0);
        for (std::size_t k = 0; k < kept.size(); ++k) bits[kept[k]] = static_cast<int>((mask >> k) & 1);
        out.push_back(Face::along(species, removed, bits));
    }
    return out;
}

bool block_contains(const Face& face, double eps, const Vector& z) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    if (z.size() != face.coordinates().size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (face.coordinates()[i] == FaceCoordinate::Free) {
            if (z[i] < eps || z[i] > 1.0 - eps) return false;
        } else if (std::abs(z[i] - face.value(i)) > eps) {
            return false;
        }
    }
    return true;
}

std::string to_string(FaceClass c) {
    switch (c) {
        case FaceClass::ChargedVertex: return "charged-vertex";
        case FaceClass::Opposite: return "opposite";
        case FaceClass::Neither: return "neither";
    }
    return "unknown";
}

FaceClass classify_face(const Face& face, const std::set<std::string>& repulsing) {
    bool all_outside_zero = true;
    for (std::size_t i = 0; i < face.coordinates().size(); ++i) {
        if (repulsing.count(face.species().name(i))) continue;
        const auto c = face.coordinates()[i];
        if (c == FaceCoordinate::One) return FaceClass::Opposite;
        if (c != FaceCoordinate::Zero) all_outside_zero = false;
    }
    if (face.is_vertex() && all_outside_zero) return FaceClass::ChargedVertex;
    return FaceClass::Neither;
}

double face_distance(const Face& face, const Vector& z) {
    if (z.size() != face.coordinates().size()) throw std::invalid_argument("dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double d = 0.0;
        if (face.coordinates()[i] == FaceCoordinate::Free) {
            d = z[i] - std::clamp(z[i], 0.0, 1.0);
        } else {
            d = z[i] - face.value(i);
        }
        sq += d * d;
    }
    return std::sqrt(sq);
}

BoundaryDistances boundary_distances(const Vector& z) {
    BoundaryDistances out;
    const std::size_t n = z.size();
    out.boundary = n == 0 ? 0.0 : kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
        out.zero_facets.push_back(std::abs(z[i]));
        out.one_facets.push_back(std::abs(1.0 - z[i]));
        out.boundary = std::min(out.boundary, std::min(z[i], 1.0 - z[i]));
    }
    if (n <= kMaxVertexDimension) {
        out.vertices.resize(std::size_t{1} << n);
        for (std::size_t mask = 0; mask < out.vertices.size(); ++mask) {
            double sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = z[i] - static_cast<double>((mask >> i) & 1);
                sq += d * d;
            }
            out.vertices[mask] = std::sqrt(sq);
        }
    }
    return out;
}

}  // namespace crnkit
