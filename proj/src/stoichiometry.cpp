#include "crnkit/stoichiometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crnkit {

namespace {

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<Vector> independent_subset(const std::vector<Vector>& vectors) {
    double scale = 0.0;
    for (const auto& v : vectors) scale = std::max(scale, max_abs(v));
    std::vector<Vector> selected;
    if (scale == 0.0) return selected;

    // Row echelon form of the accepted vectors; each row remembers its pivot column.
    std::vector<Vector> echelon;
    std::vector<std::size_t> pivots;
    for (const auto& v : vectors) {
        Vector r = v;
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            const double f = r[pivots[k]] / echelon[k][pivots[k]];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * echelon[k][j];
            r[pivots[k]] = 0.0;
        }
        std::size_t p = 0;
        for (std::size_t j = 1; j < r.size(); ++j) {
            if (std::abs(r[j]) > std::abs(r[p])) p = j;
        }
        if (r.empty() || std::abs(r[p]) <= kRankTolerance * scale) continue;
        echelon.push_back(std::move(r));
        pivots.push_back(p);
        selected.push_back(v);
    }
    return selected;
}

std::vector<Vector> stoichiometric_basis(const ReactionNetwork& net) {
    std::vector<Vector> fluxes;
    fluxes.reserve(net.reactions().size());
    for (const auto& r : net.reactions()) fluxes.push_back(flux(r));
    return independent_subset(fluxes);
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors) {
    std::vector<Vector> out;
    for (const auto& v : independent_subset(vectors)) {
        Vector u = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : out) {
                const double c = dot(u, q);
                for (std::size_t j = 0; j < u.size(); ++j) u[j] -= c * q[j];
            }
        }
        const double n = std::sqrt(dot(u, u));
        if (n == 0.0) continue;
        for (double& x : u) x /= n;
        out.push_back(std::move(u));
    }
    return out;
}

double orthogonal_residual(const std::vector<Vector>& orthonormal, const Vector& x0, const Vector& x) {
    if (x0.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    Vector d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - x0[i];
    for (const auto& q : orthonormal) {
        const double c = dot(d, q);
        for (std::size_t j = 0; j < d.size(); ++j) d[j] -= c * q[j];
    }
    return std::sqrt(dot(d, d));
}

Vector project_onto_affine(const std::vector<Vector>& orthonormal, const Vector& x0, const Vector& x) {
    if (x0.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    Vector d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - x0[i];
    Vector out = x0;
    for (const auto& q : orthonormal) {
        const double c = dot(d, q);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += c * q[j];
    }
    return out;
}

bool invariant_polyhedron_contains(const ReactionNetwork& net, const Vector& x0, const Vector& x, double tol) {
    const std::size_t n = net.species().size();
    if (x0.size() != n || x.size() != n) throw std::invalid_argument("dimension mismatch with species set");
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
    if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; })) return false;
    return orthogonal_residual(orthonormalize(stoichiometric_basis(net)), x0, x) <= tol;
}

}  // namespace crnkit
