#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

namespace {

Vector flux_of(const crnkit::Reaction& r) {
    Vector v(r.reactant.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.product[i] - r.reactant[i];
    return v;
}

std::vector<std::vector<bool>> reachability(const ReactionNetwork& net) {
    const auto n = net.complexes().size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        reach[*net.complex_index(net.reactions()[r].reactant)][*net.complex_index(net.reactions()[r].product)] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

}  // namespace

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Vector> sphere_grid(std::size_t dim, std::size_t count) {
    std::vector<Vector> out;
    if (dim == 1) return {{1.0}, {-1.0}};
    if (dim == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
            out.push_back({std::cos(a), std::sin(a)});
        }
        return out;
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
        const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
        const double r = std::sqrt(1.0 - z * z);
        const double phi = golden * static_cast<double>(k);
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

bool w_endotactic(const ReactionNetwork& net, const Vector& w, double tol) {
    double top = -INFINITY;
    for (const auto& r : net.reactions()) {
        if (std::abs(dot(w, flux_of(r))) > tol) top = std::max(top, dot(w, r.reactant.coefficients()));
    }
    for (const auto& r : net.reactions()) {
        const double along = dot(w, flux_of(r));
        if (std::abs(along) > tol && dot(w, r.reactant.coefficients()) >= top - tol && along > 0.0) return false;
    }
    return true;
}

bool w_strong(const ReactionNetwork& net, const Vector& w, double tol) {
    bool orthogonal = true;
    double top = -INFINITY;
    for (const auto& r : net.reactions()) {
        if (std::abs(dot(w, flux_of(r))) > tol) orthogonal = false;
        top = std::max(top, dot(w, r.reactant.coefficients()));
    }
    if (orthogonal) return true;
    for (const auto& r : net.reactions()) {
        if (dot(w, r.reactant.coefficients()) >= top - tol && dot(w, flux_of(r)) < -tol) return true;
    }
    return false;
}

bool strongly_connected(const ReactionNetwork& net) {
    const auto reach = reachability(net);
    for (const auto& row : reach) {
        if (std::find(row.begin(), row.end(), false) != row.end()) return false;
    }
    return true;
}

bool weakly_reversible(const ReactionNetwork& net) {
    const auto reach = reachability(net);
    for (const auto& r : net.reactions()) {
        if (!reach[*net.complex_index(r.product)][*net.complex_index(r.reactant)]) return false;
    }
    return true;
}

bool reversible(const ReactionNetwork& net) {
    for (const auto& r : net.reactions()) {
        const crnkit::Reaction back{r.product, r.reactant};
        if (std::find(net.reactions().begin(), net.reactions().end(), back) == net.reactions().end()) return false;
    }
    return true;
}

std::size_t rank(std::vector<Vector> rows, double tol) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t best = r;
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (std::abs(rows[i][c]) > std::abs(rows[best][c])) best = i;
        }
        if (std::abs(rows[best][c]) <= tol) continue;
        std::swap(rows[r], rows[best]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            const double f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace oracle
