#include "crnkit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "crnkit/feasibility.hpp"
#include "crnkit/stoichiometry.hpp"

namespace crnkit {

namespace {

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vector difference(const Vector& a, const Vector& b) {
    Vector d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

Vector negated(Vector v) {
    for (double& x : v) x = -x;
    return v;
}

bool is_zero_vector(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

void check_size(const ReactionNetwork& net, std::size_t limit) {
    if (net.reactions().size() > limit) {
        throw std::length_error("network has " + std::to_string(net.reactions().size()) +
                                " reactions; the exact deciders are capped at " + std::to_string(limit));
    }
}

void check_direction(const ReactionNetwork& net, const Vector& w) {
    if (w.size() != net.species().size()) throw std::invalid_argument("direction has wrong dimension");
    for (double x : w) {
        if (!std::isfinite(x)) throw std::invalid_argument("direction must be finite");
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> linkage_classes(const ReactionNetwork& net) {
    const std::size_t n = net.complexes().size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        const auto a = find(net.reactant_index(r));
        const auto b = find(net.product_index(r));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto root = find(c);
        if (slot[root] == n) {
            slot[root] = classes.size();
            classes.emplace_back();
        }
        classes[slot[root]].push_back(c);
    }
    return classes;
}

std::vector<std::vector<std::size_t>> strong_components(const ReactionNetwork& net) {
    const std::size_t n = net.complexes().size();
    std::vector<std::vector<std::size_t>> graph(n);
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        graph[net.reactant_index(r)].push_back(net.product_index(r));
    }

    constexpr long kUnvisited = -1;
    std::vector<long> number(n, kUnvisited);
    std::vector<long> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    long counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        number[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto u : graph[v]) {
            if (number[u] == kUnvisited) {
                visit(u);
                low[v] = std::min(low[v], low[u]);
            } else if (on_stack[u]) {
                low[v] = std::min(low[v], number[u]);
            }
        }
        if (low[v] == number[v]) {
            std::vector<std::size_t> component;
            std::size_t u;
            do {
                u = stack.back();
                stack.pop_back();
                on_stack[u] = false;
                component.push_back(u);
            } while (u != v);
            std::sort(component.begin(), component.end());
            components.push_back(std::move(component));
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (number[v] == kUnvisited) visit(v);
    }
    return components;
}

bool is_integer(const ReactionNetwork& net) {
    for (const auto& c : net.complexes()) {
        for (double x : c.coefficients()) {
            if (std::floor(x) != x) return false;
        }
    }
    return true;
}

bool is_chemical(const ReactionNetwork& net) {
    if (!is_integer(net)) return false;
    for (const auto& c : net.complexes()) {
        for (double x : c.coefficients()) {
            if (x < 0.0) return false;
        }
    }
    return true;
}

bool is_reversible(const ReactionNetwork& net) {
    std::set<Reaction> present(net.reactions().begin(), net.reactions().end());
    return std::all_of(net.reactions().begin(), net.reactions().end(),
                       [&](const Reaction& r) { return present.count(r.reversed()) > 0; });
}

bool is_strongly_connected(const ReactionNetwork& net) { return strong_components(net).size() <= 1; }

bool is_weakly_reversible(const ReactionNetwork& net) {
    const auto components = strong_components(net);
    std::vector<std::size_t> id(net.complexes().size());
    for (std::size_t k = 0; k < components.size(); ++k) {
        for (auto c : components[k]) id[c] = k;
    }
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        if (id[net.reactant_index(r)] != id[net.product_index(r)]) return false;
    }
    return true;
}

WSupportReport w_support(const ReactionNetwork& net, const Vector& w) {
    check_direction(net, w);
    WSupportReport report;
    report.w = w;
    double best = -kInfinity;
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        if (std::abs(dot(w, flux(net.reactions()[r]))) > kOrthogonalityTolerance) {
            report.essential.push_back(r);
            best = std::max(best, dot(w, net.reactions()[r].reactant.coefficients()));
        }
    }
    std::set<std::size_t> support;
    for (auto r : report.essential) {
        if (dot(w, net.reactions()[r].reactant.coefficients()) >= best - kOrthogonalityTolerance) {
            support.insert(net.reactant_index(r));
        }
    }
    report.support.assign(support.begin(), support.end());
    return report;
}

WEndotacticResult is_w_endotactic(const ReactionNetwork& net, const Vector& w) {
    const auto report = w_support(net, w);
    for (auto r : report.essential) {
        const bool in_support = std::binary_search(report.support.begin(), report.support.end(), net.reactant_index(r));
        if (in_support && dot(w, flux(net.reactions()[r])) > 0.0) return {false, r};
    }
    return {};
}

bool satisfies_strong_condition(const ReactionNetwork& net, const Vector& w) {
    check_direction(net, w);
    const auto& reactions = net.reactions();
    const bool orthogonal = std::all_of(reactions.begin(), reactions.end(), [&](const Reaction& r) {
        return std::abs(dot(w, flux(r))) <= kOrthogonalityTolerance;
    });
    if (orthogonal) return true;
    double best = -kInfinity;
    for (const auto& r : reactions) best = std::max(best, dot(w, r.reactant.coefficients()));
    return std::any_of(reactions.begin(), reactions.end(), [&](const Reaction& r) {
        return dot(w, r.reactant.coefficients()) >= best - kOrthogonalityTolerance &&
               dot(w, flux(r)) < -kOrthogonalityTolerance;
    });
}

GeometricVerdict is_endotactic(const ReactionNetwork& net, std::size_t reaction_limit) {
    check_size(net, reaction_limit);
    const std::size_t dim = net.species().size();
    const auto& reactions = net.reactions();

    std::vector<std::size_t> nontrivial;
    for (std::size_t r = 0; r < reactions.size(); ++r) {
        if (!is_zero_vector(flux(reactions[r]))) nontrivial.push_back(r);
    }

    GeometricVerdict out;
    for (auto r : nontrivial) {
        std::vector<std::size_t> others;
        for (auto q : nontrivial) {
            if (q != r) others.push_back(q);
        }
        const Vector flux_r = flux(reactions[r]);
        const auto& reactant_r = reactions[r].reactant.coefficients();
        for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
            LinearConstraintSystem lp(dim);
            lp.add(flux_r, Relation::GreaterEqual, 1.0);
            for (std::size_t k = 0; k < others.size(); ++k) {
                const auto& q = reactions[others[k]];
                if (mask & (std::size_t{1} << k)) {
                    lp.add(difference(q.reactant.coefficients(), reactant_r), Relation::LessEqual, 0.0);
                } else {
                    lp.add(flux(q), Relation::Equal, 0.0);
                }
            }
            const auto solved = feasible(lp);
            if (solved.status == FeasibilityStatus::Infeasible) continue;
            if (!solved.feasible()) {
                out.verdict = Verdict::Indeterminate;
                out.note = "indeterminate subsystem for reaction " + std::to_string(r) + ", subset mask " +
                           std::to_string(mask) + ": " + solved.diagnostic;
                return out;
            }
            const auto check = is_w_endotactic(net, solved.witness);
            if (check.endotactic) {
                out.verdict = Verdict::Indeterminate;
                out.note = "witness for reaction " + std::to_string(r) + " failed the direct re-check";
                return out;
            }
            out.verdict = Verdict::False;
            out.witness = solved.witness;
            out.violator = check.violator;
            return out;
        }
    }
    out.verdict = Verdict::True;
    return out;
}

GeometricVerdict is_strongly_endotactic(const ReactionNetwork& net, std::size_t reaction_limit) {
    auto endo = is_endotactic(net, reaction_limit);
    if (endo.verdict != Verdict::True) {
        if (endo.verdict == Verdict::False) endo.note = "not endotactic";
        return endo;
    }

    GeometricVerdict out;
    const std::size_t dim = net.species().size();
    const auto& reactions = net.reactions();
    const auto basis = stoichiometric_basis(net);

    std::vector<Vector> reactants;
    std::vector<std::vector<std::size_t>> fired_from;
    for (std::size_t r = 0; r < reactions.size(); ++r) {
        const auto& y = reactions[r].reactant.coefficients();
        auto it = std::find(reactants.begin(), reactants.end(), y);
        if (it == reactants.end()) {
            reactants.push_back(y);
            fired_from.emplace_back();
            it = reactants.end() - 1;
        }
        fired_from[static_cast<std::size_t>(it - reactants.begin())].push_back(r);
    }

    for (std::size_t mask = 1; mask < (std::size_t{1} << reactants.size()); ++mask) {
        std::vector<std::size_t> inside;
        std::vector<std::size_t> outside;
        for (std::size_t k = 0; k < reactants.size(); ++k) {
            ((mask >> k) & 1 ? inside : outside).push_back(k);
        }
        const Vector& top = reactants[inside.front()];
        for (const auto& h : basis) {
            for (int sign : {1, -1}) {
                LinearConstraintSystem lp(dim);
                for (std::size_t k = 1; k < inside.size(); ++k) {
                    lp.add(difference(reactants[inside[k]], top), Relation::Equal, 0.0);
                }
                for (auto k : outside) lp.add(difference(top, reactants[k]), Relation::GreaterEqual, 1.0);
                for (auto k : inside) {
                    for (auto r : fired_from[k]) lp.add(flux(reactions[r]), Relation::GreaterEqual, 0.0);
                }
                lp.add(sign > 0 ? h : negated(h), Relation::GreaterEqual, 1.0);

                const auto solved = feasible(lp);
                if (solved.status == FeasibilityStatus::Infeasible) continue;
                if (!solved.feasible()) {
                    out.verdict = Verdict::Indeterminate;
                    out.note = "indeterminate subsystem for reactant mask " + std::to_string(mask) + ": " +
                               solved.diagnostic;
                    return out;
                }
                if (satisfies_strong_condition(net, solved.witness)) {
                    out.verdict = Verdict::Indeterminate;
                    out.note = "witness for reactant mask " + std::to_string(mask) + " failed the direct re-check";
                    return out;
                }
                out.verdict = Verdict::False;
                out.witness = solved.witness;
                out.note = "maximal reactants fire no strictly inward reaction";
                return out;
            }
        }
    }
    out.verdict = Verdict::True;
    return out;
}

ClassificationReport classify(const ReactionNetwork& net, std::size_t reaction_limit) {
    ClassificationReport report;
    report.integer = is_integer(net);
    report.chemical = is_chemical(net);
    report.reversible = is_reversible(net);
    report.strongly_connected = is_strongly_connected(net);
    report.weakly_reversible = is_weakly_reversible(net);
    report.linkage_class_count = linkage_classes(net).size();
    report.stoichiometric_rank = stoichiometric_basis(net).size();
    report.endotactic = is_endotactic(net, reaction_limit);
    if (report.endotactic.verdict == Verdict::True) {
        report.strongly_endotactic = is_strongly_endotactic(net, reaction_limit);
    } else {
        report.strongly_endotactic = report.endotactic;
        if (report.endotactic.verdict == Verdict::False) report.strongly_endotactic.note = "not endotactic";
    }
    return report;
}

}  // namespace crnkit
