#include "crnkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "crnkit/feasibility.hpp"
#include "crnkit/stoichiometry.hpp"

namespace crnkit {

namespace {

bool strictly_positive(const Vector& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
}

void axpy(Vector& y, double a, const Vector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// Relative slack used when deciding whether a step lands on a breakpoint.
constexpr double kBreakpointSlack = 1e-9;

}  // namespace

double monomial(const Vector& x, const Vector& y) {
    double log_sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0) log_sum += y[i] * std::log(x[i]);
    }
    return std::exp(log_sum);
}

Vector mass_action_rhs(const ReactionNetwork& net, const Vector& rates, const Vector& x) {
    Vector out(x.size(), 0.0);
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        const auto& reaction = net.reactions()[r];
        const double speed = rates[r] * monomial(x, reaction.reactant.coefficients());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += speed * (reaction.product[i] - reaction.reactant[i]);
        }
    }
    return out;
}

FiberMembership fiber_contains(const SubconfinedSystem& system, const Vector& x, const Vector& v, double tol) {
    const auto& net = system.network();
    if (x.size() != net.species().size() || v.size() != x.size()) {
        throw std::invalid_argument("fiber query has wrong dimension");
    }
    FiberMembership out;
    if (!strictly_positive(x) || !system.allotment().closure_contains(x)) {
        out.residual = kInfinity;
        return out;
    }
    std::vector<Vector> columns;
    for (const auto& reaction : net.reactions()) {
        Vector column = flux(reaction);
        const double m = monomial(x, reaction.reactant.coefficients());
        for (double& c : column) c *= m;
        columns.push_back(std::move(column));
    }
    const auto fit = box_fit(columns, system.tempering().intervals(), v);
    out.coefficients = fit.coefficients;
    out.residual = fit.residual;
    out.contains = fit.residual <= tol;
    return out;
}

std::string to_string(RateScheme scheme) {
    switch (scheme) {
        case RateScheme::Midpoint: return "midpoint";
        case RateScheme::UniformRandom: return "uniform-random";
        case RateScheme::ExtremalCycling: return "extremal-cycling";
    }
    return "unknown";
}

RateScheme parse_rate_scheme(const std::string& text) {
    if (text == "midpoint") return RateScheme::Midpoint;
    if (text == "uniform-random") return RateScheme::UniformRandom;
    if (text == "extremal-cycling") return RateScheme::ExtremalCycling;
    throw std::invalid_argument("unknown rate scheme: " + text);
}

std::size_t RatePath::piece_at(double t) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    return it == breakpoints.begin() ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

RatePath sample_rate_path(const SubconfinedSystem& system, double dt, double t_end, std::uint64_t seed,
                          RateScheme scheme) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!(t_end >= dt) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be at least dt");

    const auto& kappa = system.tempering().intervals();
    const auto pieces = static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - kBreakpointSlack)));
    std::mt19937_64 rng(seed);

    RatePath path;
    path.seed = seed;
    path.scheme = scheme;
    for (std::size_t p = 0; p < pieces; ++p) {
        path.breakpoints.push_back(static_cast<double>(p) * dt);
        Vector values(kappa.size());
        for (std::size_t r = 0; r < kappa.size(); ++r) {
            switch (scheme) {
                case RateScheme::Midpoint: values[r] = kappa[r].midpoint(); break;
                case RateScheme::UniformRandom: {
                    const double u = unit_uniform(rng);
                    values[r] = std::clamp(kappa[r].lo() + u * (kappa[r].hi() - kappa[r].lo()), kappa[r].lo(),
                                           kappa[r].hi());
                    break;
                }
                case RateScheme::ExtremalCycling: values[r] = p % 2 == 0 ? kappa[r].lo() : kappa[r].hi(); break;
            }
        }
        path.values.push_back(std::move(values));
    }
    return path;
}

std::string to_string(TrajectoryStatus status) {
    switch (status) {
        case TrajectoryStatus::Completed: return "completed";
        case TrajectoryStatus::FloorAbort: return "floor-abort";
        case TrajectoryStatus::CeilingAbort: return "ceiling-abort";
    }
    return "unknown";
}

Trajectory simulate(const SubconfinedSystem& system, const Vector& x_init, const RatePath& path, double t_end,
                    double h) {
    const auto& net = system.network();
    if (x_init.size() != net.species().size()) throw std::invalid_argument("initial state has wrong dimension");
    if (!strictly_positive(x_init)) throw std::invalid_argument("initial state must be strictly positive");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
    if (path.breakpoints.empty() || path.values.size() != path.breakpoints.size()) {
        throw std::invalid_argument("rate path is empty or malformed");
    }

    Trajectory out;
    out.rate_path = path;
    out.times.push_back(0.0);
    out.states.push_back(x_init);
    if (!invariant_polyhedron_contains(net, system.base_point(), x_init, 1e-9)) {
        out.warnings.push_back("initial state is off the invariant polyhedron of the base point");
    }

    const std::size_t n = x_init.size();
    Vector x = x_init;
    Vector stage(n);
    auto rhs = [&](const Vector& rates, const Vector& at) { return mass_action_rhs(net, rates, at); };

    for (std::size_t piece = 0; piece < path.breakpoints.size(); ++piece) {
        const double start = path.breakpoints[piece];
        if (start >= t_end) break;
        const double stop = piece + 1 < path.breakpoints.size() ? std::min(path.breakpoints[piece + 1], t_end) : t_end;
        const Vector& rates = path.values[piece];

        for (std::size_t k = 1;; ++k) {
            double t_next = start + static_cast<double>(k) * h;
            if (t_next >= stop - kBreakpointSlack * h) t_next = stop;
            const double t = out.times.back();
            const double step = t_next - t;

            const Vector k1 = rhs(rates, x);
            stage = x;
            axpy(stage, 0.5 * step, k1);
            const bool ok2 = strictly_positive(stage);
            const Vector k2 = ok2 ? rhs(rates, stage) : Vector{};
            Vector k3, k4;
            bool ok = ok2;
            if (ok) {
                stage = x;
                axpy(stage, 0.5 * step, k2);
                ok = strictly_positive(stage);
            }
            if (ok) {
                k3 = rhs(rates, stage);
                stage = x;
                axpy(stage, step, k3);
                ok = strictly_positive(stage);
            }
            Vector next = x;
            if (ok) {
                k4 = rhs(rates, stage);
                for (std::size_t i = 0; i < n; ++i) {
                    next[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            } else {
                axpy(next, step, k1);
            }

            for (double v : next) {
                if (std::isnan(v)) throw IntegrationError("non-finite state during integration", t, x);
            }
            const bool below = !ok || std::any_of(next.begin(), next.end(), [](double v) { return v <= kPositivityFloor; });
            const bool above = std::any_of(next.begin(), next.end(), [](double v) { return v >= kOverflowCeiling; });
            if (below || above) {
                out.status = below ? TrajectoryStatus::FloorAbort : TrajectoryStatus::CeilingAbort;
                out.abort_state = next;
                return out;
            }
            x = std::move(next);
            out.times.push_back(t_next);
            out.states.push_back(x);
            if (t_next == stop) break;
        }
    }
    return out;
}

double conservation_residual(const ReactionNetwork& net, const Trajectory& trajectory) {
    if (trajectory.states.empty()) return 0.0;
    const auto ortho = orthonormalize(stoichiometric_basis(net));
    double worst = 0.0;
    for (const auto& x : trajectory.states) {
        worst = std::max(worst, orthogonal_residual(ortho, trajectory.states.front(), x));
    }
    return worst;
}

double lyapunov_value(const Vector& x, const Vector& alpha) {
    if (x.size() != alpha.size()) throw std::invalid_argument("dimension mismatch");
    double g = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(alpha[i] > 0.0)) throw std::invalid_argument("arguments must be strictly positive");
        g += x[i] * (std::log(x[i] / alpha[i]) - 1.0);
    }
    return g;
}

}  // namespace crnkit
