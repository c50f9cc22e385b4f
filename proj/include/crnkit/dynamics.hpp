#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnkit/network.hpp"
#include "crnkit/system.hpp"

namespace crnkit {

inline constexpr double kPositivityFloor = 1e-12;
inline constexpr double kOverflowCeiling = 1e12;

/// x^y for real exponents, as exp(sum y_i log x_i); zero exponents are skipped so
/// that x_i = 0 is harmless where y_i = 0.
double monomial(const Vector& x, const Vector& y);

/// Sum over reactions of rates[r] * x^{reactant r} * flux r.
Vector mass_action_rhs(const ReactionNetwork& net, const Vector& rates, const Vector& x);

struct FiberMembership {
    bool contains = false;
    double residual = 0.0;
    Vector coefficients;  // the fitted rate per reaction
};

/// Closest point of the mass-action fiber over x to v, in the max norm. Outside the
/// positive orthant or the closure of the allotment the fiber is empty: contains is
/// false and the residual infinite.
FiberMembership fiber_contains(const SubconfinedSystem& system, const Vector& x, const Vector& v, double tol);

enum class RateScheme { Midpoint, UniformRandom, ExtremalCycling };

std::string to_string(RateScheme scheme);
/// Accepts "midpoint", "uniform-random", "extremal-cycling".
RateScheme parse_rate_scheme(const std::string& text);

/// Piecewise-constant, right-continuous rate selection. Piece i covers
/// [breakpoints[i], breakpoints[i+1]); the last piece extends forever.
struct RatePath {
    std::vector<double> breakpoints;
    std::vector<Vector> values;  // values[piece][reaction]
    std::uint64_t seed = 0;
    RateScheme scheme = RateScheme::Midpoint;

    std::size_t piece_at(double t) const;
    const Vector& at(double t) const { return values[piece_at(t)]; }
};

RatePath sample_rate_path(const SubconfinedSystem& system, double dt, double t_end, std::uint64_t seed,
                          RateScheme scheme);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
template <class Engine>
double unit_uniform(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class TrajectoryStatus { Completed, FloorAbort, CeilingAbort };

std::string to_string(TrajectoryStatus status);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    RatePath rate_path;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    /// The rejected state that triggered an abort.
    std::optional<Vector> abort_state;
    std::vector<std::string> warnings;

    bool aborted() const noexcept { return status != TrajectoryStatus::Completed; }
};

/// Raised when the integrator produces a non-finite state.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& msg, double time, Vector last_state)
        : std::runtime_error(msg), time_(time), last_state_(std::move(last_state)) {}
    double time() const noexcept { return time_; }
    const Vector& last_state() const noexcept { return last_state_; }

private:
    double time_;
    Vector last_state_;
};

/// Classical RK4 with step h. Steps never cross a rate breakpoint: the last step of
/// each piece is shortened to land on it. Every step is recorded. Integration stops,
/// keeping the samples so far, when a coordinate falls to kPositivityFloor or reaches
/// kOverflowCeiling.
Trajectory simulate(const SubconfinedSystem& system, const Vector& x_init, const RatePath& path, double t_end,
                    double h);

/// Largest distance of a state from the affine space x_init + H.
double conservation_residual(const ReactionNetwork& net, const Trajectory& trajectory);

/// sum_i x_i (log(x_i / alpha_i) - 1).
double lyapunov_value(const Vector& x, const Vector& alpha);

}  // namespace crnkit
