#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crnkit/interval.hpp"
#include "crnkit/network.hpp"

namespace crnkit {

/// Witnesses must satisfy every constraint to within this absolute slack.
inline constexpr double kWitnessTolerance = 1e-8;

enum class Relation { GreaterEqual, LessEqual, Equal };

struct LinearConstraint {
    Vector coefficients;
    Relation relation;
    double bound;
};

/// Closed linear constraints over free real variables, with an optional objective to
/// minimize. Strict homogeneous inequalities are expected to be normalized by the
/// caller (`> 0` becomes `>= 1`).
class LinearConstraintSystem {
public:
    explicit LinearConstraintSystem(std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
    const std::optional<Vector>& objective() const noexcept { return objective_; }

    LinearConstraintSystem& add(Vector coefficients, Relation relation, double bound);
    LinearConstraintSystem& minimize(Vector objective);

    /// Largest violation of any constraint at `point`.
    double max_violation(const Vector& point) const;

private:
    std::size_t dimension_;
    std::vector<LinearConstraint> constraints_;
    std::optional<Vector> objective_;
};

enum class FeasibilityStatus { Feasible, Infeasible, Unbounded, Indeterminate };

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::Indeterminate;
    Vector witness;         // set when Feasible
    double optimum = 0.0;   // objective value at the witness, when an objective was given
    std::string diagnostic;

    bool feasible() const noexcept { return status == FeasibilityStatus::Feasible; }
};

/// Decides feasibility (and optimizes the objective, if any) with a two-phase dense
/// simplex under Bland's rule. Never guesses: when the phase-one optimum falls in the
/// ambiguous band, the pivot budget is exhausted, or the recovered witness misses a
/// constraint by more than kWitnessTolerance, the status is Indeterminate.
FeasibilityResult feasible(const LinearConstraintSystem& system);

struct BoxFit {
    Vector coefficients;
    double residual = 0.0;
};

/// Coefficients k with k_j in the closure of boxes[j] minimizing
/// ||sum_j k_j columns[j] - target||_inf. Throws NumericalIndeterminacy if the
/// underlying program cannot be certified.
BoxFit box_fit(const std::vector<Vector>& columns, const std::vector<PositiveInterval>& boxes,
               const Vector& target);

}  // namespace crnkit
