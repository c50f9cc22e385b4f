#include "crnkit/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crnkit/errors.hpp"

namespace crnkit {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Phase-one optimum (sum of artificials, rows normalized) below which the system is
// feasible, and above which it is infeasible. In between: indeterminate.
constexpr double kFeasibleBand = 1e-9;
constexpr double kInfeasibleBand = 1e-7;

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, kNone) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, cols_); }
    double& cost(std::size_t j) { return at(rows_, j); }
    double& objective() { return at(rows_, cols_); }
    std::size_t& basic(std::size_t i) { return basis_[i]; }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
            if (i < rows_ && rhs(i) < 0.0 && rhs(i) > -1e-13) rhs(i) = 0.0;
        }
        basis_[r] = c;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

enum class Outcome { Optimal, Unbounded, IterationLimit };

// Minimizes the cost row over columns marked allowed, using Bland's smallest-index rule.
Outcome run_simplex(Tableau& t, const std::vector<bool>& allowed, std::size_t max_iterations) {
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        std::size_t enter = kNone;
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (allowed[j] && t.cost(j) < -kCostEps) {
                enter = j;
                break;
            }
        }
        if (enter == kNone) return Outcome::Optimal;

        std::size_t leave = kNone;
        double best = 0.0;
        for (std::size_t i = 0; i < t.rows(); ++i) {
            const double a = t.at(i, enter);
            if (a <= kPivotEps) continue;
            const double ratio = std::max(0.0, t.rhs(i)) / a;
            if (leave == kNone || ratio < best - 1e-12 ||
                (std::abs(ratio - best) <= 1e-12 && t.basic(i) < t.basic(leave))) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == kNone) return Outcome::Unbounded;
        t.pivot(leave, enter);
    }
    return Outcome::IterationLimit;
}

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

LinearConstraintSystem::LinearConstraintSystem(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw std::invalid_argument("linear system needs at least one variable");
}

LinearConstraintSystem& LinearConstraintSystem::add(Vector coefficients, Relation relation, double bound) {
    if (coefficients.size() != dimension_) throw std::invalid_argument("constraint has wrong dimension");
    if (!std::isfinite(bound)) throw std::invalid_argument("constraint bound must be finite");
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw std::invalid_argument("constraint coefficient must be finite");
    }
    constraints_.push_back({std::move(coefficients), relation, bound});
    return *this;
}

LinearConstraintSystem& LinearConstraintSystem::minimize(Vector objective) {
    if (objective.size() != dimension_) throw std::invalid_argument("objective has wrong dimension");
    objective_ = std::move(objective);
    return *this;
}

double LinearConstraintSystem::max_violation(const Vector& point) const {
    double worst = 0.0;
    for (const auto& c : constraints_) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < dimension_; ++j) lhs += c.coefficients[j] * point[j];
        double v = 0.0;
        switch (c.relation) {
            case Relation::GreaterEqual: v = c.bound - lhs; break;
            case Relation::LessEqual: v = lhs - c.bound; break;
            case Relation::Equal: v = std::abs(lhs - c.bound); break;
        }
        worst = std::max(worst, v);
    }
    return worst;
}

FeasibilityResult feasible(const LinearConstraintSystem& system) {
    const std::size_t n = system.dimension();
    FeasibilityResult result;

    // Normalize rows; settle constant rows immediately.
    struct Row {
        Vector a;
        Relation rel;
        double b;
    };
    std::vector<Row> rows;
    for (const auto& c : system.constraints()) {
        const double scale = max_abs(c.coefficients);
        if (scale == 0.0) {
            const bool ok = (c.relation == Relation::GreaterEqual && 0.0 >= c.bound) ||
                            (c.relation == Relation::LessEqual && 0.0 <= c.bound) ||
                            (c.relation == Relation::Equal && c.bound == 0.0);
            if (!ok) {
                result.status = FeasibilityStatus::Infeasible;
                result.diagnostic = "constant constraint violated";
                return result;
            }
            continue;
        }
        Row r{c.coefficients, c.relation, c.bound / scale};
        for (double& x : r.a) x /= scale;
        rows.push_back(std::move(r));
    }

    const std::size_t m = rows.size();
    std::size_t slacks = 0;
    for (const auto& r : rows) slacks += r.rel == Relation::Equal ? 0 : 1;
    const std::size_t slack0 = 2 * n;
    const std::size_t art0 = slack0 + slacks;
    const std::size_t cols = art0 + m;

    Tableau t(m, cols);
    std::size_t next_slack = slack0;
    double b_scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& r = rows[i];
        const double sign = r.b < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            t.at(i, j) = sign * r.a[j];
            t.at(i, n + j) = -sign * r.a[j];
        }
        if (r.rel != Relation::Equal) {
            t.at(i, next_slack) = sign * (r.rel == Relation::LessEqual ? 1.0 : -1.0);
            ++next_slack;
        }
        t.at(i, art0 + i) = 1.0;
        t.rhs(i) = sign * r.b;
        t.basic(i) = art0 + i;
        b_scale = std::max(b_scale, std::abs(r.b));
    }

    // Phase one: minimize the sum of artificials.
    for (std::size_t j = 0; j < art0; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += t.at(i, j);
        t.cost(j) = -s;
    }
    {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += t.rhs(i);
        t.objective() = -s;
    }
    const std::size_t budget = 100 * (m + cols) + 1000;
    std::vector<bool> allowed(cols, true);
    if (run_simplex(t, allowed, budget) != Outcome::Optimal) {
        result.diagnostic = "phase one did not terminate";
        return result;
    }
    const double infeasibility = -t.objective();
    if (infeasibility > kInfeasibleBand * b_scale) {
        result.status = FeasibilityStatus::Infeasible;
        return result;
    }
    if (infeasibility > kFeasibleBand * b_scale) {
        result.diagnostic = "phase-one optimum " + std::to_string(infeasibility) + " is ambiguous";
        return result;
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basic(i) < art0) continue;
        std::size_t best = kNone;
        for (std::size_t j = 0; j < art0; ++j) {
            if (std::abs(t.at(i, j)) > 1e-9 && (best == kNone || std::abs(t.at(i, j)) > std::abs(t.at(i, best)))) {
                best = j;
            }
        }
        if (best != kNone) t.pivot(i, best);
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;

    Vector costs(cols, 0.0);
    if (system.objective()) {
        const auto& c = *system.objective();
        for (std::size_t j = 0; j < n; ++j) {
            costs[j] = c[j];
            costs[n + j] = -c[j];
        }
        for (std::size_t j = 0; j < cols; ++j) {
            double z = 0.0;
            for (std::size_t i = 0; i < m; ++i) z += costs[t.basic(i)] * t.at(i, j);
            t.cost(j) = costs[j] - z;
        }
        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i) z += costs[t.basic(i)] * t.rhs(i);
        t.objective() = -z;
        const auto outcome = run_simplex(t, allowed, budget);
        if (outcome == Outcome::Unbounded) {
            result.status = FeasibilityStatus::Unbounded;
            return result;
        }
        if (outcome == Outcome::IterationLimit) {
            result.diagnostic = "phase two did not terminate";
            return result;
        }
    }

    Vector x(cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) x[t.basic(i)] = t.rhs(i);
    Vector w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = x[j] - x[n + j];

    const double violation = system.max_violation(w);
    if (violation > kWitnessTolerance) {
        result.diagnostic = "witness violates a constraint by " + std::to_string(violation);
        return result;
    }
    result.status = FeasibilityStatus::Feasible;
    if (system.objective()) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += (*system.objective())[j] * w[j];
        result.optimum = v;
    }
    result.witness = std::move(w);
    return result;
}

BoxFit box_fit(const std::vector<Vector>& columns, const std::vector<PositiveInterval>& boxes,
               const Vector& target) {
    if (columns.size() != boxes.size()) throw std::invalid_argument("box_fit needs one box per column");
    const std::size_t d = target.size();
    for (const auto& c : columns) {
        if (c.size() != d) throw std::invalid_argument("box_fit column has wrong dimension");
    }

    auto residual_of = [&](const Vector& k) {
        double worst = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double s = -target[i];
            for (std::size_t j = 0; j < columns.size(); ++j) s += k[j] * columns[j][i];
            worst = std::max(worst, std::abs(s));
        }
        return worst;
    };

    BoxFit fit;
    fit.coefficients.resize(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) fit.coefficients[j] = boxes[j].lo();
    if (columns.empty() || d == 0) {
        fit.residual = residual_of(fit.coefficients);
        return fit;
    }

    // k_j = lo_j + span_j * u_j with u_j in [0, 1] (or u_j >= 0 for unbounded boxes);
    // degenerate boxes are fixed and folded into the target.
    std::vector<std::size_t> free_cols;
    std::vector<double> spans;
    Vector shifted = target;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < d; ++i) shifted[i] -= boxes[j].lo() * columns[j][i];
        const double span = boxes[j].hi() == kInfinity ? 1.0 : boxes[j].hi() - boxes[j].lo();
        if (span > 0.0 && max_abs(columns[j]) > 0.0) {
            free_cols.push_back(j);
            spans.push_back(span);
        }
    }
    if (free_cols.empty()) {
        fit.residual = residual_of(fit.coefficients);
        return fit;
    }

    double scale = max_abs(shifted);
    for (std::size_t f = 0; f < free_cols.size(); ++f) scale = std::max(scale, spans[f] * max_abs(columns[free_cols[f]]));
    if (scale == 0.0) scale = 1.0;

    const std::size_t nu = free_cols.size();
    LinearConstraintSystem lp(nu + 1);
    auto unit = [&](std::size_t idx, double v) {
        Vector e(nu + 1, 0.0);
        e[idx] = v;
        return e;
    };
    for (std::size_t f = 0; f < nu; ++f) {
        lp.add(unit(f, 1.0), Relation::GreaterEqual, 0.0);
        if (boxes[free_cols[f]].hi() != kInfinity) lp.add(unit(f, 1.0), Relation::LessEqual, 1.0);
    }
    lp.add(unit(nu, 1.0), Relation::GreaterEqual, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        Vector row(nu + 1, 0.0);
        for (std::size_t f = 0; f < nu; ++f) row[f] = spans[f] * columns[free_cols[f]][i] / scale;
        const double rhs = shifted[i] / scale;
        Vector upper = row;
        upper[nu] = -1.0;
        lp.add(std::move(upper), Relation::LessEqual, rhs);
        row[nu] = 1.0;
        lp.add(std::move(row), Relation::GreaterEqual, rhs);
    }
    lp.minimize(unit(nu, 1.0));

    const auto solved = feasible(lp);
    if (!solved.feasible()) {
        throw NumericalIndeterminacy("box_fit: linear program not certified (" + solved.diagnostic + ")");
    }
    for (std::size_t f = 0; f < nu; ++f) {
        double u = std::max(0.0, solved.witness[f]);
        if (boxes[free_cols[f]].hi() != kInfinity) u = std::min(1.0, u);
        const std::size_t j = free_cols[f];
        fit.coefficients[j] = boxes[j].hi() == kInfinity ? boxes[j].lo() + u
                                                         : std::min(boxes[j].hi(), boxes[j].lo() + spans[f] * u);
    }
    fit.residual = residual_of(fit.coefficients);
    return fit;
}

}  // namespace crnkit
