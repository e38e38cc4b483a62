#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace apt::exact {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;

/// Basis of {x : row . x = 0 for all rows}, each vector primitive with a positive
/// leading entry, one per free column in ascending column order.
std::vector<IntegerVector> integer_kernel_basis(const std::vector<IntegerVector>& rows, std::size_t dimension);

/// Rank over the rationals.
std::size_t rank(const std::vector<IntegerVector>& rows, std::size_t dimension);

enum class Side { rows, columns };

/// All <-minimal nonzero x >= 0 with M x = 0 (side == columns, x indexes columns)
/// or M^T x = 0 (side == rows, x indexes rows); lexicographically sorted.
std::vector<IntegerVector> minimal_semipositive_solutions(const std::vector<IntegerVector>& matrix,
                                                          std::size_t columns, Side side);

enum class Relation { equal, less_equal, greater_equal };

using Term = std::pair<std::size_t, Rational>;

struct Constraint {
    std::vector<Term> terms;
    Relation relation;
    Rational constant;
};

/// Integer variables with optional bounds plus linear constraints over them.
/// Strict inequalities are not representable; encode a < b as a <= b - 1.
class LinearSystem {
  public:
    struct Variable {
        std::string name;
        std::optional<Integer> lower;
        std::optional<Integer> upper;
    };

    std::size_t add_variable(std::string name, std::optional<Integer> lower = Integer(0),
                             std::optional<Integer> upper = std::nullopt);
    void add_constraint(std::vector<Term> terms, Relation relation, Rational constant);
    void set_objective(std::vector<Term> minimize) { objective_ = std::move(minimize); }

    std::size_t num_variables() const noexcept { return variables_.size(); }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const std::optional<std::vector<Term>>& objective() const noexcept { return objective_; }

    /// Homogeneous-or-negative right-hand sides and bounds only of the form x >= 0:
    /// any rational solution scales to an integer one.
    bool scaling_applies() const;
    /// Every variable has both bounds.
    bool boxed() const;
    bool satisfied_by(const std::vector<Integer>& values) const;

  private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::optional<std::vector<Term>> objective_;
};

enum class Feasibility { feasible, infeasible, bound_exceeded };

struct Solution {
    Feasibility status = Feasibility::infeasible;
    std::vector<Integer> values;
};

struct SolverOptions {
    /// Branch-and-bound node budget for systems without a finite box.
    std::size_t node_limit = 20'000;
};

Solution solve_integer_feasibility(const LinearSystem& system, const SolverOptions& options = {});

/// Result of the exact rational LP relaxation (exposed for testing).
struct RationalSolution {
    bool feasible = false;
    std::vector<Rational> values;
};
RationalSolution solve_rational(const LinearSystem& system);

} // namespace apt::exact
