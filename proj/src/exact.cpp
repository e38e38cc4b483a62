#include "apt/exact.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "apt/error.hpp"

namespace apt::exact {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form; returns pivot column per nonzero row.
std::vector<std::size_t> reduce(RationalMatrix& m, std::size_t columns) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
        std::size_t found = row;
        while (found < m.size() && m[found][col] == 0)
            ++found;
        if (found == m.size())
            continue;
        std::swap(m[row], m[found]);
        Rational inv = 1 / m[row][col];
        for (auto& v : m[row])
            v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < columns; ++c)
                if (m[row][c] != 0)
                    m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

RationalMatrix to_rational(const std::vector<IntegerVector>& rows, std::size_t dimension) {
    RationalMatrix m;
    for (const auto& r : rows) {
        if (r.size() != dimension)
            throw InputError("matrix rows differ in dimension");
        m.emplace_back(r.begin(), r.end());
    }
    return m;
}

IntegerVector primitive(const std::vector<Rational>& v) {
    Integer lcm = 1;
    for (const auto& x : v)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    IntegerVector out;
    Integer g = 0;
    for (const auto& x : v) {
        Integer value = x.get_num() * (lcm / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), value.get_mpz_t());
        out.push_back(std::move(value));
    }
    if (g != 0 && g != 1)
        for (auto& x : out)
            x /= g;
    return out;
}

} // namespace

std::vector<IntegerVector> integer_kernel_basis(const std::vector<IntegerVector>& rows, std::size_t dimension) {
    RationalMatrix m = to_rational(rows, dimension);
    auto pivots = reduce(m, dimension);
    std::vector<bool> is_pivot(dimension, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<IntegerVector> basis;
    for (std::size_t free = 0; free < dimension; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(dimension, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        IntegerVector p = primitive(v);
        auto lead = std::find_if(p.begin(), p.end(), [](const Integer& x) { return x != 0; });
        if (lead != p.end() && *lead < 0)
            for (auto& x : p)
                x = -x;
        basis.push_back(std::move(p));
    }
    return basis;
}

std::size_t rank(const std::vector<IntegerVector>& rows, std::size_t dimension) {
    RationalMatrix m = to_rational(rows, dimension);
    return reduce(m, dimension).size();
}

std::vector<IntegerVector> minimal_semipositive_solutions(const std::vector<IntegerVector>& matrix,
                                                          std::size_t columns, Side side) {
    // Normalise to A x = 0 with A given column-wise: image[j] = A e_j.
    const std::size_t rows = matrix.size();
    for (const auto& r : matrix)
        if (r.size() != columns)
            throw InputError("matrix rows differ in dimension");
    const std::size_t unknowns = side == Side::columns ? columns : rows;
    const std::size_t equations = side == Side::columns ? rows : columns;
    std::vector<IntegerVector> image(unknowns, IntegerVector(equations, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < columns; ++j) {
            if (side == Side::columns)
                image[j][i] = matrix[i][j];
            else
                image[i][j] = matrix[i][j];
        }

    auto dot = [](const IntegerVector& a, const IntegerVector& b) {
        Integer s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    };
    auto is_zero = [](const IntegerVector& v) {
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    };
    auto dominated = [](const IntegerVector& q, const std::vector<IntegerVector>& found) {
        for (const auto& b : found) {
            bool leq = true;
            for (std::size_t i = 0; i < q.size() && leq; ++i)
                leq = b[i] <= q[i];
            if (leq)
                return true;
        }
        return false;
    };

    // Contejean-Devie completion: grow candidates along directions that decrease |A x|.
    std::vector<IntegerVector> solutions;
    std::set<std::pair<IntegerVector, IntegerVector>> frontier;
    for (std::size_t j = 0; j < unknowns; ++j) {
        IntegerVector e(unknowns, 0);
        e[j] = 1;
        frontier.emplace(std::move(e), image[j]);
    }
    while (!frontier.empty()) {
        for (const auto& [x, ax] : frontier)
            if (is_zero(ax))
                solutions.push_back(x);
        std::set<std::pair<IntegerVector, IntegerVector>> next;
        for (const auto& [x, ax] : frontier) {
            if (is_zero(ax))
                continue;
            for (std::size_t j = 0; j < unknowns; ++j) {
                if (dot(ax, image[j]) >= 0)
                    continue;
                IntegerVector y = x;
                y[j] += 1;
                if (dominated(y, solutions))
                    continue;
                IntegerVector ay = ax;
                for (std::size_t i = 0; i < equations; ++i)
                    ay[i] += image[j][i];
                next.emplace(std::move(y), std::move(ay));
            }
        }
        frontier = std::move(next);
    }
    std::sort(solutions.begin(), solutions.end());
    return solutions;
}

std::size_t LinearSystem::add_variable(std::string name, std::optional<Integer> lower, std::optional<Integer> upper) {
    if (lower && upper && *lower > *upper)
        throw InputError("empty bounds for variable '" + name + "'");
    variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
    return variables_.size() - 1;
}

void LinearSystem::add_constraint(std::vector<Term> terms, Relation relation, Rational constant) {
    for (const auto& [var, coef] : terms)
        if (var >= variables_.size())
            throw InputError("constraint refers to an unknown variable");
    constraints_.push_back({std::move(terms), relation, std::move(constant)});
}

bool LinearSystem::scaling_applies() const {
    for (const auto& v : variables_)
        if (v.upper || (v.lower && *v.lower != 0))
            return false;
    for (const auto& c : constraints_) {
        if (c.constant == 0)
            continue;
        if (c.relation == Relation::less_equal && c.constant <= -1)
            continue;
        if (c.relation == Relation::greater_equal && c.constant >= 1)
            continue;
        return false;
    }
    return true;
}

bool LinearSystem::boxed() const {
    return std::all_of(variables_.begin(), variables_.end(), [](const Variable& v) { return v.lower && v.upper; });
}

bool LinearSystem::satisfied_by(const std::vector<Integer>& values) const {
    if (values.size() != variables_.size())
        return false;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        if (variables_[j].lower && values[j] < *variables_[j].lower)
            return false;
        if (variables_[j].upper && values[j] > *variables_[j].upper)
            return false;
    }
    for (const auto& c : constraints_) {
        Rational lhs = 0;
        for (const auto& [var, coef] : c.terms)
            lhs += coef * values[var];
        bool ok = c.relation == Relation::equal        ? lhs == c.constant
                  : c.relation == Relation::less_equal ? lhs <= c.constant
                                                       : lhs >= c.constant;
        if (!ok)
            return false;
    }
    return true;
}

namespace {

// Dense two-phase simplex over the rationals with Bland's rule.
class Simplex {
  public:
    explicit Simplex(const LinearSystem& system) : system_(system) { build(); }

    RationalSolution solve() {
        RationalSolution result;
        if (!phase_one())
            return result;
        if (system_.objective())
            phase_two();
        result.feasible = true;
        result.values = extract();
        return result;
    }

  private:
    struct Column {
        std::size_t index;
        int sign;
    };
    struct Mapping {
        Rational offset;
        std::vector<Column> columns;
    };

    void build() {
        const auto& vars = system_.variables();
        std::vector<std::pair<std::vector<Term>, Rational>> box_rows;
        for (const auto& v : vars) {
            Mapping map;
            if (v.lower) {
                map.offset = *v.lower;
                map.columns.push_back({structural_++, +1});
                if (v.upper)
                    box_rows.push_back({{{map.columns[0].index, 1}}, Rational(*v.upper - *v.lower)});
            } else if (v.upper) {
                map.offset = *v.upper;
                map.columns.push_back({structural_++, -1});
            } else {
                map.offset = 0;
                map.columns.push_back({structural_++, +1});
                map.columns.push_back({structural_++, -1});
            }
            mapping_.push_back(std::move(map));
        }

        struct Row {
            std::vector<Rational> coefs;
            Relation relation;
            Rational rhs;
        };
        std::vector<Row> rows;
        for (const auto& c : system_.constraints()) {
            Row row{std::vector<Rational>(structural_, 0), c.relation, c.constant};
            for (const auto& [var, coef] : c.terms) {
                row.rhs -= coef * mapping_[var].offset;
                for (const auto& col : mapping_[var].columns)
                    row.coefs[col.index] += coef * col.sign;
            }
            rows.push_back(std::move(row));
        }
        for (auto& [terms, bound] : box_rows) {
            Row row{std::vector<Rational>(structural_, 0), Relation::less_equal, bound};
            row.coefs[terms[0].first] = 1;
            rows.push_back(std::move(row));
        }

        // normalise: rhs >= 0; a ">= 0" row becomes "<= 0" so its slack can start basic
        std::size_t slacks = 0;
        std::size_t artificials = 0;
        for (auto& row : rows) {
            if (row.rhs < 0 || (row.rhs == 0 && row.relation == Relation::greater_equal)) {
                for (auto& c : row.coefs)
                    c = -c;
                row.rhs = -row.rhs;
                if (row.relation == Relation::less_equal)
                    row.relation = Relation::greater_equal;
                else if (row.relation == Relation::greater_equal)
                    row.relation = Relation::less_equal;
            }
            if (row.relation != Relation::equal)
                ++slacks;
            if (row.relation != Relation::less_equal)
                ++artificials;
        }
        first_artificial_ = structural_ + slacks;
        width_ = first_artificial_ + artificials;
        std::size_t next_slack = structural_;
        std::size_t next_artificial = first_artificial_;
        for (auto& row : rows) {
            std::vector<Rational> t(width_ + 1, 0);
            std::copy(row.coefs.begin(), row.coefs.end(), t.begin());
            t[width_] = row.rhs;
            std::size_t basic;
            if (row.relation == Relation::less_equal) {
                t[next_slack] = 1;
                basic = next_slack++;
            } else {
                if (row.relation == Relation::greater_equal)
                    t[next_slack++] = -1;
                t[next_artificial] = 1;
                basic = next_artificial++;
            }
            tableau_.push_back(std::move(t));
            basis_.push_back(basic);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& prow = tableau_[r];
        Rational inv = 1 / prow[c];
        std::vector<std::size_t> nonzero;
        for (std::size_t k = 0; k <= width_; ++k) {
            if (prow[k] != 0) {
                prow[k] *= inv;
                nonzero.push_back(k);
            }
        }
        Rational tmp;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c] == 0)
                return;
            Rational f = row[c];
            for (std::size_t k : nonzero) {
                tmp = f * prow[k];
                row[k] -= tmp;
            }
        };
        for (std::size_t i = 0; i < tableau_.size(); ++i)
            if (i != r)
                eliminate(tableau_[i]);
        eliminate(reduced_);
        basis_[r] = c;
    }

    // Minimises cost over the current basis; returns false when unbounded.
    bool optimise(const std::vector<Rational>& cost, std::size_t allowed_columns) {
        reduced_.assign(width_ + 1, 0);
        for (std::size_t k = 0; k < width_; ++k)
            reduced_[k] = cost[k];
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0)
                continue;
            for (std::size_t k = 0; k <= width_; ++k)
                if (tableau_[i][k] != 0)
                    reduced_[k] -= cb * tableau_[i][k];
        }
        while (true) {
            std::size_t entering = width_;
            for (std::size_t k = 0; k < allowed_columns; ++k)
                if (reduced_[k] < 0) {
                    entering = k;
                    break;
                }
            if (entering == width_)
                return true;
            std::size_t leaving = tableau_.size();
            Rational best;
            for (std::size_t i = 0; i < tableau_.size(); ++i) {
                if (tableau_[i][entering] <= 0)
                    continue;
                Rational ratio = tableau_[i][width_] / tableau_[i][entering];
                if (leaving == tableau_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leaving])) {
                    best = ratio;
                    leaving = i;
                }
            }
            if (leaving == tableau_.size())
                return false;
            pivot(leaving, entering);
        }
    }

    bool phase_one() {
        if (first_artificial_ == width_)
            return true;
        std::vector<Rational> cost(width_, 0);
        for (std::size_t k = first_artificial_; k < width_; ++k)
            cost[k] = 1;
        optimise(cost, width_);
        for (std::size_t i = 0; i < tableau_.size(); ++i)
            if (basis_[i] >= first_artificial_ && tableau_[i][width_] != 0)
                return false;
        // drive zero-valued artificials out of the basis where possible
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (basis_[i] < first_artificial_)
                continue;
            for (std::size_t k = 0; k < first_artificial_; ++k) {
                if (tableau_[i][k] != 0) {
                    pivot(i, k);
                    break;
                }
            }
        }
        return true;
    }

    void phase_two() {
        std::vector<Rational> cost(width_, 0);
        for (const auto& [var, coef] : *system_.objective())
            for (const auto& col : mapping_[var].columns)
                cost[col.index] += coef * col.sign;
        // an unbounded objective leaves the current feasible vertex in place
        optimise(cost, first_artificial_);
    }

    std::vector<Rational> extract() const {
        std::vector<Rational> column_value(width_, 0);
        for (std::size_t i = 0; i < tableau_.size(); ++i)
            column_value[basis_[i]] = tableau_[i][width_];
        std::vector<Rational> values;
        for (const auto& map : mapping_) {
            Rational v = map.offset;
            for (const auto& col : map.columns)
                v += col.sign * column_value[col.index];
            values.push_back(std::move(v));
        }
        return values;
    }

    const LinearSystem& system_;
    std::vector<Mapping> mapping_;
    std::size_t structural_ = 0;
    std::size_t first_artificial_ = 0;
    std::size_t width_ = 0;
    std::vector<std::vector<Rational>> tableau_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> reduced_;
};

Rational objective_value(const LinearSystem& system, const std::vector<Rational>& values) {
    Rational v = 0;
    for (const auto& [var, coef] : *system.objective())
        v += coef * values[var];
    return v;
}

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

class BranchAndBound {
  public:
    BranchAndBound(const LinearSystem& system, const SolverOptions& options)
        : base_(system), options_(options), bounded_box_(system.boxed()) {
        integral_objective_ = system.objective().has_value();
        if (system.objective())
            for (const auto& [var, coef] : *system.objective())
                if (coef.get_den() != 1)
                    integral_objective_ = false;
    }

    Solution run() {
        explore(base_);
        Solution s;
        if (incumbent_) {
            s.status = Feasibility::feasible;
            s.values = *incumbent_;
        } else {
            s.status = exceeded_ ? Feasibility::bound_exceeded : Feasibility::infeasible;
        }
        return s;
    }

  private:
    // Returns true when the search should stop.
    bool explore(const LinearSystem& node) {
        if (!bounded_box_ && ++nodes_ > options_.node_limit) {
            exceeded_ = true;
            return true;
        }
        RationalSolution lp = solve_rational(node);
        if (!lp.feasible)
            return false;
        if (incumbent_ && node.objective()) {
            Rational bound = objective_value(node, lp.values);
            if (integral_objective_ ? bound > best_ - 1 : bound >= best_)
                return false;
        }
        std::size_t branch = lp.values.size();
        for (std::size_t j = 0; j < lp.values.size(); ++j)
            if (lp.values[j].get_den() != 1) {
                branch = j;
                break;
            }
        if (branch == lp.values.size()) {
            std::vector<Integer> point;
            for (const auto& v : lp.values)
                point.push_back(v.get_num());
            if (node.objective())
                best_ = objective_value(node, lp.values);
            incumbent_ = std::move(point);
            return !node.objective().has_value();
        }
        Integer down = floor_of(lp.values[branch]);
        for (int side = 0; side < 2; ++side) {
            LinearSystem child;
            for (std::size_t j = 0; j < node.num_variables(); ++j) {
                auto v = node.variables()[j];
                if (j == branch) {
                    if (side == 0)
                        v.upper = v.upper ? std::min(*v.upper, down) : down;
                    else
                        v.lower = v.lower ? std::max(*v.lower, Integer(down + 1)) : Integer(down + 1);
                    if (v.lower && v.upper && *v.lower > *v.upper)
                        goto next_side;
                }
                child.add_variable(v.name, v.lower, v.upper);
            }
            for (const auto& c : node.constraints())
                child.add_constraint(c.terms, c.relation, c.constant);
            if (node.objective())
                child.set_objective(*node.objective());
            if (explore(child))
                return true;
        next_side:;
        }
        return false;
    }

    const LinearSystem& base_;
    SolverOptions options_;
    bool bounded_box_;
    bool integral_objective_ = false;
    std::size_t nodes_ = 0;
    bool exceeded_ = false;
    std::optional<std::vector<Integer>> incumbent_;
    Rational best_;
};

} // namespace

RationalSolution solve_rational(const LinearSystem& system) { return Simplex(system).solve(); }

Solution solve_integer_feasibility(const LinearSystem& system, const SolverOptions& options) {
    if (system.scaling_applies()) {
        RationalSolution lp = solve_rational(system);
        Solution s;
        if (!lp.feasible)
            return s;
        Integer lcm = 1;
        for (const auto& v : lp.values)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
        for (const auto& v : lp.values)
            s.values.push_back(v.get_num() * (lcm / v.get_den()));
        s.status = Feasibility::feasible;
        return s;
    }
    return BranchAndBound(system, options).run();
}

} // namespace apt::exact
