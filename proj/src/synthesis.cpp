#include "apt/synthesis.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "apt/error.hpp"
#include "apt/pn_analysis.hpp"

namespace apt {

using exact::Integer;
using exact::LinearSystem;
using exact::Rational;
using exact::Relation;
using exact::Term;

bool Region::is_pure() const {
    for (std::size_t t = 0; t < backward.size(); ++t)
        if (backward[t] > 0 && forward[t] > 0)
            return false;
    return true;
}

bool Region::is_plain() const {
    for (std::size_t t = 0; t < backward.size(); ++t)
        if (backward[t] > 1 || forward[t] > 1)
            return false;
    return true;
}

PropertySet PropertySet::parse(std::string_view text) {
    PropertySet props;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string item(text.substr(start, end - start));
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        std::string lower = item;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        if (lower.empty() || lower == "none") {
        } else if (lower == "pure") {
            props.pure = true;
        } else if (lower == "plain") {
            props.plain = true;
        } else if (lower == "output-nonbranching" || lower == "on") {
            props.output_nonbranching = true;
        } else if (lower == "t-net" || lower == "tnet") {
            props.tnet = true;
        } else if (lower == "conflict-free" || lower == "cf") {
            props.conflict_free = true;
        } else if (lower == "safe") {
            props.bound = props.bound ? std::min<std::int64_t>(*props.bound, 1) : 1;
        } else if (lower == "language") {
            props.language = true;
        } else if (lower == "verbose") {
            props.verbose = true;
        } else if (lower.size() > 8 && lower.ends_with("-bounded")) {
            std::string digits = lower.substr(0, lower.size() - 8);
            if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
                throw InputError("invalid bound in property '" + item + "'");
            std::int64_t k = std::stoll(digits);
            if (k < 1)
                throw InputError("bound must be at least 1 in property '" + item + "'");
            props.bound = props.bound ? std::min(*props.bound, k) : k;
        } else {
            throw InputError("unknown synthesis property '" + item + "'");
        }
        start = end + 1;
    }
    return props;
}

namespace {

std::int64_t to_int64(const Integer& v) {
    if (!v.fits_slong_p())
        throw LimitExceeded("region weight exceeds 64-bit range");
    return v.get_si();
}

Integer big(std::int64_t v) { return Integer(static_cast<long>(v)); }

std::vector<exact::IntegerVector> kernel_of(const std::vector<std::vector<std::int64_t>>& rows, std::size_t labels) {
    std::vector<exact::IntegerVector> big_rows;
    for (const auto& r : rows) {
        exact::IntegerVector row;
        for (auto v : r)
            row.push_back(big(v));
        big_rows.push_back(std::move(row));
    }
    return exact::integer_kernel_basis(big_rows, labels);
}

std::vector<std::vector<std::int64_t>> fundamental_cycles(const Lts& lts, const SpanningTree& tree) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t a : tree.chords) {
        const auto& arc = lts.arc(a);
        std::vector<std::int64_t> row = tree.path_parikh[arc.source].counts();
        row[arc.label] += 1;
        const auto& target = tree.path_parikh[arc.target].counts();
        for (std::size_t t = 0; t < row.size(); ++t)
            row[t] -= target[t];
        if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v != 0; }))
            rows.push_back(std::move(row));
    }
    return rows;
}

void check_preconditions(const Lts& lts) {
    auto det = is_deterministic(lts);
    if (!det.holds)
        throw PreconditionError("synthesis requires a deterministic lts; state '" +
                                lts.state_name(det.witness->state) + "' has two '" +
                                lts.label_name(det.witness->label) + "' successors");
    auto reach = is_totally_reachable(lts);
    if (!reach.holds) {
        if (reach.unreachable_state)
            throw PreconditionError("synthesis requires a totally reachable lts; state '" +
                                    lts.state_name(*reach.unreachable_state) + "' is unreachable");
        throw PreconditionError("synthesis requires a totally reachable lts; label '" +
                                lts.label_name(*reach.unused_label) + "' labels no arc");
    }
}

} // namespace

RegionContext::RegionContext(const Lts& lts) : lts_(lts) {
    check_preconditions(lts);
    tree_ = spanning_tree(lts);
    cycle_rows_ = fundamental_cycles(lts, tree_);
    basis_ = kernel_of(cycle_rows_, lts.num_labels());
    for (const auto& p : tree_.path_parikh) {
        std::int64_t len = 0;
        for (auto c : p.counts())
            len += c;
        max_path_length_ = std::max(max_path_length_, len);
    }
}

std::int64_t RegionContext::value(const Region& r, StateIndex s) const {
    std::int64_t v = r.initial;
    const auto& psi = parikh(s);
    for (LabelIndex t = 0; t < psi.size(); ++t)
        v += psi[t] * r.effect(t);
    return v;
}

bool RegionContext::is_valid(const Region& r) const {
    if (r.backward.size() != lts_.num_labels() || r.forward.size() != lts_.num_labels() || r.initial < 0)
        return false;
    for (LabelIndex t = 0; t < lts_.num_labels(); ++t)
        if (r.backward[t] < 0 || r.forward[t] < 0)
            return false;
    for (StateIndex s = 0; s < lts_.num_states(); ++s)
        if (value(r, s) < 0)
            return false;
    for (const auto& arc : lts_.arcs()) {
        std::int64_t before = value(r, arc.source);
        if (before < r.backward[arc.label] || value(r, arc.target) != before + r.effect(arc.label))
            return false;
    }
    return true;
}

bool RegionContext::solves(const Region& r, const SeparationProblem& problem) const {
    if (const auto* e = std::get_if<EventStateProblem>(&problem))
        return value(r, e->state) < r.backward[e->label];
    const auto& sp = std::get<StateProblem>(problem);
    return value(r, sp.first) != value(r, sp.second);
}

void RegionContext::minimise_initial(Region& r) const {
    Region zero = r;
    zero.initial = 0;
    std::int64_t need = 0;
    for (StateIndex s = 0; s < lts_.num_states(); ++s)
        need = std::max(need, -value(zero, s));
    for (const auto& arc : lts_.arcs())
        need = std::max(need, r.backward[arc.label] - value(zero, arc.source));
    r.initial = need;
}

Region RegionContext::pure_region(const std::vector<std::int64_t>& effect) const {
    Region r;
    for (auto e : effect) {
        r.backward.push_back(std::max<std::int64_t>(0, -e));
        r.forward.push_back(std::max<std::int64_t>(0, e));
    }
    minimise_initial(r);
    return r;
}

std::vector<exact::IntegerVector> region_basis(const Lts& lts) {
    check_preconditions(lts);
    auto tree = spanning_tree(lts);
    return kernel_of(fundamental_cycles(lts, tree), lts.num_labels());
}

std::vector<SeparationProblem> enumerate_separation_problems(const Lts& lts, bool include_state_problems) {
    std::vector<SeparationProblem> problems;
    auto states = reachable_states(lts);
    std::sort(states.begin(), states.end());
    for (StateIndex s : states)
        for (LabelIndex t = 0; t < lts.num_labels(); ++t)
            if (!lts.enables(s, t))
                problems.push_back(EventStateProblem{s, t});
    if (include_state_problems)
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = i + 1; j < states.size(); ++j)
                problems.push_back(StateProblem{states[i], states[j]});
    return problems;
}

namespace {

Region checked(const RegionContext& ctx, Region r, const SeparationProblem& problem) {
    ctx.minimise_initial(r);
    if (!ctx.is_valid(r) || !ctx.solves(r, problem))
        throw std::logic_error("internal error: solver produced an invalid region");
    return r;
}

exact::Solution run(const LinearSystem& system) {
    auto solution = exact::solve_integer_feasibility(system);
    if (solution.status == exact::Feasibility::bound_exceeded)
        throw std::logic_error("internal error: integer search exceeded its node budget on an unboxed system");
    return solution;
}

std::vector<std::int64_t> effect_from_basis(const RegionContext& ctx, const std::vector<Integer>& lambda) {
    const std::size_t labels = ctx.lts().num_labels();
    std::vector<Integer> effect(labels, 0);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t t = 0; t < labels; ++t)
            effect[t] += lambda[i] * ctx.basis()[i][t];
    Integer g = 0;
    for (const auto& e : effect)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    std::vector<std::int64_t> out;
    for (const auto& e : effect)
        out.push_back(to_int64(g > 1 ? Integer(e / g) : e));
    return out;
}

// b . psi(s) for every basis vector and state.
Rational basis_value(const RegionContext& ctx, std::size_t i, StateIndex s) {
    Integer v = 0;
    const auto& psi = ctx.parikh(s);
    for (std::size_t t = 0; t < psi.size(); ++t)
        if (psi[t] != 0)
            v += ctx.basis()[i][t] * big(psi[t]);
    return Rational(v);
}

std::optional<Region> basis_state_test(const RegionContext& ctx, const StateProblem& sp) {
    for (std::size_t i = 0; i < ctx.basis().size(); ++i) {
        if (basis_value(ctx, i, sp.first) == basis_value(ctx, i, sp.second))
            continue;
        std::vector<std::int64_t> effect;
        for (const auto& v : ctx.basis()[i])
            effect.push_back(to_int64(v));
        return checked(ctx, ctx.pure_region(effect), sp);
    }
    return std::nullopt;
}

// Effect variables E(t) in [-1, 1] with zero effect on every cycle.
LinearSystem plain_effect_system(const RegionContext& ctx) {
    LinearSystem sys;
    for (LabelIndex t = 0; t < ctx.lts().num_labels(); ++t)
        sys.add_variable("E_" + ctx.lts().label_name(t), Integer(-1), Integer(1));
    for (const auto& row : ctx.cycle_rows()) {
        std::vector<Term> terms;
        for (std::size_t t = 0; t < row.size(); ++t)
            if (row[t] != 0)
                terms.emplace_back(t, Rational(big(row[t])));
        sys.add_constraint(std::move(terms), Relation::equal, 0);
    }
    return sys;
}

std::vector<Term> effect_difference(const RegionContext& ctx, StateIndex s, StateIndex other,
                                    std::optional<LabelIndex> extra) {
    std::vector<Term> terms;
    for (LabelIndex t = 0; t < ctx.lts().num_labels(); ++t) {
        std::int64_t c = ctx.parikh(s)[t] - ctx.parikh(other)[t] + (extra == t ? 1 : 0);
        if (c != 0)
            terms.emplace_back(t, Rational(big(c)));
    }
    return terms;
}

std::vector<std::int64_t> integer_values(const std::vector<Integer>& values) {
    std::vector<std::int64_t> out;
    for (const auto& v : values)
        out.push_back(to_int64(v));
    return out;
}

} // namespace

std::optional<Region> solve_separation_fast_none(const RegionContext& ctx, const SeparationProblem& problem) {
    if (const auto* sp = std::get_if<StateProblem>(&problem))
        return basis_state_test(ctx, *sp);
    const auto& ep = std::get<EventStateProblem>(problem);
    const Lts& lts = ctx.lts();
    LinearSystem sys;
    for (std::size_t i = 0; i < ctx.basis().size(); ++i)
        sys.add_variable("lambda" + std::to_string(i), std::nullopt);
    for (const auto& arc : lts.arcs()) {
        if (arc.label != ep.label)
            continue;
        std::vector<Term> terms;
        for (std::size_t i = 0; i < ctx.basis().size(); ++i) {
            Rational c = basis_value(ctx, i, ep.state) - basis_value(ctx, i, arc.source);
            if (c != 0)
                terms.emplace_back(i, c);
        }
        sys.add_constraint(std::move(terms), Relation::less_equal, -1);
    }
    auto solution = run(sys);
    if (solution.status != exact::Feasibility::feasible)
        return std::nullopt;
    Region r = ctx.pure_region(effect_from_basis(ctx, solution.values));
    std::int64_t delta = std::max<std::int64_t>(0, ctx.value(r, ep.state) - r.backward[ep.label] + 1);
    r.backward[ep.label] += delta;
    r.forward[ep.label] += delta;
    return checked(ctx, std::move(r), problem);
}

std::optional<Region> solve_separation_pure(const RegionContext& ctx, const SeparationProblem& problem, bool plain) {
    const Lts& lts = ctx.lts();
    if (const auto* sp = std::get_if<StateProblem>(&problem)) {
        if (!plain)
            return basis_state_test(ctx, *sp);
        LinearSystem sys = plain_effect_system(ctx);
        sys.add_constraint(effect_difference(ctx, sp->first, sp->second, std::nullopt), Relation::less_equal, -1);
        auto solution = run(sys);
        if (solution.status != exact::Feasibility::feasible)
            return std::nullopt;
        return checked(ctx, ctx.pure_region(integer_values(solution.values)), problem);
    }
    const auto& ep = std::get<EventStateProblem>(problem);
    if (plain) {
        LinearSystem sys = plain_effect_system(ctx);
        for (StateIndex other = 0; other < lts.num_states(); ++other)
            sys.add_constraint(effect_difference(ctx, ep.state, other, ep.label), Relation::less_equal, -1);
        auto solution = run(sys);
        if (solution.status != exact::Feasibility::feasible)
            return std::nullopt;
        return checked(ctx, ctx.pure_region(integer_values(solution.values)), problem);
    }
    LinearSystem sys;
    for (std::size_t i = 0; i < ctx.basis().size(); ++i)
        sys.add_variable("lambda" + std::to_string(i), std::nullopt);
    for (StateIndex other = 0; other < lts.num_states(); ++other) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i < ctx.basis().size(); ++i) {
            Rational c = basis_value(ctx, i, ep.state) - basis_value(ctx, i, other) + Rational(ctx.basis()[i][ep.label]);
            if (c != 0)
                terms.emplace_back(i, c);
        }
        sys.add_constraint(std::move(terms), Relation::less_equal, -1);
    }
    auto solution = run(sys);
    if (solution.status != exact::Feasibility::feasible)
        return std::nullopt;
    return checked(ctx, ctx.pure_region(effect_from_basis(ctx, solution.values)), problem);
}

namespace {

struct Attempt {
    /// Labels allowed to consume from the region; empty optional = unrestricted.
    std::optional<std::vector<bool>> outputs;
    bool nonnegative_effects = false;
};

class GeneralSolver {
  public:
    GeneralSolver(const RegionContext& ctx, const PropertySet& props) : ctx_(ctx), props_(props) {
        const std::size_t labels = ctx.lts().num_labels();
        effect_mode_ = props.pure && !props.needs_plain();
        if (props.needs_plain())
            weight_box_ = 1;
        else if (props.bound)
            weight_box_ = *props.bound;
        for (LabelIndex t = 0; t < labels; ++t) {
            const auto& loc = ctx.lts().location(t);
            location_key_.push_back(props.output_nonbranching ? "#" + std::to_string(t) : loc.value_or(""));
        }
    }

    std::optional<Region> solve(const SeparationProblem& problem) {
        for (const auto& attempt : attempts(problem))
            if (auto r = solve_once(problem, attempt))
                return r;
        return std::nullopt;
    }

  private:
    std::vector<bool> group(const std::string& key, std::optional<LabelIndex> only = std::nullopt) const {
        std::vector<bool> allowed(location_key_.size(), false);
        for (std::size_t t = 0; t < allowed.size(); ++t)
            allowed[t] = only ? t == *only : location_key_[t] == key;
        return allowed;
    }

    bool restricted() const {
        if (props_.output_nonbranching)
            return true;
        for (const auto& k : location_key_)
            if (k != location_key_.front())
                return true;
        return false;
    }

    std::vector<Attempt> attempts(const SeparationProblem& problem) const {
        std::vector<Attempt> out;
        if (const auto* ep = std::get_if<EventStateProblem>(&problem)) {
            const std::string& key = location_key_[ep->label];
            if (props_.conflict_free) {
                out.push_back({group(key, ep->label), false});
                out.push_back({restricted() ? std::optional(group(key)) : std::nullopt, true});
            } else {
                out.push_back({restricted() ? std::optional(group(key)) : std::nullopt, false});
            }
            return out;
        }
        std::vector<std::string> keys;
        for (const auto& k : location_key_)
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                keys.push_back(k);
        if (props_.conflict_free) {
            for (LabelIndex t = 0; t < location_key_.size(); ++t)
                out.push_back({group(location_key_[t], t), false});
            if (location_key_.empty())
                out.push_back({std::nullopt, false});
            if (restricted())
                for (const auto& k : keys)
                    out.push_back({group(k), true});
            else
                out.push_back({std::nullopt, true});
        } else if (restricted()) {
            for (const auto& k : keys)
                out.push_back({group(k), false});
        } else {
            out.push_back({std::nullopt, false});
        }
        return out;
    }

    std::optional<Region> solve_once(const SeparationProblem& problem, const Attempt& attempt) {
        const Lts& lts = ctx_.lts();
        const std::size_t labels = lts.num_labels();
        LinearSystem sys;
        std::optional<Integer> r0_upper;
        if (props_.bound)
            r0_upper = big(*props_.bound);
        else if (weight_box_)
            r0_upper = big(*weight_box_ + *weight_box_ * ctx_.max_path_length());
        const std::size_t r0 = sys.add_variable("R0", Integer(0), r0_upper);

        std::vector<std::size_t> b(labels), f(labels), e(labels);
        for (LabelIndex t = 0; t < labels; ++t) {
            const std::string& name = lts.label_name(t);
            std::optional<Integer> box = weight_box_ ? std::optional(big(*weight_box_)) : std::nullopt;
            if (effect_mode_) {
                e[t] = sys.add_variable("E_" + name, box ? std::optional(Integer(-*box)) : std::nullopt, box);
            } else {
                b[t] = sys.add_variable("B_" + name, Integer(0), box);
                f[t] = sys.add_variable("F_" + name, Integer(0), box);
            }
        }
        auto add_effect = [&](std::vector<Term>& terms, LabelIndex t, const Rational& c) {
            if (c == 0)
                return;
            if (effect_mode_) {
                terms.emplace_back(e[t], c);
            } else {
                terms.emplace_back(f[t], c);
                terms.emplace_back(b[t], -c);
            }
        };
        auto marking = [&](StateIndex s) {
            std::vector<Term> terms{{r0, 1}};
            const auto& psi = ctx_.parikh(s);
            for (LabelIndex t = 0; t < labels; ++t)
                add_effect(terms, t, Rational(big(psi[t])));
            return terms;
        };
        auto combine = [](std::vector<Term> a, const std::vector<Term>& bterms, int sign) {
            for (const auto& [v, c] : bterms)
                a.emplace_back(v, c * sign);
            return a;
        };

        for (const auto& row : ctx_.cycle_rows()) {
            std::vector<Term> terms;
            for (LabelIndex t = 0; t < labels; ++t)
                add_effect(terms, t, Rational(big(row[t])));
            sys.add_constraint(std::move(terms), Relation::equal, 0);
        }
        for (StateIndex s = 0; s < lts.num_states(); ++s) {
            sys.add_constraint(marking(s), Relation::greater_equal, 0);
            if (props_.bound)
                sys.add_constraint(marking(s), Relation::less_equal, Rational(big(*props_.bound)));
        }
        if (!effect_mode_) {
            for (const auto& arc : lts.arcs()) {
                auto terms = marking(arc.source);
                terms.emplace_back(b[arc.label], -1);
                sys.add_constraint(std::move(terms), Relation::greater_equal, 0);
            }
            if (props_.pure)
                for (LabelIndex t = 0; t < labels; ++t)
                    sys.add_constraint({{b[t], 1}, {f[t], 1}}, Relation::less_equal, 1);
            if (props_.tnet && labels > 0) {
                std::vector<Term> pre, post;
                for (LabelIndex t = 0; t < labels; ++t) {
                    pre.emplace_back(b[t], 1);
                    post.emplace_back(f[t], 1);
                }
                sys.add_constraint(std::move(pre), Relation::less_equal, 1);
                sys.add_constraint(std::move(post), Relation::less_equal, 1);
            }
        }
        if (attempt.outputs)
            for (LabelIndex t = 0; t < labels; ++t) {
                if ((*attempt.outputs)[t])
                    continue;
                if (effect_mode_)
                    sys.add_constraint({{e[t], 1}}, Relation::greater_equal, 0);
                else
                    sys.add_constraint({{b[t], 1}}, Relation::equal, 0);
            }
        if (attempt.nonnegative_effects)
            for (LabelIndex t = 0; t < labels; ++t) {
                std::vector<Term> terms;
                add_effect(terms, t, 1);
                sys.add_constraint(std::move(terms), Relation::greater_equal, 0);
            }

        if (const auto* ep = std::get_if<EventStateProblem>(&problem)) {
            auto terms = marking(ep->state);
            if (effect_mode_)
                terms.emplace_back(e[ep->label], 1);
            else
                terms.emplace_back(b[ep->label], -1);
            sys.add_constraint(std::move(terms), Relation::less_equal, -1);
        } else {
            const auto& sp = std::get<StateProblem>(problem);
            for (int order = 0; order < 2; ++order) {
                LinearSystem directed = sys;
                StateIndex lo = order == 0 ? sp.first : sp.second;
                StateIndex hi = order == 0 ? sp.second : sp.first;
                directed.add_constraint(combine(marking(lo), marking(hi), -1), Relation::less_equal, -1);
                if (auto r = finish(directed, problem, r0, b, f, e))
                    return r;
            }
            return std::nullopt;
        }
        return finish(sys, problem, r0, b, f, e);
    }

    std::optional<Region> finish(LinearSystem& sys, const SeparationProblem& problem, std::size_t r0,
                                 const std::vector<std::size_t>& b, const std::vector<std::size_t>& f,
                                 const std::vector<std::size_t>& e) {
        const std::size_t labels = ctx_.lts().num_labels();
        if (!effect_mode_) {
            std::vector<Term> cost;
            for (LabelIndex t = 0; t < labels; ++t) {
                cost.emplace_back(b[t], 1);
                cost.emplace_back(f[t], 1);
            }
            sys.set_objective(std::move(cost));
        }
        auto solution = run(sys);
        if (solution.status != exact::Feasibility::feasible)
            return std::nullopt;
        Region r;
        r.initial = to_int64(solution.values[r0]);
        for (LabelIndex t = 0; t < labels; ++t) {
            if (effect_mode_) {
                std::int64_t eff = to_int64(solution.values[e[t]]);
                r.backward.push_back(std::max<std::int64_t>(0, -eff));
                r.forward.push_back(std::max<std::int64_t>(0, eff));
            } else {
                r.backward.push_back(to_int64(solution.values[b[t]]));
                r.forward.push_back(to_int64(solution.values[f[t]]));
            }
        }
        return checked(ctx_, std::move(r), problem);
    }

    const RegionContext& ctx_;
    PropertySet props_;
    bool effect_mode_ = false;
    std::optional<std::int64_t> weight_box_;
    std::vector<std::string> location_key_;
};

enum class Path { fast_none, fast_pure, fast_pure_plain, general };

Path choose_path(const Lts& lts, const PropertySet& props) {
    if (lts.has_locations())
        return Path::general;
    if (props.unrestricted())
        return Path::fast_none;
    if (props.pure && !props.output_nonbranching && !props.tnet && !props.conflict_free && !props.bound)
        return props.plain ? Path::fast_pure_plain : Path::fast_pure;
    return Path::general;
}

std::string join_states(const Lts& lts, const std::vector<StateIndex>& states) {
    std::string out = "[";
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i)
            out += ", ";
        out += lts.state_name(states[i]);
    }
    return out + "]";
}

PetriNet build_net(const Lts& lts, const std::vector<Region>& regions, const std::vector<std::size_t>& kept) {
    PetriNet net;
    net.set_name(lts.name());
    for (LabelIndex t = 0; t < lts.num_labels(); ++t) {
        net.add_transition(lts.label_name(t));
        net.set_location(t, lts.location(t));
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const Region& r = regions[kept[i]];
        std::string name = "p" + std::to_string(i);
        while (net.find_transition(name))
            name = "_" + name;
        PlaceIndex p = net.add_place(name, r.initial);
        for (LabelIndex t = 0; t < lts.num_labels(); ++t) {
            net.set_consume(p, t, r.backward[t]);
            net.set_produce(t, p, r.forward[t]);
        }
    }
    return net;
}

void verify(const Lts& lts, const PetriNet& net, const PropertySet& props) {
    auto rg = reachability_graph(net);
    if (props.language) {
        if (!language_equivalent(lts, rg.lts).holds)
            throw std::logic_error("internal error: synthesized net is not language equivalent to its input");
    } else if (!isomorphic(lts, rg.lts).holds) {
        throw std::logic_error("internal error: synthesized net does not solve its input");
    }
    auto fail = [](const std::string& what) {
        throw std::logic_error("internal error: synthesized net is not " + what);
    };
    if (props.pure && !is_pure(net).holds)
        fail("pure");
    if (props.needs_plain() && !is_plain(net).holds)
        fail("plain");
    if (props.output_nonbranching && !is_output_nonbranching(net).holds)
        fail("output-nonbranching");
    if (props.tnet && !is_tnet(net).holds)
        fail("a T-net");
    if (props.conflict_free && !is_conflict_free(net).holds)
        fail("conflict-free");
    if (props.bound)
        for (const auto& m : rg.markings)
            for (auto tokens : m.tokens())
                if (tokens > *props.bound)
                    fail(std::to_string(*props.bound) + "-bounded");
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        for (TransitionIndex u = t + 1; u < net.num_transitions(); ++u) {
            if (net.location(t).value_or("") == net.location(u).value_or(""))
                continue;
            for (auto [p, w] : net.preset(t))
                if (net.consume(p, u) > 0)
                    fail("respecting locations");
        }
}

bool acyclic(const Lts& lts) {
    for (const auto& scc : strongly_connected_components(lts))
        if (scc.size() > 1)
            return false;
    for (const auto& arc : lts.arcs())
        if (arc.source == arc.target)
            return false;
    return true;
}

SynthesisOutcome run_synthesis(const Lts& lts, const PropertySet& props) {
    RegionContext ctx(lts);
    auto problems = enumerate_separation_problems(lts, !props.language);
    const Path path = choose_path(lts, props);
    GeneralSolver general(ctx, props);

    SynthesisOutcome outcome;
    std::vector<bool> failed(problems.size(), false);
    for (std::size_t i = 0; i < problems.size(); ++i) {
        const auto& problem = problems[i];
        bool reused = std::any_of(outcome.regions.begin(), outcome.regions.end(),
                                  [&](const Region& r) { return ctx.solves(r, problem); });
        if (reused)
            continue;
        std::optional<Region> region;
        switch (path) {
        case Path::fast_none:
            region = solve_separation_fast_none(ctx, problem);
            break;
        case Path::fast_pure:
            region = solve_separation_pure(ctx, problem, false);
            break;
        case Path::fast_pure_plain:
            region = solve_separation_pure(ctx, problem, true);
            break;
        case Path::general:
            region = general.solve(problem);
            break;
        }
        if (region)
            outcome.regions.push_back(std::move(*region));
        else
            failed[i] = true;
    }

    auto all_events = enumerate_separation_problems(lts, false);
    for (const auto& region : outcome.regions) {
        auto& events = outcome.separated_events.emplace_back();
        for (const auto& p : all_events)
            if (ctx.solves(region, p))
                events.push_back(std::get<EventStateProblem>(p));
    }

    std::map<LabelIndex, std::vector<StateIndex>> event_failures;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        if (!failed[i])
            continue;
        if (const auto* ep = std::get_if<EventStateProblem>(&problems[i]))
            event_failures[ep->label].push_back(ep->state);
        else
            outcome.failed_state_problems.push_back(std::get<StateProblem>(problems[i]));
    }
    outcome.failed_event_problems.assign(event_failures.begin(), event_failures.end());
    if (!outcome.failed_state_problems.empty() || !outcome.failed_event_problems.empty())
        return outcome;

    std::vector<std::vector<std::size_t>> solved(outcome.regions.size());
    for (std::size_t r = 0; r < outcome.regions.size(); ++r)
        for (std::size_t i = 0; i < problems.size(); ++i)
            if (ctx.solves(outcome.regions[r], problems[i]))
                solved[r].push_back(i);
    outcome.kept_regions = minimize_regions(problems.size(), solved);
    PetriNet net = build_net(lts, outcome.regions, outcome.kept_regions);
    verify(lts, net, props);
    outcome.net = std::move(net);
    outcome.success = true;
    return outcome;
}

} // namespace

std::optional<Region> solve_separation_general(const RegionContext& ctx, const SeparationProblem& problem,
                                               const PropertySet& props) {
    return GeneralSolver(ctx, props).solve(problem);
}

std::vector<std::size_t> minimize_regions(std::size_t problem_count, const std::vector<std::vector<std::size_t>>& solved) {
    std::vector<std::vector<std::size_t>> solvers(problem_count);
    for (std::size_t r = 0; r < solved.size(); ++r)
        for (auto p : solved[r])
            solvers.at(p).push_back(r);
    std::vector<bool> keep(solved.size(), false);
    for (const auto& s : solvers)
        if (s.size() == 1)
            keep[s.front()] = true;
    std::vector<bool> covered(problem_count, false);
    for (std::size_t r = 0; r < solved.size(); ++r)
        if (keep[r])
            for (auto p : solved[r])
                covered[p] = true;
    for (std::size_t p = 0; p < problem_count; ++p) {
        if (covered[p] || solvers[p].empty())
            continue;
        std::size_t r = solvers[p].front();
        keep[r] = true;
        for (auto q : solved[r])
            covered[q] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < keep.size(); ++r)
        if (keep[r])
            out.push_back(r);
    return out;
}

SynthesisOutcome synthesize(const Lts& lts, const PropertySet& props) {
    if (props.language)
        return synthesize_language_only(lts, props);
    return run_synthesis(lts, props);
}

SynthesisOutcome synthesize_language_only(const Lts& lts, PropertySet props) {
    props.language = true;
    if (!is_deterministic(lts).holds)
        throw PreconditionError("language synthesis requires a deterministic lts");
    if (!acyclic(lts))
        throw PreconditionError("language synthesis supports acyclic inputs only; cyclic inputs need an unfolding, "
                                "which is not implemented");
    return run_synthesis(lts, props);
}

Lts word_lts(const std::vector<std::string>& word) {
    LtsBuilder b;
    b.set_initial(b.add_state("s0"));
    for (const auto& letter : word)
        if (!b.find_label(letter))
            b.add_label(letter);
    for (std::size_t i = 0; i < word.size(); ++i) {
        StateIndex next = b.add_state("s" + std::to_string(i + 1));
        b.add_arc(next - 1, *b.find_label(word[i]), next);
    }
    return b.build();
}

SynthesisOutcome word_synthesize(PropertySet props, const std::vector<std::string>& word) {
    Lts lts = word_lts(word);
    auto outcome = synthesize_language_only(lts, props);
    if (!outcome.success) {
        std::vector<std::vector<LabelIndex>> at(word.size() + 1);
        for (const auto& [label, states] : outcome.failed_event_problems)
            for (auto s : states)
                at[s].push_back(label);
        std::string out;
        for (std::size_t i = 0; i <= word.size(); ++i) {
            std::sort(at[i].begin(), at[i].end());
            std::string slot;
            for (auto l : at[i])
                slot += "[" + lts.label_name(l) + "] ";
            if (i < word.size())
                slot += word[i];
            else if (slot.empty())
                break;
            else
                slot.pop_back();
            if (i)
                out += ", ";
            out += slot;
        }
        outcome.failure_points = out;
    }
    return outcome;
}

std::string format_region(const Lts& lts, const Region& region) {
    std::ostringstream out;
    out << "Region { init=" << region.initial;
    for (LabelIndex t = 0; t < lts.num_labels(); ++t)
        out << ", " << region.backward[t] << ':' << lts.label_name(t) << ':' << region.forward[t];
    out << " }";
    return out.str();
}

std::string render_report(const Lts& lts, const SynthesisOutcome& outcome, bool verbose) {
    std::ostringstream out;
    out << "success: " << (outcome.success ? "Yes" : "No") << '\n';
    if (outcome.failure_points) {
        out << "separationFailurePoints: " << *outcome.failure_points << '\n';
        return out.str();
    }
    if (verbose) {
        out << "solvedEventStateSeparationProblems:\n";
        for (std::size_t r = 0; r < outcome.regions.size(); ++r) {
            out << format_region(lts, outcome.regions[r]) << ":\n";
            std::map<LabelIndex, std::vector<StateIndex>> by_label;
            if (r < outcome.separated_events.size())
                for (const auto& ep : outcome.separated_events[r])
                    by_label[ep.label].push_back(ep.state);
            for (const auto& [label, states] : by_label)
                out << "\tseparates event " << lts.label_name(label) << " at states " << join_states(lts, states)
                    << '\n';
        }
    }
    out << "failedStateSeparationProblems: [";
    for (std::size_t i = 0; i < outcome.failed_state_problems.size(); ++i) {
        const auto& sp = outcome.failed_state_problems[i];
        out << (i ? ", " : "") << '[' << lts.state_name(sp.first) << ", " << lts.state_name(sp.second) << ']';
    }
    out << "]\n";
    out << "failedEventStateSeparationProblems: {";
    for (std::size_t i = 0; i < outcome.failed_event_problems.size(); ++i) {
        const auto& [label, states] = outcome.failed_event_problems[i];
        out << (i ? ", " : "") << lts.label_name(label) << '=' << join_states(lts, states);
    }
    out << "}\n";
    return out.str();
}

} // namespace apt
