#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "apt/exact.hpp"
#include "apt/lts.hpp"
#include "apt/lts_analysis.hpp"
#include "apt/petri_net.hpp"

namespace apt {

/// A place candidate: initial token count plus backward/forward weight per label.
struct Region {
    std::int64_t initial = 0;
    std::vector<std::int64_t> backward;
    std::vector<std::int64_t> forward;

    std::int64_t effect(LabelIndex t) const { return forward[t] - backward[t]; }
    bool is_pure() const;
    bool is_plain() const;
    friend bool operator==(const Region&, const Region&) = default;
};

struct StateProblem {
    StateIndex first;
    StateIndex second;
    friend bool operator==(const StateProblem&, const StateProblem&) = default;
};

struct EventStateProblem {
    StateIndex state;
    LabelIndex label;
    friend bool operator==(const EventStateProblem&, const EventStateProblem&) = default;
};

using SeparationProblem = std::variant<EventStateProblem, StateProblem>;

struct PropertySet {
    bool pure = false;
    bool plain = false;
    bool output_nonbranching = false;
    bool tnet = false;
    bool conflict_free = false;
    std::optional<std::int64_t> bound;
    bool language = false;
    bool verbose = false;

    /// Comma separated: none, pure, plain, output-nonbranching, t-net,
    /// conflict-free, <k>-bounded, safe, language, verbose.
    static PropertySet parse(std::string_view text);

    bool needs_plain() const { return plain || tnet || conflict_free; }
    /// No structural restriction requested.
    bool unrestricted() const {
        return !pure && !plain && !output_nonbranching && !tnet && !conflict_free && !bound;
    }
};

/// Shared per-lts data for region computations: spanning tree, Parikh vectors,
/// fundamental cycle rows and the region basis.
class RegionContext {
  public:
    /// Throws PreconditionError unless the lts is deterministic and totally reachable.
    explicit RegionContext(const Lts& lts);

    const Lts& lts() const noexcept { return lts_; }
    const ParikhVector& parikh(StateIndex s) const { return tree_.path_parikh.at(s); }
    const std::vector<std::vector<std::int64_t>>& cycle_rows() const noexcept { return cycle_rows_; }
    const std::vector<exact::IntegerVector>& basis() const noexcept { return basis_; }

    std::int64_t value(const Region& r, StateIndex s) const;
    /// Replays every arc: enabledness, token update, nonnegativity.
    bool is_valid(const Region& r) const;
    bool solves(const Region& r, const SeparationProblem& problem) const;
    /// Lowers the initial token count to the least valid value.
    void minimise_initial(Region& r) const;
    /// Pure region from an effect vector, initial marking minimal.
    Region pure_region(const std::vector<std::int64_t>& effect) const;
    std::int64_t max_path_length() const noexcept { return max_path_length_; }

  private:
    const Lts& lts_;
    SpanningTree tree_;
    std::vector<std::vector<std::int64_t>> cycle_rows_;
    std::vector<exact::IntegerVector> basis_;
    std::int64_t max_path_length_ = 0;
};

/// Integer basis of effect vectors with zero effect on every fundamental cycle.
std::vector<exact::IntegerVector> region_basis(const Lts& lts);

/// Event/state problems (state order, then label order) followed by state pairs.
std::vector<SeparationProblem> enumerate_separation_problems(const Lts& lts, bool include_state_problems = true);

std::optional<Region> solve_separation_general(const RegionContext& ctx, const SeparationProblem& problem,
                                               const PropertySet& props);
std::optional<Region> solve_separation_fast_none(const RegionContext& ctx, const SeparationProblem& problem);
std::optional<Region> solve_separation_pure(const RegionContext& ctx, const SeparationProblem& problem, bool plain);

struct SynthesisOutcome {
    bool success = false;
    std::optional<PetriNet> net;
    std::vector<StateProblem> failed_state_problems;
    /// Label with the states where it could not be disabled, in label order.
    std::vector<std::pair<LabelIndex, std::vector<StateIndex>>> failed_event_problems;
    /// Every region computed, in discovery order.
    std::vector<Region> regions;
    /// Per region, the event/state problems it solves.
    std::vector<std::vector<EventStateProblem>> separated_events;
    /// Indices into `regions` that became places.
    std::vector<std::size_t> kept_regions;
    /// Word synthesis only: the word with spuriously enabled letters bracketed.
    std::optional<std::string> failure_points;
};

/// Keeps regions solving some problem uniquely, then greedily covers the rest.
/// `solved[r]` lists the problem indices region r solves. Returns kept indices ascending.
std::vector<std::size_t> minimize_regions(std::size_t problem_count, const std::vector<std::vector<std::size_t>>& solved);

/// Throws PreconditionError on nondeterministic or not totally reachable input, and
/// for language mode on cyclic input.
SynthesisOutcome synthesize(const Lts& lts, const PropertySet& props);
SynthesisOutcome synthesize_language_only(const Lts& lts, PropertySet props);
SynthesisOutcome word_synthesize(PropertySet props, const std::vector<std::string>& word);

/// Linear lts s0 -w1-> s1 -w2-> ... with labels in order of first occurrence.
Lts word_lts(const std::vector<std::string>& word);

std::string format_region(const Lts& lts, const Region& region);
/// Key/value report lines (success, failure lists, verbose region listing).
std::string render_report(const Lts& lts, const SynthesisOutcome& outcome, bool verbose);

} // namespace apt
