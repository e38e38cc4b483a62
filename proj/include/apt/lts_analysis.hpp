#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apt/lts.hpp"

namespace apt {

/// States reachable from the initial state, in breadth-first discovery order.
std::vector<StateIndex> reachable_states(const Lts& lts);
std::vector<bool> reachable_mask(const Lts& lts);

struct TotalReachability {
    bool holds = true;
    std::optional<StateIndex> unreachable_state;
    std::optional<LabelIndex> unused_label;
};
TotalReachability is_totally_reachable(const Lts& lts);

struct NondeterministicChoice {
    StateIndex state;
    LabelIndex label;
    StateIndex first_target;
    StateIndex second_target;
};
struct Determinism {
    bool holds = true;
    std::optional<NondeterministicChoice> witness;
};
Determinism is_deterministic(const Lts& lts);

struct MissingDiamond {
    StateIndex state;
    LabelIndex first;
    LabelIndex second;
};
struct Persistence {
    bool holds = true;
    std::optional<MissingDiamond> witness;
};
/// Throws PreconditionError on a nondeterministic lts.
Persistence is_persistent(const Lts& lts);

struct Reversibility {
    bool holds = true;
    std::optional<StateIndex> witness;
};
Reversibility is_reversible(const Lts& lts);

/// Components ordered by their smallest state; states inside a component ascend.
std::vector<std::vector<StateIndex>> strongly_connected_components(const Lts& lts);
std::vector<std::vector<StateIndex>> weakly_connected_components(const Lts& lts);

struct SpanningTree {
    /// Arc index into Lts::arcs() that discovered each state; empty for the initial state.
    std::vector<std::optional<std::size_t>> parent_arc;
    /// Parikh vector of the tree path from the initial state.
    std::vector<ParikhVector> path_parikh;
    /// Non-tree arcs in insertion order.
    std::vector<std::size_t> chords;
};
/// Breadth-first tree; throws PreconditionError naming an unreachable state.
SpanningTree spanning_tree(const Lts& lts);

inline constexpr std::size_t default_cycle_limit = 1'000'000;

/// The <-minimal Parikh vectors of cycles through reachable states, sorted.
/// Throws LimitExceeded once more than `cycle_limit` elementary cycles are enumerated.
std::vector<ParikhVector> small_cycle_parikh_vectors(const Lts& lts,
                                                     std::size_t cycle_limit = default_cycle_limit);
bool cycles_same_pv(const Lts& lts);
bool weak_small_cycle_property(const Lts& lts);

struct Isomorphism {
    bool holds = false;
    /// mapping[s1] = image state in the second lts.
    std::vector<StateIndex> mapping;
    std::string reason;
};
/// Labels are matched by name.
Isomorphism isomorphic(const Lts& first, const Lts& second);

struct Bisimulation {
    bool holds = false;
    std::vector<std::pair<StateIndex, StateIndex>> relation;
};
Bisimulation bisimilar(const Lts& first, const Lts& second);

struct LanguageEquivalence {
    bool holds = true;
    /// Shortest word enabled in exactly one of the two systems.
    std::optional<std::vector<std::string>> distinguishing_word;
};
LanguageEquivalence language_equivalent(const Lts& first, const Lts& second);

} // namespace apt
