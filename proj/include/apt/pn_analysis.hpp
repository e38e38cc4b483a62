#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apt/lts.hpp"
#include "apt/petri_net.hpp"

namespace apt {

bool enabled(const PetriNet& net, const Marking& marking, TransitionIndex t);
/// Throws PreconditionError naming a place with too few tokens when t is disabled.
Marking fire(const PetriNet& net, const Marking& marking, TransitionIndex t);

struct FiringArc {
    StateIndex source;
    TransitionIndex transition;
    StateIndex target;
};

/// Reachability graph: states s0, s1, ... in breadth-first discovery order.
struct ReachabilityGraph {
    Lts lts;
    std::vector<Marking> markings;
    std::vector<FiringArc> firings;
};

inline constexpr std::size_t default_state_limit = 1'000'000;

/// Throws LimitExceeded ("possibly unbounded") when more than `state_limit` states are found.
ReachabilityGraph reachability_graph(const PetriNet& net, std::size_t state_limit = default_state_limit);

struct CoverabilityGraph {
    Lts lts;
    std::vector<OmegaMarking> markings;
    std::vector<FiringArc> firings;
    bool has_omega() const;
};
CoverabilityGraph coverability_graph(const PetriNet& net);

struct Boundedness {
    bool holds = true;
    std::optional<PlaceIndex> witness_place;
    std::vector<TransitionIndex> witness_sequence;
};
/// Without k: boundedness via the coverability graph. With k: k-boundedness,
/// witness is a shortest firing sequence exceeding k on the reported place.
Boundedness bounded(const PetriNet& net, std::optional<std::int64_t> k = std::nullopt);

struct ElementCheck {
    bool holds = true;
    /// Name of an offending node (or a short reason) when the check fails.
    std::optional<std::string> witness;
};

/// Every transition labels an arc of the coverability graph.
ElementCheck weakly_live(const PetriNet& net);

ElementCheck is_plain(const PetriNet& net);
ElementCheck is_pure(const PetriNet& net);
/// All (p,t) with F(p,t) > 0 and F(t,p) > 0.
std::vector<std::pair<PlaceIndex, TransitionIndex>> side_conditions(const PetriNet& net);
/// Side conditions where one of the two arcs carries weight > 1.
std::vector<std::pair<PlaceIndex, TransitionIndex>> non_plain_side_conditions(const PetriNet& net);
ElementCheck is_output_nonbranching(const PetriNet& net);
ElementCheck is_conflict_free(const PetriNet& net);
ElementCheck is_tnet(const PetriNet& net);
ElementCheck is_marked_graph(const PetriNet& net);
/// holds == true means an isolated place or transition exists (witness names it).
ElementCheck has_isolated_elements(const PetriNet& net);
ElementCheck is_weakly_connected(const PetriNet& net);
ElementCheck is_strongly_connected(const PetriNet& net);

/// Behavioural conflict freedom over all reachable markings. Non-plain nets are
/// reported as false with witness "not plain"; unbounded nets throw PreconditionError.
ElementCheck is_bcf(const PetriNet& net, std::size_t state_limit = default_state_limit);
ElementCheck is_bicf(const PetriNet& net, std::size_t state_limit = default_state_limit);

/// Both throw PreconditionError on unbounded nets.
bool is_persistent(const PetriNet& net);
bool is_reversible(const PetriNet& net);

struct WordCheck {
    bool holds = true;
    /// Longest prefix of the word that is fireable.
    std::vector<std::string> maximal_prefix;
};
/// Throws InputError when the word mentions a label unknown to the net.
WordCheck word_in_language(const PetriNet& net, const std::vector<std::string>& word);

enum class SeparabilityMode { weak, strong };
enum class SeparabilityAnswer { no, inconclusive };
struct Separability {
    SeparabilityAnswer answer = SeparabilityAnswer::inconclusive;
    std::vector<TransitionIndex> counterexample;
};
/// Throws InputError when k < 2 or the initial marking is not k times a marking.
Separability separable(const PetriNet& net, std::int64_t k, std::size_t length_bound, SeparabilityMode mode);

std::int64_t gcd_initial_marking(const PetriNet& net);

} // namespace apt
