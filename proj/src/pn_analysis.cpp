#include "apt/pn_analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "apt/error.hpp"
#include "apt/lts_analysis.hpp"

namespace apt {

bool enabled(const PetriNet& net, const Marking& marking, TransitionIndex t) {
    for (auto [p, w] : net.preset(t))
        if (marking[p] < w)
            return false;
    return true;
}

Marking fire(const PetriNet& net, const Marking& marking, TransitionIndex t) {
    Marking next = marking;
    for (auto [p, w] : net.preset(t)) {
        if (next[p] < w)
            throw PreconditionError("transition '" + net.transition_name(t) + "' is not enabled: place '" +
                                    net.place_name(p) + "' has " + std::to_string(marking[p]) + " < " +
                                    std::to_string(w) + " tokens");
        next[p] -= w;
    }
    for (auto [p, w] : net.postset(t))
        next[p] += w;
    return next;
}

namespace {

LtsBuilder state_graph_builder(const PetriNet& net) {
    LtsBuilder builder;
    builder.set_name(net.name());
    for (const auto& label : net.label_alphabet())
        builder.add_label(label);
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        if (net.location(t))
            builder.set_location(*builder.find_label(net.label(t)), net.location(t));
    return builder;
}

// Breadth-first path of transitions from s0 to `goal` over firing arcs.
std::vector<TransitionIndex> firing_path(std::size_t states, const std::vector<FiringArc>& firings, StateIndex goal) {
    std::vector<std::vector<std::size_t>> out(states);
    for (std::size_t i = 0; i < firings.size(); ++i)
        out[firings[i].source].push_back(i);
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(states, none);
    std::vector<bool> seen(states, false);
    std::deque<StateIndex> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        StateIndex s = queue.front();
        queue.pop_front();
        if (s == goal)
            break;
        for (std::size_t i : out[s]) {
            StateIndex t = firings[i].target;
            if (!seen[t]) {
                seen[t] = true;
                via[t] = i;
                queue.push_back(t);
            }
        }
    }
    std::vector<TransitionIndex> path;
    for (StateIndex s = goal; s != 0; s = firings[via[s]].source)
        path.push_back(firings[via[s]].transition);
    std::reverse(path.begin(), path.end());
    return path;
}

void require_bounded(const PetriNet& net, const char* what) {
    if (coverability_graph(net).has_omega())
        throw PreconditionError(std::string(what) + " requires a bounded net");
}

} // namespace

ReachabilityGraph reachability_graph(const PetriNet& net, std::size_t state_limit) {
    ReachabilityGraph graph;
    LtsBuilder builder = state_graph_builder(net);
    std::unordered_map<Marking, StateIndex, MarkingHash> index;
    auto intern = [&](const Marking& m) {
        auto [it, inserted] = index.emplace(m, graph.markings.size());
        if (inserted) {
            if (graph.markings.size() >= state_limit)
                throw LimitExceeded("reachability graph exceeds " + std::to_string(state_limit) +
                                    " states; the net is possibly unbounded, use the coverability graph");
            builder.add_state("s" + std::to_string(graph.markings.size()));
            graph.markings.push_back(m);
        }
        return it->second;
    };
    intern(net.initial_marking());
    for (StateIndex s = 0; s < graph.markings.size(); ++s) {
        for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
            if (!enabled(net, graph.markings[s], t))
                continue;
            StateIndex target = intern(fire(net, graph.markings[s], t));
            graph.firings.push_back({s, t, target});
            builder.add_arc(s, *builder.find_label(net.label(t)), target);
        }
    }
    builder.set_initial(0);
    graph.lts = builder.build();
    return graph;
}

bool CoverabilityGraph::has_omega() const {
    return std::any_of(markings.begin(), markings.end(), [](const OmegaMarking& m) { return m.has_omega(); });
}

CoverabilityGraph coverability_graph(const PetriNet& net) {
    CoverabilityGraph graph;
    LtsBuilder builder = state_graph_builder(net);
    std::vector<StateIndex> parent;
    std::unordered_map<OmegaMarking, StateIndex, OmegaMarkingHash> index;

    auto add_node = [&](OmegaMarking m, StateIndex from) {
        StateIndex id = graph.markings.size();
        builder.add_state("s" + std::to_string(id));
        index.emplace(m, id);
        graph.markings.push_back(std::move(m));
        parent.push_back(from);
        return id;
    };
    add_node(OmegaMarking(net.initial_marking()), 0);

    for (StateIndex s = 0; s < graph.markings.size(); ++s) {
        for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
            const OmegaMarking& current = graph.markings[s];
            bool is_enabled = true;
            for (auto [p, w] : net.preset(t))
                if (current[p] < w)
                    is_enabled = false;
            if (!is_enabled)
                continue;
            OmegaMarking next = current;
            for (auto [p, w] : net.preset(t))
                if (!next.is_omega(p))
                    next[p] -= w;
            for (auto [p, w] : net.postset(t))
                if (!next.is_omega(p))
                    next[p] += w;

            // accelerate against strictly covered ancestors on the tree path
            for (bool changed = true; changed;) {
                changed = false;
                for (StateIndex a = s;; a = parent[a]) {
                    const OmegaMarking& ancestor = graph.markings[a];
                    if (next.covers(ancestor) && !(next == ancestor)) {
                        for (PlaceIndex p = 0; p < next.size(); ++p) {
                            if (!next.is_omega(p) && next[p] > ancestor[p]) {
                                next[p] = OmegaMarking::omega;
                                changed = true;
                            }
                        }
                    }
                    if (a == 0)
                        break;
                }
            }

            StateIndex target;
            if (auto it = index.find(next); it != index.end())
                target = it->second;
            else
                target = add_node(std::move(next), s);
            graph.firings.push_back({s, t, target});
            builder.add_arc(s, *builder.find_label(net.label(t)), target);
        }
    }
    builder.set_initial(0);
    graph.lts = builder.build();
    return graph;
}

Boundedness bounded(const PetriNet& net, std::optional<std::int64_t> k) {
    Boundedness result;
    if (!k) {
        auto cg = coverability_graph(net);
        for (StateIndex s = 0; s < cg.markings.size(); ++s) {
            for (PlaceIndex p = 0; p < net.num_places(); ++p) {
                if (cg.markings[s].is_omega(p)) {
                    result.holds = false;
                    result.witness_place = p;
                    result.witness_sequence = firing_path(cg.markings.size(), cg.firings, s);
                    return result;
                }
            }
        }
        return result;
    }

    auto violation = [&](const Marking& m) -> std::optional<PlaceIndex> {
        for (PlaceIndex p = 0; p < m.size(); ++p)
            if (m[p] > *k)
                return p;
        return std::nullopt;
    };
    if (auto p = violation(net.initial_marking())) {
        result.holds = false;
        result.witness_place = p;
        return result;
    }
    // Breadth-first over concrete markings: terminates on bounded nets, and on unbounded
    // nets some finite level exceeds k.
    struct Node {
        Marking marking;
        std::size_t parent;
        TransitionIndex via;
    };
    std::vector<Node> nodes{{net.initial_marking(), 0, 0}};
    std::unordered_map<Marking, std::size_t, MarkingHash> seen{{net.initial_marking(), 0}};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
            if (!enabled(net, nodes[head].marking, t))
                continue;
            Marking next = fire(net, nodes[head].marking, t);
            if (auto p = violation(next)) {
                result.holds = false;
                result.witness_place = p;
                result.witness_sequence.push_back(t);
                for (std::size_t at = head; at != 0; at = nodes[at].parent)
                    result.witness_sequence.push_back(nodes[at].via);
                std::reverse(result.witness_sequence.begin(), result.witness_sequence.end());
                return result;
            }
            if (seen.emplace(next, nodes.size()).second)
                nodes.push_back({std::move(next), head, t});
        }
    }
    return result;
}

ElementCheck weakly_live(const PetriNet& net) {
    auto cg = coverability_graph(net);
    std::vector<bool> fired(net.num_transitions(), false);
    for (const auto& f : cg.firings)
        fired[f.transition] = true;
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        if (!fired[t])
            return {false, net.transition_name(t)};
    return {};
}

ElementCheck is_plain(const PetriNet& net) {
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        for (auto [p, w] : net.preset(t))
            if (w > 1)
                return {false, net.transition_name(t)};
        for (auto [p, w] : net.postset(t))
            if (w > 1)
                return {false, net.transition_name(t)};
    }
    return {};
}

std::vector<std::pair<PlaceIndex, TransitionIndex>> side_conditions(const PetriNet& net) {
    std::vector<std::pair<PlaceIndex, TransitionIndex>> result;
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        for (TransitionIndex t : net.place_postset(p))
            if (net.produce(t, p) > 0)
                result.emplace_back(p, t);
    return result;
}

std::vector<std::pair<PlaceIndex, TransitionIndex>> non_plain_side_conditions(const PetriNet& net) {
    std::vector<std::pair<PlaceIndex, TransitionIndex>> result;
    for (auto [p, t] : side_conditions(net))
        if (net.consume(p, t) > 1 || net.produce(t, p) > 1)
            result.emplace_back(p, t);
    return result;
}

ElementCheck is_pure(const PetriNet& net) {
    auto sides = side_conditions(net);
    if (sides.empty())
        return {};
    return {false, net.place_name(sides.front().first)};
}

ElementCheck is_output_nonbranching(const PetriNet& net) {
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        if (net.place_postset(p).size() > 1)
            return {false, net.place_name(p)};
    return {};
}

ElementCheck is_conflict_free(const PetriNet& net) {
    if (!is_plain(net).holds)
        return {false, "not plain"};
    for (PlaceIndex p = 0; p < net.num_places(); ++p) {
        const auto& post = net.place_postset(p);
        if (post.size() <= 1)
            continue;
        const auto& pre = net.place_preset(p);
        if (!std::includes(pre.begin(), pre.end(), post.begin(), post.end()))
            return {false, net.place_name(p)};
    }
    return {};
}

ElementCheck is_tnet(const PetriNet& net) {
    if (!is_plain(net).holds)
        return {false, "not plain"};
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        if (net.place_postset(p).size() > 1 || net.place_preset(p).size() > 1)
            return {false, net.place_name(p)};
    return {};
}

ElementCheck is_marked_graph(const PetriNet& net) {
    if (!is_plain(net).holds)
        return {false, "not plain"};
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        if (net.place_postset(p).size() != 1 || net.place_preset(p).size() != 1)
            return {false, net.place_name(p)};
    return {};
}

ElementCheck has_isolated_elements(const PetriNet& net) {
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        if (net.place_preset(p).empty() && net.place_postset(p).empty())
            return {true, net.place_name(p)};
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        if (net.preset(t).empty() && net.postset(t).empty())
            return {true, net.transition_name(t)};
    return {false, std::nullopt};
}

namespace {

// Nodes 0..|P|-1 are places, |P|.. are transitions.
std::vector<std::vector<std::size_t>> net_graph(const PetriNet& net, bool reversed) {
    const std::size_t np = net.num_places();
    std::vector<std::vector<std::size_t>> adj(np + net.num_transitions());
    auto edge = [&](std::size_t from, std::size_t to) {
        if (reversed)
            adj[to].push_back(from);
        else
            adj[from].push_back(to);
    };
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        for (auto [p, w] : net.preset(t))
            edge(p, np + t);
        for (auto [p, w] : net.postset(t))
            edge(np + t, p);
    }
    return adj;
}

std::vector<bool> graph_reach(const std::vector<std::vector<std::size_t>>& adj, std::size_t from) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return seen;
}

std::string node_name(const PetriNet& net, std::size_t node) {
    return node < net.num_places() ? net.place_name(node) : net.transition_name(node - net.num_places());
}

} // namespace

ElementCheck is_weakly_connected(const PetriNet& net) {
    auto forward = net_graph(net, false);
    if (forward.empty())
        return {};
    auto backward = net_graph(net, true);
    for (std::size_t v = 0; v < forward.size(); ++v)
        forward[v].insert(forward[v].end(), backward[v].begin(), backward[v].end());
    auto seen = graph_reach(forward, 0);
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v])
            return {false, node_name(net, v)};
    return {};
}

ElementCheck is_strongly_connected(const PetriNet& net) {
    auto forward = net_graph(net, false);
    if (forward.empty())
        return {};
    auto there = graph_reach(forward, 0);
    auto back = graph_reach(net_graph(net, true), 0);
    for (std::size_t v = 0; v < forward.size(); ++v)
        if (!there[v] || !back[v])
            return {false, node_name(net, v)};
    return {};
}

namespace {

ElementCheck conflict_check(const PetriNet& net, std::size_t state_limit, const char* what,
                            const std::function<bool(const Marking&, TransitionIndex, TransitionIndex)>& ok) {
    if (!is_plain(net).holds)
        return {false, "not plain"};
    require_bounded(net, what);
    auto rg = reachability_graph(net, state_limit);
    for (StateIndex s = 0; s < rg.markings.size(); ++s) {
        std::vector<TransitionIndex> active;
        for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
            if (enabled(net, rg.markings[s], t))
                active.push_back(t);
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j)
                if (!ok(rg.markings[s], active[i], active[j]))
                    return {false, net.transition_name(active[i]) + "," + net.transition_name(active[j]) + " at " +
                                       rg.lts.state_name(s)};
    }
    return {};
}

} // namespace

ElementCheck is_bcf(const PetriNet& net, std::size_t state_limit) {
    return conflict_check(net, state_limit, "BCF", [&](const Marking&, TransitionIndex t, TransitionIndex u) {
        for (auto [p, w] : net.preset(t))
            if (net.consume(p, u) > 0)
                return false;
        return true;
    });
}

ElementCheck is_bicf(const PetriNet& net, std::size_t state_limit) {
    return conflict_check(net, state_limit, "BiCF", [&](const Marking& m, TransitionIndex t, TransitionIndex u) {
        for (PlaceIndex p = 0; p < net.num_places(); ++p)
            if (m[p] < net.consume(p, t) + net.consume(p, u))
                return false;
        return true;
    });
}

bool is_persistent(const PetriNet& net) {
    require_bounded(net, "persistence");
    return is_persistent(reachability_graph(net).lts).holds;
}

bool is_reversible(const PetriNet& net) {
    require_bounded(net, "reversibility");
    return is_reversible(reachability_graph(net).lts).holds;
}

WordCheck word_in_language(const PetriNet& net, const std::vector<std::string>& word) {
    auto alphabet = net.label_alphabet();
    for (const auto& letter : word)
        if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end())
            throw InputError("unknown label '" + letter + "'");
    WordCheck result;
    std::set<Marking> frontier{net.initial_marking()};
    for (const auto& letter : word) {
        std::set<Marking> next;
        for (const auto& m : frontier)
            for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
                if (net.label(t) == letter && enabled(net, m, t))
                    next.insert(fire(net, m, t));
        if (next.empty()) {
            result.holds = false;
            return result;
        }
        result.maximal_prefix.push_back(letter);
        frontier = std::move(next);
    }
    return result;
}

namespace {

using Parikh = std::vector<std::int64_t>;

// Parikh vectors of all sequences of length <= bound fireable from `start`.
std::set<Parikh> fireable_parikh_vectors(const PetriNet& net, const Marking& start, std::size_t bound) {
    std::set<Parikh> result;
    std::set<std::pair<Marking, Parikh>> level{{start, Parikh(net.num_transitions(), 0)}};
    result.insert(Parikh(net.num_transitions(), 0));
    for (std::size_t depth = 0; depth < bound && !level.empty(); ++depth) {
        std::set<std::pair<Marking, Parikh>> next;
        for (const auto& [m, pv] : level) {
            for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
                if (!enabled(net, m, t))
                    continue;
                Parikh extended = pv;
                ++extended[t];
                result.insert(extended);
                next.emplace(fire(net, m, t), std::move(extended));
            }
        }
        level = std::move(next);
    }
    return result;
}

bool leq(const Parikh& a, const Parikh& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

bool weakly_decomposes(const Parikh& target, const std::set<Parikh>& parts, std::int64_t k) {
    std::set<Parikh> sums{Parikh(target.size(), 0)};
    for (std::int64_t i = 0; i < k; ++i) {
        std::set<Parikh> next;
        for (const auto& s : sums)
            for (const auto& p : parts) {
                Parikh candidate = s;
                for (std::size_t j = 0; j < candidate.size(); ++j)
                    candidate[j] += p[j];
                if (leq(candidate, target))
                    next.insert(std::move(candidate));
            }
        sums = std::move(next);
    }
    return sums.contains(target);
}

// Can the sequence be split into k interleaved sequences, each fireable from `base`?
bool strongly_decomposes(const PetriNet& net, const std::vector<TransitionIndex>& sequence, const Marking& base,
                         std::int64_t k) {
    using Components = std::vector<Marking>;
    std::set<Components> current{Components(static_cast<std::size_t>(k), base)};
    for (TransitionIndex t : sequence) {
        std::set<Components> next;
        for (const auto& comps : current) {
            for (std::size_t i = 0; i < comps.size(); ++i) {
                if (!enabled(net, comps[i], t))
                    continue;
                Components moved = comps;
                moved[i] = fire(net, comps[i], t);
                std::sort(moved.begin(), moved.end());
                next.insert(std::move(moved));
            }
        }
        if (next.empty())
            return false;
        current = std::move(next);
    }
    return true;
}

} // namespace

Separability separable(const PetriNet& net, std::int64_t k, std::size_t length_bound, SeparabilityMode mode) {
    if (k < 2)
        throw InputError("separability needs k >= 2");
    Marking base(net.num_places());
    for (PlaceIndex p = 0; p < net.num_places(); ++p) {
        if (net.initial_marking()[p] % k != 0)
            throw InputError("initial marking is not divisible by " + std::to_string(k));
        base[p] = net.initial_marking()[p] / k;
    }
    std::set<Parikh> parts;
    if (mode == SeparabilityMode::weak)
        parts = fireable_parikh_vectors(net, base, length_bound);

    Separability result;
    std::vector<TransitionIndex> sequence;
    Parikh pv(net.num_transitions(), 0);
    std::function<bool(const Marking&)> explore = [&](const Marking& m) -> bool {
        if (!sequence.empty()) {
            bool ok = mode == SeparabilityMode::weak ? weakly_decomposes(pv, parts, k)
                                                     : strongly_decomposes(net, sequence, base, k);
            if (!ok) {
                result.answer = SeparabilityAnswer::no;
                result.counterexample = sequence;
                return true;
            }
        }
        if (sequence.size() >= length_bound)
            return false;
        for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
            if (!enabled(net, m, t))
                continue;
            sequence.push_back(t);
            ++pv[t];
            bool found = explore(fire(net, m, t));
            --pv[t];
            sequence.pop_back();
            if (found)
                return true;
        }
        return false;
    };
    explore(net.initial_marking());
    return result;
}

std::int64_t gcd_initial_marking(const PetriNet& net) {
    std::int64_t g = 0;
    for (auto tokens : net.initial_marking().tokens())
        g = std::gcd(g, tokens);
    return g;
}

} // namespace apt
