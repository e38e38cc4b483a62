#include "apt/lts_analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "apt/error.hpp"

namespace apt {

std::vector<StateIndex> reachable_states(const Lts& lts) {
    std::vector<bool> seen(lts.num_states(), false);
    std::vector<StateIndex> order{lts.initial()};
    seen[lts.initial()] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (std::size_t a : lts.outgoing(order[head])) {
            StateIndex t = lts.arc(a).target;
            if (!seen[t]) {
                seen[t] = true;
                order.push_back(t);
            }
        }
    }
    return order;
}

std::vector<bool> reachable_mask(const Lts& lts) {
    std::vector<bool> mask(lts.num_states(), false);
    for (StateIndex s : reachable_states(lts))
        mask[s] = true;
    return mask;
}

TotalReachability is_totally_reachable(const Lts& lts) {
    TotalReachability result;
    auto reach = reachable_mask(lts);
    for (StateIndex s = 0; s < lts.num_states(); ++s) {
        if (!reach[s]) {
            result.holds = false;
            result.unreachable_state = s;
            return result;
        }
    }
    std::vector<bool> used(lts.num_labels(), false);
    for (const auto& arc : lts.arcs())
        used[arc.label] = true;
    for (LabelIndex l = 0; l < lts.num_labels(); ++l) {
        if (!used[l]) {
            result.holds = false;
            result.unused_label = l;
            return result;
        }
    }
    return result;
}

Determinism is_deterministic(const Lts& lts) {
    Determinism result;
    for (StateIndex s : reachable_states(lts)) {
        std::map<LabelIndex, StateIndex> seen;
        for (std::size_t a : lts.outgoing(s)) {
            const auto& arc = lts.arc(a);
            auto [it, inserted] = seen.emplace(arc.label, arc.target);
            if (!inserted && it->second != arc.target) {
                result.holds = false;
                result.witness = NondeterministicChoice{s, arc.label, it->second, arc.target};
                return result;
            }
        }
    }
    return result;
}

Persistence is_persistent(const Lts& lts) {
    if (auto det = is_deterministic(lts); !det.holds)
        throw PreconditionError("persistence is only defined for deterministic lts; state '" +
                                lts.state_name(det.witness->state) + "' has two '" +
                                lts.label_name(det.witness->label) + "' successors");
    Persistence result;
    for (StateIndex s : reachable_states(lts)) {
        std::vector<LabelIndex> enabled;
        for (std::size_t a : lts.outgoing(s))
            enabled.push_back(lts.arc(a).label);
        for (std::size_t i = 0; i < enabled.size(); ++i) {
            for (std::size_t j = i + 1; j < enabled.size(); ++j) {
                LabelIndex t = enabled[i];
                LabelIndex u = enabled[j];
                auto tu = lts.successor(*lts.successor(s, t), u);
                auto ut = lts.successor(*lts.successor(s, u), t);
                if (!tu || !ut || *tu != *ut) {
                    result.holds = false;
                    result.witness = MissingDiamond{s, t, u};
                    return result;
                }
            }
        }
    }
    return result;
}

Reversibility is_reversible(const Lts& lts) {
    // states from which the initial state can be reached
    std::vector<bool> back(lts.num_states(), false);
    std::deque<StateIndex> queue{lts.initial()};
    back[lts.initial()] = true;
    while (!queue.empty()) {
        StateIndex s = queue.front();
        queue.pop_front();
        for (std::size_t a : lts.incoming(s)) {
            StateIndex p = lts.arc(a).source;
            if (!back[p]) {
                back[p] = true;
                queue.push_back(p);
            }
        }
    }
    Reversibility result;
    for (StateIndex s : reachable_states(lts)) {
        if (!back[s]) {
            result.holds = false;
            result.witness = s;
            return result;
        }
    }
    return result;
}

namespace {

std::vector<std::vector<StateIndex>> group_components(const std::vector<std::size_t>& component_of) {
    std::map<std::size_t, std::vector<StateIndex>> groups;
    for (StateIndex s = 0; s < component_of.size(); ++s)
        groups[component_of[s]].push_back(s);
    std::vector<std::vector<StateIndex>> result;
    for (auto& [id, members] : groups)
        result.push_back(std::move(members));
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return result;
}

// Tarjan's algorithm restricted to states with allowed[s]; returns a component id per state
// (states outside the mask get id SIZE_MAX).
std::vector<std::size_t> tarjan(const Lts& lts, const std::vector<bool>& allowed) {
    const std::size_t n = lts.num_states();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, none), low(n, 0), component(n, none);
    std::vector<bool> on_stack(n, false);
    std::vector<StateIndex> stack;
    std::size_t counter = 0;
    std::size_t components = 0;

    struct Frame {
        StateIndex state;
        std::size_t next_arc;
    };
    for (StateIndex root = 0; root < n; ++root) {
        if (!allowed[root] || index[root] != none)
            continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& out = lts.outgoing(f.state);
            if (f.next_arc < out.size()) {
                StateIndex w = lts.arc(out[f.next_arc++]).target;
                if (!allowed[w])
                    continue;
                if (index[w] == none) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.state] = std::min(low[f.state], index[w]);
                }
                continue;
            }
            StateIndex v = f.state;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().state] = std::min(low[frames.back().state], low[v]);
            if (low[v] == index[v]) {
                StateIndex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component[w] = components;
                } while (w != v);
                ++components;
            }
        }
    }
    return component;
}

} // namespace

std::vector<std::vector<StateIndex>> strongly_connected_components(const Lts& lts) {
    return group_components(tarjan(lts, std::vector<bool>(lts.num_states(), true)));
}

std::vector<std::vector<StateIndex>> weakly_connected_components(const Lts& lts) {
    std::vector<std::size_t> parent(lts.num_states());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& arc : lts.arcs()) {
        auto a = find(arc.source);
        auto b = find(arc.target);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> component(lts.num_states());
    for (StateIndex s = 0; s < lts.num_states(); ++s)
        component[s] = find(s);
    return group_components(component);
}

SpanningTree spanning_tree(const Lts& lts) {
    SpanningTree tree;
    const std::size_t n = lts.num_states();
    tree.parent_arc.assign(n, std::nullopt);
    tree.path_parikh.assign(n, lts.zero_vector());
    std::vector<bool> seen(n, false);
    std::vector<bool> tree_arc(lts.num_arcs(), false);
    std::vector<StateIndex> queue{lts.initial()};
    seen[lts.initial()] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        StateIndex s = queue[head];
        for (std::size_t a : lts.outgoing(s)) {
            const auto& arc = lts.arc(a);
            if (seen[arc.target])
                continue;
            seen[arc.target] = true;
            tree_arc[a] = true;
            tree.parent_arc[arc.target] = a;
            tree.path_parikh[arc.target] = tree.path_parikh[s];
            tree.path_parikh[arc.target][arc.label] += 1;
            queue.push_back(arc.target);
        }
    }
    for (StateIndex s = 0; s < n; ++s)
        if (!seen[s])
            throw PreconditionError("state '" + lts.state_name(s) + "' is not reachable");
    for (std::size_t a = 0; a < lts.num_arcs(); ++a)
        if (!tree_arc[a])
            tree.chords.push_back(a);
    return tree;
}

namespace {

// Johnson's elementary circuit enumeration over labelled arcs.
class CircuitFinder {
  public:
    CircuitFinder(const Lts& lts, std::size_t limit, std::set<ParikhVector>& out)
        : lts_(lts), limit_(limit), out_(out), blocked_(lts.num_states(), false),
          blockers_(lts.num_states()), in_scope_(lts.num_states(), false) {}

    void run(const std::vector<bool>& reachable) {
        const std::size_t n = lts_.num_states();
        for (StateIndex start = 0; start < n; ++start) {
            if (!reachable[start])
                continue;
            std::vector<bool> allowed(n, false);
            for (StateIndex v = start; v < n; ++v)
                allowed[v] = reachable[v];
            auto component = tarjan(lts_, allowed);
            for (StateIndex v = 0; v < n; ++v) {
                in_scope_[v] = allowed[v] && component[v] == component[start];
                blocked_[v] = false;
                blockers_[v].clear();
            }
            start_ = start;
            circuit(start);
        }
    }

  private:
    bool circuit(StateIndex v) {
        bool found = false;
        blocked_[v] = true;
        for (std::size_t a : lts_.outgoing(v)) {
            const auto& arc = lts_.arc(a);
            if (!in_scope_[arc.target])
                continue;
            labels_.push_back(arc.label);
            if (arc.target == start_) {
                record();
                found = true;
            } else if (!blocked_[arc.target] && circuit(arc.target)) {
                found = true;
            }
            labels_.pop_back();
        }
        if (found) {
            unblock(v);
        } else {
            for (std::size_t a : lts_.outgoing(v)) {
                StateIndex w = lts_.arc(a).target;
                if (in_scope_[w])
                    blockers_[w].insert(v);
            }
        }
        return found;
    }

    void unblock(StateIndex v) {
        std::vector<StateIndex> work{v};
        while (!work.empty()) {
            StateIndex u = work.back();
            work.pop_back();
            if (!blocked_[u])
                continue;
            blocked_[u] = false;
            for (StateIndex w : blockers_[u])
                work.push_back(w);
            blockers_[u].clear();
        }
    }

    void record() {
        if (++count_ > limit_)
            throw LimitExceeded("more than " + std::to_string(limit_) + " elementary cycles");
        ParikhVector pv = lts_.zero_vector();
        for (LabelIndex l : labels_)
            pv[l] += 1;
        out_.insert(std::move(pv));
    }

    const Lts& lts_;
    std::size_t limit_;
    std::set<ParikhVector>& out_;
    std::vector<bool> blocked_;
    std::vector<std::set<StateIndex>> blockers_;
    std::vector<bool> in_scope_;
    std::vector<LabelIndex> labels_;
    StateIndex start_ = 0;
    std::size_t count_ = 0;
};

} // namespace

std::vector<ParikhVector> small_cycle_parikh_vectors(const Lts& lts, std::size_t cycle_limit) {
    std::set<ParikhVector> all;
    CircuitFinder(lts, cycle_limit, all).run(reachable_mask(lts));
    std::vector<ParikhVector> minimal;
    for (const auto& pv : all) {
        bool dominated = std::any_of(all.begin(), all.end(),
                                     [&](const ParikhVector& other) { return other.strictly_less(pv); });
        if (!dominated)
            minimal.push_back(pv);
    }
    return minimal;
}

bool cycles_same_pv(const Lts& lts) { return small_cycle_parikh_vectors(lts).size() <= 1; }

bool weak_small_cycle_property(const Lts& lts) {
    auto pvs = small_cycle_parikh_vectors(lts);
    for (std::size_t i = 0; i < pvs.size(); ++i)
        for (std::size_t j = i + 1; j < pvs.size(); ++j)
            if (!pvs[i].disjoint_support(pvs[j]))
                return false;
    return true;
}

namespace {

struct LabelMatch {
    bool ok = true;
    std::vector<LabelIndex> to_second;
    std::string reason;
};

LabelMatch match_labels(const Lts& first, const Lts& second) {
    LabelMatch m;
    if (first.num_labels() != second.num_labels()) {
        m.ok = false;
        m.reason = "label sets differ in size";
        return m;
    }
    for (LabelIndex l = 0; l < first.num_labels(); ++l) {
        auto other = second.find_label(first.label_name(l));
        if (!other) {
            m.ok = false;
            m.reason = "label '" + first.label_name(l) + "' missing in second lts";
            return m;
        }
        m.to_second.push_back(*other);
    }
    return m;
}

std::set<LabelIndex> enabled_set(const Lts& lts, StateIndex s, const std::vector<LabelIndex>* relabel) {
    std::set<LabelIndex> labels;
    for (std::size_t a : lts.outgoing(s)) {
        LabelIndex l = lts.arc(a).label;
        labels.insert(relabel ? (*relabel)[l] : l);
    }
    return labels;
}

} // namespace

Isomorphism isomorphic(const Lts& first, const Lts& second) {
    Isomorphism result;
    auto labels = match_labels(first, second);
    if (!labels.ok) {
        result.reason = labels.reason;
        return result;
    }
    if (first.num_states() != second.num_states()) {
        result.reason = "different number of states";
        return result;
    }
    if (first.num_arcs() != second.num_arcs()) {
        result.reason = "different number of arcs";
        return result;
    }
    const std::size_t n = first.num_states();

    // Visit order: BFS from the initial state, unreachable states afterwards.
    std::vector<StateIndex> order = reachable_states(first);
    {
        auto mask = reachable_mask(first);
        for (StateIndex s = 0; s < n; ++s)
            if (!mask[s])
                order.push_back(s);
    }
    std::vector<std::optional<std::size_t>> discovering_arc(n);
    {
        std::vector<bool> placed(n, false);
        for (StateIndex s : order) {
            placed[s] = true;
            for (std::size_t a : first.outgoing(s)) {
                StateIndex t = first.arc(a).target;
                if (!placed[t] && !discovering_arc[t])
                    discovering_arc[t] = a;
            }
        }
        discovering_arc[first.initial()].reset();
    }

    using Key = std::tuple<StateIndex, LabelIndex, StateIndex>;
    std::set<Key> second_arcs;
    for (const auto& arc : second.arcs())
        second_arcs.emplace(arc.source, arc.label, arc.target);

    auto signature = [](const Lts& lts, StateIndex s, const std::vector<LabelIndex>* relabel) {
        return std::make_tuple(lts.incoming(s).size(), lts.outgoing(s).size(), enabled_set(lts, s, relabel));
    };
    std::vector<decltype(signature(first, 0, nullptr))> first_sig, second_sig;
    for (StateIndex s = 0; s < n; ++s) {
        first_sig.push_back(signature(first, s, &labels.to_second));
        second_sig.push_back(signature(second, s, nullptr));
    }

    constexpr StateIndex unassigned = static_cast<StateIndex>(-1);
    std::vector<StateIndex> image(n, unassigned);
    std::vector<bool> used(n, false);

    // Arcs between x and already-mapped states (plus x itself) must correspond in both directions.
    auto consistent = [&](StateIndex x, StateIndex y) {
        std::size_t count_first = 0;
        auto check = [&](std::size_t a) {
            const auto& arc = first.arc(a);
            StateIndex src = arc.source == x ? y : image[arc.source];
            StateIndex dst = arc.target == x ? y : image[arc.target];
            if (src == unassigned || dst == unassigned)
                return true;
            ++count_first;
            return second_arcs.contains({src, labels.to_second[arc.label], dst});
        };
        for (std::size_t a : first.outgoing(x))
            if (!check(a))
                return false;
        for (std::size_t a : first.incoming(x))
            if (first.arc(a).source != x && !check(a))
                return false;
        std::size_t count_second = 0;
        auto mapped = [&](StateIndex s2) { return s2 == y || used[s2]; };
        for (std::size_t a : second.outgoing(y))
            if (mapped(second.arc(a).target))
                ++count_second;
        for (std::size_t a : second.incoming(y))
            if (second.arc(a).source != y && mapped(second.arc(a).source))
                ++count_second;
        return count_first == count_second;
    };

    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == order.size())
            return true;
        StateIndex x = order[depth];
        std::vector<StateIndex> candidates;
        if (depth == 0) {
            candidates.push_back(second.initial());
        } else if (discovering_arc[x]) {
            const auto& arc = first.arc(*discovering_arc[x]);
            for (std::size_t a : second.outgoing(image[arc.source])) {
                const auto& arc2 = second.arc(a);
                if (arc2.label == labels.to_second[arc.label])
                    candidates.push_back(arc2.target);
            }
        } else {
            for (StateIndex y = 0; y < n; ++y)
                candidates.push_back(y);
        }
        for (StateIndex y : candidates) {
            if (used[y] || first_sig[x] != second_sig[y] || !consistent(x, y))
                continue;
            image[x] = y;
            used[y] = true;
            if (extend(depth + 1))
                return true;
            image[x] = unassigned;
            used[y] = false;
        }
        return false;
    };

    if (extend(0)) {
        result.holds = true;
        result.mapping = image;
    } else {
        result.reason = "no arc-preserving bijection exists";
    }
    return result;
}

Bisimulation bisimilar(const Lts& first, const Lts& second) {
    const std::size_t n1 = first.num_states();
    const std::size_t n = n1 + second.num_states();
    std::map<std::string, std::size_t> label_ids;
    auto label_id = [&](const std::string& name) { return label_ids.emplace(name, label_ids.size()).first->second; };

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> succ(n);
    for (const auto& arc : first.arcs())
        succ[arc.source].emplace_back(label_id(first.label_name(arc.label)), arc.target);
    for (const auto& arc : second.arcs())
        succ[n1 + arc.source].emplace_back(label_id(second.label_name(arc.label)), n1 + arc.target);

    std::vector<std::size_t> block(n, 0);
    std::size_t blocks = n == 0 ? 0 : 1;
    while (true) {
        std::map<std::pair<std::size_t, std::set<std::pair<std::size_t, std::size_t>>>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::set<std::pair<std::size_t, std::size_t>> sig;
            for (auto [l, t] : succ[s])
                sig.emplace(l, block[t]);
            next[s] = ids.emplace(std::make_pair(block[s], std::move(sig)), ids.size()).first->second;
        }
        std::size_t count = ids.size();
        block = std::move(next);
        if (count == blocks)
            break;
        blocks = count;
    }

    Bisimulation result;
    result.holds = block[first.initial()] == block[n1 + second.initial()];
    if (result.holds) {
        for (StateIndex s = 0; s < n1; ++s)
            for (StateIndex t = 0; t < second.num_states(); ++t)
                if (block[s] == block[n1 + t])
                    result.relation.emplace_back(s, t);
    }
    return result;
}

LanguageEquivalence language_equivalent(const Lts& first, const Lts& second) {
    std::vector<std::string> alphabet = first.label_names();
    for (const auto& name : second.label_names())
        if (!first.find_label(name))
            alphabet.push_back(name);

    using StateSet = std::vector<StateIndex>;
    auto step = [](const Lts& lts, const StateSet& from, const std::string& label) {
        StateSet next;
        auto l = lts.find_label(label);
        if (!l)
            return next;
        for (StateIndex s : from)
            for (std::size_t a : lts.outgoing(s))
                if (lts.arc(a).label == *l)
                    next.push_back(lts.arc(a).target);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        return next;
    };

    struct Node {
        StateSet left, right;
        std::size_t parent;
        std::size_t letter;
    };
    std::vector<Node> nodes{{{first.initial()}, {second.initial()}, 0, 0}};
    std::set<std::pair<StateSet, StateSet>> seen{{nodes[0].left, nodes[0].right}};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        for (std::size_t letter = 0; letter < alphabet.size(); ++letter) {
            StateSet left = step(first, nodes[head].left, alphabet[letter]);
            StateSet right = step(second, nodes[head].right, alphabet[letter]);
            if (left.empty() != right.empty()) {
                std::vector<std::string> word{alphabet[letter]};
                for (std::size_t at = head; at != 0; at = nodes[at].parent)
                    word.push_back(alphabet[nodes[at].letter]);
                std::reverse(word.begin(), word.end());
                return {false, std::move(word)};
            }
            if (left.empty())
                continue;
            if (seen.emplace(left, right).second)
                nodes.push_back({std::move(left), std::move(right), head, letter});
        }
    }
    return {};
}

} // namespace apt
