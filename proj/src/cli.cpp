#include "apt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <variant>

#include "apt/apt_format.hpp"
#include "apt/error.hpp"
#include "apt/generators.hpp"
#include "apt/lts_analysis.hpp"
#include "apt/pn_analysis.hpp"
#include "apt/structure.hpp"
#include "apt/synthesis.hpp"

namespace apt::cli {

using Value = std::variant<std::monostate, Document, std::int64_t, PropertySet, std::vector<std::string>, std::string>;

class Arguments {
  public:
    Arguments(const ModuleDescriptor& module, std::vector<Value> values) : module_(module), values_(std::move(values)) {}

    bool has(const std::string& name) const { return !std::holds_alternative<std::monostate>(at(name)); }
    const PetriNet& net(const std::string& name) const { return std::get<Document>(at(name)).net(); }
    const Lts& lts(const std::string& name) const { return std::get<Document>(at(name)).lts(); }
    const Document& document(const std::string& name) const { return std::get<Document>(at(name)); }
    std::int64_t integer(const std::string& name) const { return std::get<std::int64_t>(at(name)); }
    const PropertySet& properties(const std::string& name) const { return std::get<PropertySet>(at(name)); }
    const std::vector<std::string>& word(const std::string& name) const {
        return std::get<std::vector<std::string>>(at(name));
    }
    const std::string& text(const std::string& name) const { return std::get<std::string>(at(name)); }

  private:
    const Value& at(const std::string& name) const {
        for (std::size_t i = 0; i < module_.params.size(); ++i)
            if (module_.params[i].name == name)
                return values_[i];
        throw std::logic_error("module " + module_.name + " has no parameter " + name);
    }

    const ModuleDescriptor& module_;
    std::vector<Value> values_;
};

namespace {

const char* yes_no(bool b) { return b ? "Yes" : "No"; }

std::string bracket(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i];
    return out + "]";
}

std::string state_list(const Lts& lts, const std::vector<StateIndex>& states) {
    std::vector<std::string> names;
    for (auto s : states)
        names.push_back(lts.state_name(s));
    return bracket(names);
}

std::string firing_sequence(const PetriNet& net, const std::vector<TransitionIndex>& seq) {
    std::vector<std::string> names;
    for (auto t : seq)
        names.push_back(net.transition_name(t));
    return bracket(names);
}

std::string place_list(const PetriNet& net, const PlaceSet& places) {
    std::vector<std::string> names;
    for (auto p : places)
        names.push_back(net.place_name(p));
    std::string inner = bracket(names);
    return "{" + inner.substr(1, inner.size() - 2) + "}";
}

std::string integer_vector(const exact::IntegerVector& v) {
    std::vector<std::string> items;
    for (const auto& x : v)
        items.push_back(x.get_str());
    return bracket(items);
}

std::string parikh(const Lts& lts, const ParikhVector& v) {
    std::string out = "{";
    for (LabelIndex l = 0; l < v.size(); ++l)
        out += (l ? ", " : "") + lts.label_name(l) + "=" + std::to_string(v[l]);
    return out + "}";
}

std::string matrix(const IntMatrix& m) {
    std::vector<std::string> rows;
    for (const auto& r : m) {
        std::vector<std::string> items;
        for (auto v : r)
            items.push_back(std::to_string(v));
        rows.push_back(bracket(items));
    }
    return bracket(rows);
}

void emit(const Arguments& args, const std::string& output, const std::string& text, std::ostream& out) {
    if (!args.has(output) || args.text(output) == "-") {
        out << text;
        return;
    }
    std::ofstream file(args.text(output), std::ios::binary);
    if (!file)
        throw InputError("cannot write file '" + args.text(output) + "'");
    file << text;
}

Lts as_lts(const Document& doc) { return doc.is_net() ? reachability_graph(doc.net()).lts : doc.lts(); }

void check(std::ostream& out, const std::string& key, const ElementCheck& c, const char* witness_key = "witness") {
    out << key << ": " << yes_no(c.holds) << '\n';
    if (!c.holds && c.witness)
        out << witness_key << ": " << *c.witness << '\n';
}

ModuleDescriptor structural(std::string name, std::string description, ElementCheck (*f)(const PetriNet&)) {
    std::string key = name;
    return {name,
            {{"pn", ParamType::net, false, "The Petri net that should be examined"}},
            {key, "witness"},
            std::move(description),
            [key, f](const Arguments& a, std::ostream& out) { check(out, key, f(a.net("pn"))); }};
}

std::string graph_text(const PetriNet& net, const Lts& lts, const auto& markings) {
    std::vector<std::string> comments;
    for (const auto& m : markings)
        comments.push_back(marking_comment(net, m.tokens()));
    return print_lts(lts, comments);
}

std::vector<ModuleDescriptor> build_registry() {
    const Param pn{"pn", ParamType::net, false, "The Petri net that should be examined"};
    const Param lts{"lts", ParamType::lts, false, "The lts that should be examined"};
    const Param graph{"graph", ParamType::net_or_lts, false, "A Petri net (its reachability graph is used) or an lts"};
    const Param output{"output", ParamType::output, true, "Output file, standard output if omitted or '-'"};

    std::vector<ModuleDescriptor> m;
    m.push_back({"bounded",
                 {pn, {"k", ParamType::integer, true, "If given, k-boundedness is checked"}},
                 {"bounded", "witness_place", "witness_firing_sequence"},
                 "Check if a Petri net is bounded or k-bounded.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& net = a.net("pn");
                     auto result = bounded(net, a.has("k") ? std::optional(a.integer("k")) : std::nullopt);
                     out << "bounded: " << yes_no(result.holds) << '\n';
                     if (!result.holds) {
                         out << "witness_place: " << net.place_name(*result.witness_place) << '\n';
                         out << "witness_firing_sequence: " << firing_sequence(net, result.witness_sequence) << '\n';
                     }
                 }});
    m.push_back({"coverability_graph",
                 {pn, output},
                 {"lts"},
                 "Compute the coverability graph of a Petri net; for bounded nets it is the reachability graph.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& net = a.net("pn");
                     auto cg = coverability_graph(net);
                     emit(a, "output", graph_text(net, cg.lts, cg.markings), out);
                 }});
    m.push_back({"reachability_graph",
                 {pn, output},
                 {"lts"},
                 "Compute the reachability graph of a bounded Petri net.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& net = a.net("pn");
                     auto rg = reachability_graph(net);
                     emit(a, "output", graph_text(net, rg.lts, rg.markings), out);
                 }});
    m.push_back({"deterministic", {lts}, {"deterministic", "witness"}, "Check if an lts is deterministic.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& l = a.lts("lts");
                     auto r = is_deterministic(l);
                     out << "deterministic: " << yes_no(r.holds) << '\n';
                     if (r.witness)
                         out << "witness: " << l.state_name(r.witness->state) << " --" << l.label_name(r.witness->label)
                             << "-> {" << l.state_name(r.witness->first_target) << ", "
                             << l.state_name(r.witness->second_target) << "}\n";
                 }});
    m.push_back({"totally_reachable", {lts}, {"totally_reachable", "unreachable_state", "unused_label"},
                 "Check that every state is reachable and every label occurs on some arc.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& l = a.lts("lts");
                     auto r = is_totally_reachable(l);
                     out << "totally_reachable: " << yes_no(r.holds) << '\n';
                     if (r.unreachable_state)
                         out << "unreachable_state: " << l.state_name(*r.unreachable_state) << '\n';
                     if (r.unused_label)
                         out << "unused_label: " << l.label_name(*r.unused_label) << '\n';
                 }});
    m.push_back({"persistent", {graph}, {"persistent", "witness"},
                 "Check persistence: enabled labels stay enabled after firing a different one.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& doc = a.document("graph");
                     if (doc.is_net()) {
                         out << "persistent: " << yes_no(is_persistent(doc.net())) << '\n';
                         return;
                     }
                     const auto& l = doc.lts();
                     auto r = is_persistent(l);
                     out << "persistent: " << yes_no(r.holds) << '\n';
                     if (r.witness)
                         out << "witness: " << l.state_name(r.witness->state) << " [" << l.label_name(r.witness->first)
                             << ", " << l.label_name(r.witness->second) << "]\n";
                 }});
    m.push_back({"reversible", {graph}, {"reversible", "witness"},
                 "Check that the initial state is reachable from every reachable state.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& doc = a.document("graph");
                     if (doc.is_net()) {
                         out << "reversible: " << yes_no(is_reversible(doc.net())) << '\n';
                         return;
                     }
                     auto r = is_reversible(doc.lts());
                     out << "reversible: " << yes_no(r.holds) << '\n';
                     if (r.witness)
                         out << "witness: " << doc.lts().state_name(*r.witness) << '\n';
                 }});
    m.push_back({"compute_pvs", {graph}, {"small_cycle_parikh_vectors"},
                 "Compute the Parikh vectors of all small cycles.",
                 [](const Arguments& a, std::ostream& out) {
                     Lts l = as_lts(a.document("graph"));
                     std::vector<std::string> items;
                     for (const auto& v : small_cycle_parikh_vectors(l))
                         items.push_back(parikh(l, v));
                     out << "small_cycle_parikh_vectors: " << bracket(items) << '\n';
                 }});
    m.push_back({"cycles_same_pv", {graph}, {"cycles_same_pv"},
                 "Check that all small cycles have the same Parikh vector.",
                 [](const Arguments& a, std::ostream& out) {
                     out << "cycles_same_pv: " << yes_no(cycles_same_pv(as_lts(a.document("graph")))) << '\n';
                 }});
    m.push_back({"weak_small_cycle_property", {graph}, {"weak_small_cycle_property"},
                 "Check that small cycle Parikh vectors have pairwise disjoint supports or coincide.",
                 [](const Arguments& a, std::ostream& out) {
                     out << "weak_small_cycle_property: "
                         << yes_no(weak_small_cycle_property(as_lts(a.document("graph")))) << '\n';
                 }});
    m.push_back({"strongly_connected_components", {graph}, {"components"},
                 "Compute the strongly connected components of an lts.",
                 [](const Arguments& a, std::ostream& out) {
                     Lts l = as_lts(a.document("graph"));
                     std::vector<std::string> items;
                     for (const auto& c : strongly_connected_components(l))
                         items.push_back(state_list(l, c));
                     out << "components: " << bracket(items) << '\n';
                 }});
    m.push_back({"weakly_connected_components", {graph}, {"components"},
                 "Compute the weakly connected components of an lts.",
                 [](const Arguments& a, std::ostream& out) {
                     Lts l = as_lts(a.document("graph"));
                     std::vector<std::string> items;
                     for (const auto& c : weakly_connected_components(l))
                         items.push_back(state_list(l, c));
                     out << "components: " << bracket(items) << '\n';
                 }});
    const Param first{"first", ParamType::net_or_lts, false, "First Petri net or lts"};
    const Param second{"second", ParamType::net_or_lts, false, "Second Petri net or lts"};
    m.push_back({"isomorphism", {first, second}, {"isomorphic", "mapping", "reason"},
                 "Check if two lts (or reachability graphs) are isomorphic.",
                 [](const Arguments& a, std::ostream& out) {
                     Lts l1 = as_lts(a.document("first"));
                     Lts l2 = as_lts(a.document("second"));
                     auto r = isomorphic(l1, l2);
                     out << "isomorphic: " << yes_no(r.holds) << '\n';
                     if (r.holds) {
                         std::vector<std::string> pairs;
                         for (StateIndex s = 0; s < r.mapping.size(); ++s)
                             pairs.push_back(l1.state_name(s) + "=" + l2.state_name(r.mapping[s]));
                         std::string inner = bracket(pairs);
                         out << "mapping: {" << inner.substr(1, inner.size() - 2) << "}\n";
                     } else if (!r.reason.empty()) {
                         out << "reason: " << r.reason << '\n';
                     }
                 }});
    m.push_back({"bisimulation", {first, second}, {"bisimilar"},
                 "Check if two lts (or reachability graphs) are strongly bisimilar.",
                 [](const Arguments& a, std::ostream& out) {
                     auto r = bisimilar(as_lts(a.document("first")), as_lts(a.document("second")));
                     out << "bisimilar: " << yes_no(r.holds) << '\n';
                 }});
    m.push_back({"language_equivalence", {first, second}, {"language_equivalent", "distinguishing_word"},
                 "Check if two lts (or reachability graphs) have the same prefix language.",
                 [](const Arguments& a, std::ostream& out) {
                     auto r = language_equivalent(as_lts(a.document("first")), as_lts(a.document("second")));
                     out << "language_equivalent: " << yes_no(r.holds) << '\n';
                     if (r.distinguishing_word)
                         out << "distinguishing_word: " << bracket(*r.distinguishing_word) << '\n';
                 }});
    m.push_back(structural("plain", "Check that all arc weights are at most one.", is_plain));
    m.push_back(structural("pure", "Check that no transition both consumes from and produces on a place.", is_pure));
    m.push_back(structural("output_nonbranching", "Check that every place has at most one output transition.",
                           is_output_nonbranching));
    m.push_back(structural("conflict_free",
                           "Check that every place with several output transitions is a side condition of each.",
                           is_conflict_free));
    m.push_back(structural("tnet", "Check that every place has at most one input and one output transition.", is_tnet));
    m.push_back(structural("marked_graph", "Check that every place has exactly one input and one output transition.",
                           is_marked_graph));
    m.push_back(structural("isolated_elements", "Check for places or transitions without any arc.",
                           has_isolated_elements));
    m.push_back(structural("strongly_connected", "Check if the net graph is strongly connected.", is_strongly_connected));
    m.push_back(structural("weakly_connected", "Check if the net graph is weakly connected.", is_weakly_connected));
    auto side = [](std::string name, std::string description, auto f) {
        return ModuleDescriptor{name,
                                {{"pn", ParamType::net, false, "The Petri net that should be examined"}},
                                {name},
                                std::move(description),
                                [name, f](const Arguments& a, std::ostream& out) {
                                    const auto& net = a.net("pn");
                                    std::vector<std::string> items;
                                    for (auto [p, t] : f(net))
                                        items.push_back("(" + net.place_name(p) + ", " + net.transition_name(t) + ")");
                                    out << name << ": " << bracket(items) << '\n';
                                }};
    };
    m.push_back(side("side_conditions", "List all side conditions (place, transition).", side_conditions));
    m.push_back(side("non_plain_side_conditions", "List side conditions where an arc weight exceeds one.",
                     non_plain_side_conditions));
    m.push_back({"bcf", {pn}, {"bcf", "witness"},
                 "Check behavioural conflict freedom over all reachable markings.",
                 [](const Arguments& a, std::ostream& out) { check(out, "bcf", is_bcf(a.net("pn"))); }});
    m.push_back({"bicf", {pn}, {"bicf", "witness"},
                 "Check behavioural input-conflict freedom over all reachable markings.",
                 [](const Arguments& a, std::ostream& out) { check(out, "bicf", is_bicf(a.net("pn"))); }});
    m.push_back({"weakly_live", {pn}, {"weakly_live", "witness"},
                 "Check that every transition can fire at least once.",
                 [](const Arguments& a, std::ostream& out) { check(out, "weakly_live", weakly_live(a.net("pn"))); }});
    m.push_back({"gcd", {pn}, {"gcd"}, "Greatest common divisor of the initial token counts.",
                 [](const Arguments& a, std::ostream& out) { out << "gcd: " << gcd_initial_marking(a.net("pn")) << '\n'; }});
    m.push_back({"separable",
                 {pn,
                  {"k", ParamType::integer, false, "Number of parts the initial marking is divided into"},
                  {"length", ParamType::integer, true, "Maximal firing sequence length to explore (default 8)"},
                  {"mode", ParamType::text, true, "weak or strong (default weak)"}},
                 {"separable", "counterexample"},
                 "Search for a counterexample to k-separability up to a length bound.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& net = a.net("pn");
                     std::int64_t length = a.has("length") ? a.integer("length") : 8;
                     if (length < 0)
                         throw InputError("length must be nonnegative");
                     SeparabilityMode mode = SeparabilityMode::weak;
                     if (a.has("mode")) {
                         if (a.text("mode") == "strong")
                             mode = SeparabilityMode::strong;
                         else if (a.text("mode") != "weak")
                             throw InputError("mode must be 'weak' or 'strong'");
                     }
                     auto r = separable(net, a.integer("k"), static_cast<std::size_t>(length), mode);
                     if (r.answer == SeparabilityAnswer::no) {
                         out << "separable: No\n";
                         out << "counterexample: " << firing_sequence(net, r.counterexample) << '\n';
                     } else {
                         out << "separable: Inconclusive\n";
                     }
                 }});
    m.push_back({"word_in_language",
                 {pn, {"word", ParamType::word, false, "Comma separated labels"}},
                 {"in_language", "maximal_prefix"},
                 "Check if a word is a firing sequence of the net.",
                 [](const Arguments& a, std::ostream& out) {
                     auto r = word_in_language(a.net("pn"), a.word("word"));
                     out << "in_language: " << yes_no(r.holds) << '\n';
                     if (!r.holds)
                         out << "maximal_prefix: " << bracket(r.maximal_prefix) << '\n';
                 }});
    m.push_back({"matrices", {pn}, {"places", "transitions", "backward", "forward", "incidence"},
                 "Print the backward, forward and incidence matrices (rows are places).",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& net = a.net("pn");
                     auto mats = incidence_matrices(net);
                     std::vector<std::string> places, transitions;
                     for (PlaceIndex p = 0; p < net.num_places(); ++p)
                         places.push_back(net.place_name(p));
                     for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
                         transitions.push_back(net.transition_name(t));
                     out << "places: " << bracket(places) << '\n';
                     out << "transitions: " << bracket(transitions) << '\n';
                     out << "backward: " << matrix(mats.backward) << '\n';
                     out << "forward: " << matrix(mats.forward) << '\n';
                     out << "incidence: " << matrix(mats.incidence) << '\n';
                 }});
    auto inv = [](std::string name, InvariantKind kind) {
        return ModuleDescriptor{name,
                                {{"pn", ParamType::net, false, "The Petri net that should be examined"}},
                                {name},
                                kind == InvariantKind::s ? "Compute all minimal semipositive S-invariants."
                                                         : "Compute all minimal semipositive T-invariants.",
                                [name, kind](const Arguments& a, std::ostream& out) {
                                    std::vector<std::string> items;
                                    for (const auto& v : invariants(a.net("pn"), kind))
                                        items.push_back(integer_vector(v));
                                    out << name << ": " << bracket(items) << '\n';
                                }};
    };
    m.push_back(inv("s_invariants", InvariantKind::s));
    m.push_back(inv("t_invariants", InvariantKind::t));
    auto covered = [](std::string name, InvariantKind kind) {
        return ModuleDescriptor{name,
                                {{"pn", ParamType::net, false, "The Petri net that should be examined"}},
                                {name, "uncovered"},
                                kind == InvariantKind::s ? "Check that every place lies in the support of an S-invariant."
                                                         : "Check that every transition lies in the support of a T-invariant.",
                                [name, kind](const Arguments& a, std::ostream& out) {
                                    const auto& net = a.net("pn");
                                    auto r = covered_by_invariants(net, kind);
                                    out << name << ": " << yes_no(r.holds) << '\n';
                                    if (r.uncovered)
                                        out << "uncovered: "
                                            << (kind == InvariantKind::s ? net.place_name(*r.uncovered)
                                                                         : net.transition_name(*r.uncovered))
                                            << '\n';
                                }};
    };
    m.push_back(covered("covered_by_s_invariants", InvariantKind::s));
    m.push_back(covered("covered_by_t_invariants", InvariantKind::t));
    auto sets = [](std::string name, std::string description, auto f) {
        return ModuleDescriptor{name,
                                {{"pn", ParamType::net, false, "The Petri net that should be examined"}},
                                {name},
                                std::move(description),
                                [name, f](const Arguments& a, std::ostream& out) {
                                    const auto& net = a.net("pn");
                                    std::vector<std::string> items;
                                    for (const auto& s : f(net, default_siphon_place_cap))
                                        items.push_back(place_list(net, s));
                                    out << name << ": " << bracket(items) << '\n';
                                }};
    };
    m.push_back(sets("minimal_siphons", "Compute all inclusion-minimal siphons.", minimal_siphons));
    m.push_back(sets("minimal_traps", "Compute all inclusion-minimal traps.", minimal_traps));
    m.push_back({"synthesize",
                 {{"properties", ParamType::properties, false,
                   "Comma separated list: none, pure, plain, output-nonbranching, t-net, conflict-free, "
                   "<k>-bounded, safe, language, verbose"},
                  {"lts", ParamType::lts, false, "The lts that should be synthesized"},
                  output},
                 {"success", "solvedEventStateSeparationProblems", "failedStateSeparationProblems",
                  "failedEventStateSeparationProblems", "pn"},
                 "Synthesize a Petri net whose reachability graph is isomorphic to the given lts.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& l = a.lts("lts");
                     const auto& props = a.properties("properties");
                     auto outcome = synthesize(l, props);
                     out << render_report(l, outcome, props.verbose);
                     if (outcome.net)
                         emit(a, "output", print_net(*outcome.net), out);
                 }});
    m.push_back({"word_synthesize",
                 {{"properties", ParamType::properties, false, "Comma separated list of synthesis properties"},
                  {"word", ParamType::word, false, "Comma separated labels"},
                  output},
                 {"success", "separationFailurePoints", "pn"},
                 "Synthesize a Petri net whose only firing sequences are the prefixes of a word.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& props = a.properties("properties");
                     const auto& w = a.word("word");
                     auto outcome = word_synthesize(props, w);
                     out << render_report(word_lts(w), outcome, props.verbose);
                     if (outcome.net)
                         emit(a, "output", print_net(*outcome.net), out);
                 }});
    const Param n{"n", ParamType::integer, false, "Size parameter"};
    auto positive = [](std::int64_t v, const char* what) {
        if (v < 1)
            throw InputError(std::string(what) + " must be at least 1");
        return v;
    };
    m.push_back({"bitnet_generator", {n, output}, {"pn"}, "Generate a net of n independently flippable bits.",
                 [positive](const Arguments& a, std::ostream& out) {
                     emit(a, "output", print_net(bitnet(positive(a.integer("n"), "n"))), out);
                 }});
    m.push_back({"bistate_philnet_generator", {n, output}, {"pn"},
                 "Generate n dining philosophers who grab both forks in one step.",
                 [positive](const Arguments& a, std::ostream& out) {
                     emit(a, "output", print_net(philnet_bistate(positive(a.integer("n"), "n"))), out);
                 }});
    m.push_back({"cycle_generator",
                 {n, {"k", ParamType::integer, false, "Number of tokens"}, output},
                 {"pn"},
                 "Generate a ring of n places with k tokens moving around it.",
                 [positive](const Arguments& a, std::ostream& out) {
                     emit(a, "output", print_net(cyclenet(positive(a.integer("n"), "n"), positive(a.integer("k"), "k"))),
                          out);
                 }});
    m.push_back({"draw", {{"model", ParamType::net_or_lts, false, "A Petri net or lts"}, output}, {"dot"},
                 "Render a Petri net or lts in the DOT language.",
                 [](const Arguments& a, std::ostream& out) {
                     const auto& doc = a.document("model");
                     emit(a, "output", doc.is_net() ? to_dot(doc.net()) : to_dot(doc.lts()), out);
                 }});
    m.push_back({"help", {{"module", ParamType::text, true, "Module to describe"}}, {},
                 "Describe a module, or list all modules.",
                 [](const Arguments& a, std::ostream& out) {
                     if (!a.has("module")) {
                         out << "Usage: apt <module> <arguments...>\n" << module_list();
                         return;
                     }
                     out << usage(resolve(a.text("module")));
                 }});
    std::sort(m.begin(), m.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
    return m;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::vector<std::string> split_word(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = text.find(',', start);
        std::string item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty())
            throw InputError("empty letter in word '" + text + "'");
        out.push_back(item);
        if (end == std::string::npos)
            return out;
        start = end + 1;
    }
}

std::int64_t parse_integer(const Param& p, const std::string& text) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw InputError("parameter " + p.name + " expects an integer, got '" + text + "'");
    return v;
}

Value convert(const Param& p, const std::string& text) {
    switch (p.type) {
    case ParamType::net: {
        Document doc = read_document(text);
        if (!doc.is_net())
            throw InputError("parameter " + p.name + " expects a Petri net, '" + text + "' contains an lts");
        return doc;
    }
    case ParamType::lts: {
        Document doc = read_document(text);
        if (doc.is_net())
            throw InputError("parameter " + p.name + " expects an lts, '" + text + "' contains a Petri net");
        return doc;
    }
    case ParamType::net_or_lts:
        return read_document(text);
    case ParamType::integer:
        return parse_integer(p, text);
    case ParamType::properties:
        return PropertySet::parse(text);
    case ParamType::word:
        return split_word(text);
    case ParamType::output:
    case ParamType::text:
        return text;
    }
    return std::monostate{};
}

} // namespace

const std::vector<ModuleDescriptor>& modules() {
    static const std::vector<ModuleDescriptor> registry = build_registry();
    return registry;
}

const ModuleDescriptor& resolve(const std::string& name) {
    std::vector<const ModuleDescriptor*> matches;
    for (const auto& m : modules()) {
        if (m.name == name)
            return m;
        if (m.name.starts_with(name))
            matches.push_back(&m);
    }
    if (matches.size() == 1)
        return *matches.front();
    if (matches.size() > 1) {
        std::string list;
        for (const auto* m : matches)
            list += (list.empty() ? "" : ", ") + m->name;
        throw InputError("ambiguous module name '" + name + "', candidates: " + list);
    }
    std::vector<std::string> near;
    for (const auto& m : modules())
        if (edit_distance(name, m.name) <= 3)
            near.push_back(m.name);
    std::string message = "unknown module '" + name + "'";
    if (!near.empty()) {
        message += ", did you mean: ";
        for (std::size_t i = 0; i < near.size(); ++i)
            message += (i ? ", " : "") + near[i];
    }
    throw InputError(message);
}

std::string usage(const ModuleDescriptor& module) {
    std::ostringstream out;
    out << "Usage: apt " << module.name;
    for (const auto& p : module.params)
        out << (p.optional ? " [<" : " <") << p.name << (p.optional ? ">]" : ">");
    out << '\n';
    for (const auto& p : module.params) {
        std::string name = p.name;
        name.resize(std::max<std::size_t>(name.size(), 10), ' ');
        out << "  " << name << ' ' << p.description << '\n';
    }
    out << module.description << '\n';
    return out.str();
}

std::string module_list() {
    std::ostringstream out;
    out << "Available modules:\n";
    std::size_t width = 0;
    for (const auto& m : modules())
        width = std::max(width, m.name.size());
    for (const auto& m : modules()) {
        std::string name = m.name;
        name.resize(width, ' ');
        out << "  " << name << "  " << m.description << '\n';
    }
    return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        out << "Usage: apt <module> <arguments...>\n" << module_list();
        return ok;
    }
    const ModuleDescriptor* module = nullptr;
    try {
        module = &resolve(args.front());
        std::size_t required = 0;
        for (const auto& p : module->params)
            required += p.optional ? 0 : 1;
        const std::size_t given = args.size() - 1;
        if (given < required || given > module->params.size()) {
            err << "wrong number of arguments for " << module->name << '\n' << usage(*module);
            return usage_error;
        }
        std::vector<Value> values(module->params.size());
        for (std::size_t i = 0; i < given; ++i)
            values[i] = convert(module->params[i], args[i + 1]);
        Arguments arguments(*module, std::move(values));
        std::ostringstream report;
        module->run(arguments, report);
        out << report.str();
        return ok;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return precondition_error;
    } catch (const LimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return precondition_error;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
}

} // namespace apt::cli
