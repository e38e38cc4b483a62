// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include "apt/cli.hpp"
#include "apt/generators.hpp"
#include "apt/lts_analysis.hpp"
#include "apt/pn_analysis.hpp"
#include "apt/structure.hpp"
#include "apt/synthesis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace apt;

namespace {

// Budgets in seconds.
constexpr double oracle_sweep_budget = 600.0;
constexpr double bitnet_synthesis_budget = 120.0;
constexpr double bitnet_coverability_budget = 60.0;

// Search bounds for the brute-force net enumeration.
constexpr std::size_t sweep_states = 4;
constexpr std::size_t sweep_labels = 2;
constexpr std::size_t brute_places = 3;
constexpr std::int64_t brute_weight = 2;
constexpr std::int64_t brute_tokens = 2;
constexpr std::size_t brute_force_sample = 50;

constexpr int random_systems = 200;
constexpr long solver_box = 6;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string cli_output(std::vector<std::string> args) {
    std::ostringstream out, err;
    cli::run(args, out, err);
    return out.str();
}

/// State name -> token list from the "/* [ [p0:1] ... ] */" comments of the lts fixture.
std::map<std::string, std::vector<std::int64_t>> fixture_markings() {
    std::map<std::string, std::vector<std::int64_t>> out;
    std::istringstream in(read_text(fixture("lts.apt")));
    std::regex line_re(R"(^\s*(s\d+)\S*\s*/\*\s*\[(.*)\]\s*\*/)");
    std::regex entry_re(R"(\[p(\d+):(\d+)\])");
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (!std::regex_search(line, m, line_re))
            continue;
        std::string body = m[2];
        std::vector<std::int64_t> tokens;
        for (std::sregex_iterator it(body.begin(), body.end(), entry_re), end; it != end; ++it)
            tokens.push_back(std::stoll((*it)[2]));
        out[m[1]] = tokens;
    }
    return out;
}

Verdict fixture_round_trip() {
    Verdict v;
    PetriNet net = n1();
    v.require(net.num_places() == 5, "place count");
    v.require(net.num_transitions() == 4, "transition count");
    v.require(net.initial_marking().tokens() == std::vector<std::int64_t>{1, 1, 0, 0, 1}, "initial marking");
    const std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> flows{
        {"a", {{"p0"}, {"p4"}}},
        {"b", {{"p1", "p4"}, {"p3"}}},
        {"c", {{"p3", "p4"}, {"p0", "p1", "p2"}}},
        {"d", {{"p2"}, {"p4"}}}};
    for (const auto& [t, io] : flows) {
        auto ti = net.find_transition(t);
        v.require(ti.has_value(), "transition " + t);
        if (!ti)
            break;
        for (PlaceIndex p = 0; p < net.num_places(); ++p) {
            const auto& name = net.place_name(p);
            bool in = std::find(io.first.begin(), io.first.end(), name) != io.first.end();
            bool out = std::find(io.second.begin(), io.second.end(), name) != io.second.end();
            v.require(net.consume(p, *ti) == (in ? 1 : 0), "preset of " + t);
            v.require(net.produce(*ti, p) == (out ? 1 : 0), "postset of " + t);
        }
    }
    std::string once = print_net(net);
    v.require(print_net(parse_net(once)) == once, "print/parse not a fixed point");
    return v;
}

Verdict reachability() {
    Verdict v;
    PetriNet net = n1();
    auto rg = reachability_graph(net);
    auto naive = oracle::reachability(net);
    v.require(rg.lts.num_states() == 7 && naive.states.size() == 7, "state count");
    v.require(rg.lts.num_arcs() == 10 && naive.arcs.size() == 10, "arc count");
    Lts lts = fig1();
    auto iso = isomorphic(rg.lts, lts);
    v.require(iso.holds, "not isomorphic: " + iso.reason);
    if (!iso.holds)
        return v;
    auto table = fixture_markings();
    v.require(table.size() == 7, "fixture comments");
    for (StateIndex s = 0; s < rg.lts.num_states(); ++s) {
        const auto& name = lts.state_name(iso.mapping[s]);
        v.require(table[name] == rg.markings[s].tokens(), "marking of " + name);
    }
    return v;
}

Verdict boundedness() {
    Verdict v;
    PetriNet net = n1();
    v.require(bounded(net).holds, "not bounded");
    auto one = bounded(net, 1);
    v.require(!one.holds, "1-bounded");
    v.require(one.witness_place && net.place_name(*one.witness_place) == "p4", "witness place");
    v.require(one.witness_sequence.size() == 1 && net.transition_name(one.witness_sequence[0]) == "a",
              "witness sequence");
    std::string text = cli_output({"bounded", fixture("net.apt"), "1"});
    v.require(text == "bounded: No\nwitness_place: p4\nwitness_firing_sequence: [a]\n", "listing text: " + text);
    return v;
}

Verdict lts_predicates() {
    Verdict v;
    Lts lts = fig1();
    v.require(is_deterministic(lts).holds, "deterministic");
    v.require(is_totally_reachable(lts).holds, "totally reachable");
    v.require(is_persistent(lts).holds, "persistent");
    v.require(is_reversible(lts).holds, "reversible");
    auto cycles = small_cycle_parikh_vectors(lts);
    v.require(cycles == std::vector<ParikhVector>{ParikhVector(std::vector<std::int64_t>{1, 1, 1, 1})},
              "small cycle vectors");
    v.require(cycles_same_pv(lts), "cycles_same_pv");
    return v;
}

Verdict synthesis_none() {
    Verdict v;
    Lts lts = fig1();
    auto outcome = synthesize(lts, PropertySet::parse("none"));
    v.require(outcome.success && outcome.net, "synthesis failed");
    if (!outcome.net)
        return v;
    v.require(isomorphic(reachability_graph(*outcome.net).lts, lts).holds, "reachability graph not isomorphic");
    v.require(oracle::solves(lts, *outcome.net), "independent check");
    return v;
}

Verdict synthesis_restricted() {
    Verdict v;
    Lts lts = fig1();
    for (const char* props : {"plain,pure", "pure", "2-bounded"}) {
        auto outcome = synthesize(lts, PropertySet::parse(props));
        std::string tag = std::string(props) + ": ";
        v.require(outcome.success && outcome.net, tag + "failed");
        if (!outcome.net)
            continue;
        v.require(is_plain(*outcome.net).holds, tag + "not plain");
        v.require(is_pure(*outcome.net).holds, tag + "not pure");
        v.require(oracle::solves(lts, *outcome.net), tag + "does not solve");
    }
    return v;
}

Verdict safe_failure() {
    Verdict v;
    Lts lts = fig1();
    auto outcome = synthesize(lts, PropertySet::parse("safe"));
    v.require(!outcome.success, "unexpected success");
    v.require(outcome.failed_state_problems.empty(), "state problems failed");
    std::string report = render_report(lts, outcome, false);
    v.require(report.find("failedStateSeparationProblems: []\n") != std::string::npos, "state line");
    v.require(report.find("failedEventStateSeparationProblems: {b=[s4]}\n") != std::string::npos, "event line");
    const LabelIndex c = *lts.find_label("c");
    std::vector<StateIndex> expected{*lts.find_state("s4"), *lts.find_state("s5"), *lts.find_state("s6")};
    std::sort(expected.begin(), expected.end());
    bool found = false;
    for (const auto& r : outcome.regions) {
        auto values = oracle::region_values(lts, r.initial, r.backward, r.forward);
        if (!values)
            continue;
        std::vector<StateIndex> disabled;
        for (StateIndex s = 0; s < lts.num_states(); ++s)
            if ((*values)[s] < r.backward[c])
                disabled.push_back(s);
        found = found || disabled == expected;
    }
    v.require(found, "no region disables c at exactly s4, s5, s6");
    return v;
}

Verdict locations() {
    Verdict v;
    Lts lts = read_document(fixture("lts_locations.apt")).lts();
    auto outcome = synthesize(lts, {});
    v.require(outcome.success && outcome.net, "synthesis failed");
    if (!outcome.net)
        return v;
    const PetriNet& net = *outcome.net;
    v.require(oracle::solves(lts, net), "does not solve");
    auto b = *net.find_transition("b");
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        for (PlaceIndex p = 0; p < net.num_places(); ++p)
            if (t != b)
                v.require(!(net.consume(p, b) > 0 && net.consume(p, t) > 0), "shared pre-place " + net.place_name(p));
    return v;
}

Verdict word_failure() {
    Verdict v;
    auto outcome = word_synthesize({}, {"a", "b", "b", "a", "a", "c"});
    v.require(!outcome.success, "unexpected success");
    v.require(outcome.failure_points == std::optional<std::string>("a, b, [a] b, a, a, c"),
              "failure points: " + outcome.failure_points.value_or("<none>"));
    std::string text = cli_output({"word_synthesize", "none", "a,b,b,a,a,c"});
    v.require(text.find("separationFailurePoints: a, b, [a] b, a, a, c\n") != std::string::npos, "cli text");
    return v;
}

Verdict oracle_sweep() {
    Verdict v;
    auto start = Clock::now();
    auto all = oracle::small_lts(sweep_states, sweep_labels);
    std::size_t solved = 0, unsolved = 0, brute_hits = 0;
    for (const auto& lts : all) {
        auto outcome = synthesize(lts, {});
        if (outcome.success) {
            ++solved;
            v.require(oracle::solves(lts, *outcome.net), "output does not solve " + print_lts(lts));
            if (brute_force_sample > 0 && solved <= brute_force_sample)
                brute_hits += oracle::brute_force_solvable(lts, brute_places, brute_weight, brute_tokens) ? 1 : 0;
        } else {
            ++unsolved;
            v.require(!oracle::brute_force_solvable(lts, brute_places, brute_weight, brute_tokens),
                      "brute force solves what synthesis rejected:\n" + print_lts(lts));
        }
    }
    double elapsed = seconds_since(start);
    v.require(brute_hits > 0, "brute force never finds a net");
    v.require(elapsed <= oracle_sweep_budget, "over budget");
    if (v.pass)
        v.detail = std::to_string(all.size()) + " lts, " + std::to_string(solved) + " solvable, " +
                   std::to_string(unsolved) + " not, brute force solved " + std::to_string(brute_hits) + " of the first " +
                   std::to_string(std::min(solved, brute_force_sample)) + " solvable, " + std::to_string(elapsed) + " s";
    return v;
}

Verdict generators() {
    Verdict v;
    auto check_net = [&](const PetriNet& net, const std::string& tag, bool pure, bool safe) {
        v.require(is_plain(net).holds, tag + " not plain");
        if (pure)
            v.require(is_pure(net).holds, tag + " not pure");
        if (safe)
            v.require(bounded(net, 1).holds, tag + " not 1-bounded");
    };
    for (std::size_t n = 1; n <= 8; ++n) {
        PetriNet net = bitnet(n);
        v.require(oracle::reachability(net).states.size() == (std::size_t{1} << n), "bitnet states");
        v.require(reachability_graph(net).lts.num_states() == (std::size_t{1} << n), "bitnet graph");
        check_net(net, "bitnet", true, true);
    }
    for (std::size_t n = 2; n <= 6; ++n)
        check_net(philnet_bistate(n), "philnet", true, true);
    v.require(oracle::reachability(cyclenet(3, 2)).states.size() == 6, "cyclenet(3,2) states");
    check_net(cyclenet(3, 2), "cyclenet(3,2)", true, false);
    for (std::size_t n = 1; n <= 10; ++n) {
        PetriNet net = cyclenet(n, 1);
        v.require(oracle::reachability(net).states.size() == n, "cyclenet(n,1) states");
        // a one-place ring is a self-loop by construction
        check_net(net, "cyclenet", n > 1, true);
    }
    if (v.pass)
        v.detail = "purity of the one-place ring not required";
    return v;
}

Verdict structure() {
    Verdict v;
    PetriNet ring = cyclenet(3, 1);
    const std::vector<exact::IntegerVector> ones{{1, 1, 1}};
    auto s_inv = invariants(ring, InvariantKind::s);
    v.require(s_inv == ones, "S-invariants");
    v.require(invariants(ring, InvariantKind::t) == ones, "T-invariants");
    auto graph = oracle::reachability(ring);
    for (const auto& x : s_inv) {
        exact::Integer initial = 0;
        for (std::size_t p = 0; p < 3; ++p)
            initial += x[p] * ring.initial_marking()[p];
        for (const auto& m : graph.states) {
            exact::Integer sum = 0;
            for (std::size_t p = 0; p < 3; ++p)
                sum += x[p] * m[p];
            v.require(sum == initial, "conservation");
        }
    }
    const std::vector<PlaceSet> full{{0, 1, 2}};
    v.require(minimal_siphons(ring) == full, "siphons");
    v.require(minimal_traps(ring) == full, "traps");
    v.require(oracle::minimal_place_sets(ring, false) == full, "brute-force siphons");
    v.require(oracle::minimal_place_sets(ring, true) == full, "brute-force traps");
    return v;
}

Verdict solver_properties() {
    Verdict v;
    using namespace exact;
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> coef(-3, 3), rhs(1, 3), kind(0, 2), nvar(1, 3), ncons(1, 3), freevar(0, 3);
    int feasible = 0;
    for (int trial = 0; trial < random_systems; ++trial) {
        LinearSystem sys;
        int n = nvar(rng);
        for (int j = 0; j < n; ++j)
            sys.add_variable("x" + std::to_string(j),
                             freevar(rng) == 0 ? std::nullopt : std::optional<Integer>(0), std::nullopt);
        for (int i = ncons(rng); i > 0; --i) {
            std::vector<Term> terms;
            for (int j = 0; j < n; ++j)
                terms.emplace_back(j, coef(rng));
            switch (kind(rng)) {
            case 0: sys.add_constraint(terms, Relation::equal, 0); break;
            case 1: sys.add_constraint(terms, Relation::less_equal, -rhs(rng)); break;
            default: sys.add_constraint(terms, Relation::greater_equal, rhs(rng)); break;
            }
        }
        v.require(sys.scaling_applies(), "generated system outside the scalable class");
        auto sol = solve_integer_feasibility(sys);
        auto brute = oracle::brute_force(sys, solver_box);
        v.require(sol.status != Feasibility::bound_exceeded, "bound exceeded");
        if (brute)
            v.require(sol.status == Feasibility::feasible, "missed a solution");
        if (sol.status == Feasibility::feasible) {
            ++feasible;
            v.require(oracle::satisfies(sys, sol.values), "answer violates a constraint");
        }
    }
    LinearSystem empty;
    auto x = empty.add_variable("x");
    empty.add_constraint({{x, 1}}, Relation::less_equal, -1);
    v.require(solve_integer_feasibility(empty).status == Feasibility::infeasible, "x >= 0, x <= -1 feasible");
    if (v.pass)
        v.detail = std::to_string(feasible) + " of " + std::to_string(random_systems) + " feasible";
    return v;
}

Verdict performance() {
    Verdict v;
    auto start = Clock::now();
    Lts lts = reachability_graph(bitnet(6)).lts;
    auto outcome = synthesize(lts, {});
    double synth = seconds_since(start);
    v.require(lts.num_states() == 64, "bitnet(6) states");
    v.require(outcome.success, "bitnet(6) synthesis failed");
    v.require(synth <= bitnet_synthesis_budget, "synthesis over budget");
    start = Clock::now();
    auto cg = coverability_graph(bitnet(10));
    double cover = seconds_since(start);
    v.require(cg.lts.num_states() == 1024, "bitnet(10) states");
    v.require(cover <= bitnet_coverability_budget, "coverability over budget");
    std::ostringstream d;
    d << "synthesis " << synth << " s, coverability " << cover << " s";
    if (v.pass)
        v.detail = d.str();
    return v;
}

Verdict equivalences() {
    Verdict v;
    std::vector<std::pair<std::string, Lts>> inputs{{"fig1", fig1()},
                                                    {"bitnet(3)", reachability_graph(bitnet(3)).lts},
                                                    {"cyclenet(3,2)", reachability_graph(cyclenet(3, 2)).lts}};
    std::size_t compared = 0;
    for (const auto& [name, lts] : inputs) {
        std::vector<Lts> graphs;
        for (const char* props : {"none", "pure", "plain", "plain,pure", "2-bounded", "output-nonbranching"}) {
            auto outcome = synthesize(lts, PropertySet::parse(props));
            if (outcome.success)
                graphs.push_back(reachability_graph(*outcome.net).lts);
        }
        v.require(graphs.size() >= 2, name + ": fewer than two outputs");
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t j = i + 1; j < graphs.size(); ++j) {
                ++compared;
                v.require(isomorphic(graphs[i], graphs[j]).holds, name + ": not isomorphic");
                v.require(bisimilar(graphs[i], graphs[j]).holds, name + ": not bisimilar");
                v.require(language_equivalent(graphs[i], graphs[j]).holds, name + ": not language equivalent");
            }
    }
    if (v.pass)
        v.detail = std::to_string(compared) + " pairs";
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"fixture round trip", fixture_round_trip},
        {"reachability graph and marking table", reachability},
        {"boundedness and witness", boundedness},
        {"lts predicates", lts_predicates},
        {"synthesis without restrictions", synthesis_none},
        {"plain/pure/bounded synthesis", synthesis_restricted},
        {"safe synthesis failure", safe_failure},
        {"locations", locations},
        {"word synthesis failure points", word_failure},
        {"brute-force oracle sweep", oracle_sweep},
        {"generators", generators},
        {"invariants, siphons and traps", structure},
        {"solver properties", solver_properties},
        {"performance smoke", performance},
        {"equivalence cross-check", equivalences},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
        if (!v.detail.empty())
            std::cout << " (" << v.detail << ")";
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures;
}
