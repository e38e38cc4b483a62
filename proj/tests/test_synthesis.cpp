#include <doctest.h>

#include "apt/error.hpp"
#include "apt/pn_analysis.hpp"
#include "apt/synthesis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace apt;

namespace {

Lts located_fig1() { return read_document(fixture("lts_locations.apt")).lts(); }

} // namespace

TEST_CASE("property parsing") {
    auto p = PropertySet::parse("pure, plain,3-bounded");
    CHECK(p.pure);
    CHECK(p.plain);
    CHECK(p.bound == std::optional<std::int64_t>(3));
    CHECK(PropertySet::parse("safe").bound == std::optional<std::int64_t>(1));
    CHECK(PropertySet::parse("none").unrestricted());
    CHECK(PropertySet::parse("t-net").needs_plain());
    CHECK_THROWS_AS(PropertySet::parse("shiny"), InputError);
    CHECK_THROWS_AS(PropertySet::parse("0-bounded"), InputError);
}

TEST_CASE("region basis annihilates every cycle") {
    Lts lts = fig1();
    RegionContext ctx(lts);
    CHECK(ctx.basis().size() == 3);
    for (const auto& v : ctx.basis())
        for (const auto& row : ctx.cycle_rows()) {
            exact::Integer s = 0;
            for (std::size_t i = 0; i < row.size(); ++i)
                s += v[i] * row[i];
            CHECK(s == 0);
        }
}

TEST_CASE("problem enumeration order") {
    Lts lts = fig1();
    auto problems = enumerate_separation_problems(lts);
    std::size_t disabled = 0;
    for (StateIndex s = 0; s < lts.num_states(); ++s)
        for (LabelIndex l = 0; l < lts.num_labels(); ++l)
            disabled += lts.enables(s, l) ? 0 : 1;
    CHECK(problems.size() == disabled + 21);
    CHECK(std::holds_alternative<EventStateProblem>(problems.front()));
    CHECK(std::holds_alternative<StateProblem>(problems.back()));
    CHECK(enumerate_separation_problems(lts, false).size() == disabled);
}

TEST_CASE("synthesis preconditions") {
    LtsBuilder b;
    b.add_arc("s0", "a", "s1");
    b.add_arc("s0", "a", "s2");
    b.set_initial(0);
    Lts nondet = b.build();
    CHECK_THROWS_AS(synthesize(nondet, {}), PreconditionError);
    CHECK_THROWS_AS(synthesize_language_only(fig1(), {}), PreconditionError);
}

TEST_CASE("fig1 is solvable with each structural restriction") {
    Lts lts = fig1();
    for (const char* text : {"none", "pure", "plain", "pure,plain", "2-bounded", "output-nonbranching"}) {
        CAPTURE(text);
        auto props = PropertySet::parse(text);
        auto outcome = synthesize(lts, props);
        REQUIRE(outcome.success);
        REQUIRE(outcome.net);
        CHECK(oracle::solves(lts, *outcome.net));
        if (props.pure)
            CHECK(is_pure(*outcome.net).holds);
        if (props.plain)
            CHECK(is_plain(*outcome.net).holds);
        if (props.output_nonbranching)
            CHECK(is_output_nonbranching(*outcome.net).holds);
        CHECK(outcome.kept_regions.size() <= outcome.regions.size());
    }
}

TEST_CASE("safe synthesis of fig1 fails on one event problem") {
    Lts lts = fig1();
    auto outcome = synthesize(lts, PropertySet::parse("safe"));
    CHECK_FALSE(outcome.success);
    CHECK(outcome.failed_state_problems.empty());
    REQUIRE(outcome.failed_event_problems.size() == 1);
    CHECK(lts.label_name(outcome.failed_event_problems[0].first) == "b");
    CHECK(outcome.failed_event_problems[0].second == std::vector<StateIndex>{*lts.find_state("s4")});
    auto report = render_report(lts, outcome, false);
    CHECK(report.find("failedStateSeparationProblems: []") != std::string::npos);
    CHECK(report.find("failedEventStateSeparationProblems: {b=[s4]}") != std::string::npos);
}

TEST_CASE("locations keep pre-sets apart") {
    Lts lts = located_fig1();
    auto outcome = synthesize(lts, {});
    REQUIRE(outcome.success);
    const PetriNet& net = *outcome.net;
    CHECK(oracle::solves(lts, net));
    auto b = *net.find_transition("b");
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        if (t == b)
            continue;
        for (auto [p, w] : net.preset(b))
            CHECK(net.consume(p, t) == 0);
    }
    CHECK(net.location(b) == std::optional<std::string>("B"));
}

TEST_CASE("fast paths agree with the general solver on each problem") {
    for (const auto& lts : oracle::small_lts(3, 2)) {
        RegionContext ctx(lts);
        PropertySet none, pure = PropertySet::parse("pure"), plain_pure = PropertySet::parse("pure,plain");
        for (const auto& problem : enumerate_separation_problems(lts)) {
            auto fast = solve_separation_fast_none(ctx, problem);
            auto general = solve_separation_general(ctx, problem, none);
            CHECK(fast.has_value() == general.has_value());
            if (fast) {
                CHECK(ctx.is_valid(*fast));
                CHECK(ctx.solves(*fast, problem));
            }
            auto fast_pure = solve_separation_pure(ctx, problem, false);
            auto general_pure = solve_separation_general(ctx, problem, pure);
            CHECK(fast_pure.has_value() == general_pure.has_value());
            if (fast_pure)
                CHECK(fast_pure->is_pure());
            auto fast_pp = solve_separation_pure(ctx, problem, true);
            auto general_pp = solve_separation_general(ctx, problem, plain_pure);
            CHECK(fast_pp.has_value() == general_pp.has_value());
            if (fast_pp) {
                CHECK(fast_pp->is_pure());
                CHECK(fast_pp->is_plain());
            }
        }
    }
}

TEST_CASE("regions found are valid by an independent replay") {
    Lts lts = fig1();
    auto outcome = synthesize(lts, PropertySet::parse("plain"));
    REQUIRE(outcome.success);
    for (const auto& r : outcome.regions) {
        CHECK(oracle::region_values(lts, r.initial, r.backward, r.forward).has_value());
        CHECK(r.is_plain());
    }
}

TEST_CASE("synthesis output solves every small lts it accepts") {
    for (const auto& lts : oracle::small_lts(3, 2)) {
        auto outcome = synthesize(lts, {});
        if (outcome.success)
            CHECK(oracle::solves(lts, *outcome.net));
        else
            CHECK((!outcome.failed_state_problems.empty() || !outcome.failed_event_problems.empty()));
    }
}

TEST_CASE("minimize keeps unique solvers then covers greedily") {
    // problem 0 only by region 1; problems 1 and 2 by regions 0 and 2
    std::vector<std::vector<std::size_t>> solved{{1, 2}, {0}, {1, 2}};
    CHECK(minimize_regions(3, solved) == std::vector<std::size_t>{0, 1});
    CHECK(minimize_regions(2, {{0, 1}, {0, 1}}) == std::vector<std::size_t>{0});
    CHECK(minimize_regions(1, {{0}}) == std::vector<std::size_t>{0});
    CHECK(minimize_regions(0, {{}, {}}).empty());
}

TEST_CASE("minimised region set still solves every problem") {
    Lts lts = fig1();
    RegionContext ctx(lts);
    auto outcome = synthesize(lts, {});
    REQUIRE(outcome.success);
    for (const auto& problem : enumerate_separation_problems(lts)) {
        bool solved = false;
        for (auto r : outcome.kept_regions)
            solved = solved || ctx.solves(outcome.regions[r], problem);
        CHECK(solved);
    }
}

TEST_CASE("word synthesis") {
    auto fail = word_synthesize({}, {"a", "b", "b", "a", "a", "c"});
    CHECK_FALSE(fail.success);
    CHECK(fail.failure_points == std::optional<std::string>("a, b, [a] b, a, a, c"));
    auto ok = word_synthesize({}, {"a", "b", "a", "b"});
    CHECK(ok.success);
    CHECK(word_in_language(*ok.net, {"a", "b", "a", "b"}).holds);
    CHECK_FALSE(word_in_language(*ok.net, {"a", "b", "a", "b", "a"}).holds);
    Lts w = word_lts({"x", "y", "x"});
    CHECK(w.num_states() == 4);
    CHECK(w.label_names() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("region formatting") {
    Lts lts = fig1();
    Region r{1, {0, 0, 1, 0}, {0, 0, 0, 1}};
    CHECK(format_region(lts, r) == "Region { init=1, 0:a:0, 0:b:0, 1:c:0, 0:d:1 }");
    CHECK(r.is_pure());
    CHECK(r.is_plain());
}

TEST_CASE("verbose report lists separated events") {
    Lts lts = fig1();
    auto outcome = synthesize(lts, PropertySet::parse("safe,verbose"));
    auto report = render_report(lts, outcome, true);
    CHECK(report.find("separates event c at states [s4, s5, s6]") != std::string::npos);
}
