#include <doctest.h>

#include "apt/error.hpp"
#include "apt/lts_analysis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace apt;

namespace {

Lts make(const std::vector<std::tuple<std::string, std::string, std::string>>& arcs, const std::string& init = "s0") {
    LtsBuilder b;
    b.state(init);
    for (const auto& [s, l, t] : arcs)
        b.add_arc(s, l, t);
    b.set_initial(*b.find_state(init));
    return b.build();
}

} // namespace

TEST_CASE("builder ignores duplicate arcs and resolves names") {
    LtsBuilder b;
    b.add_arc("x", "a", "y");
    b.add_arc("x", "a", "y");
    b.set_initial(*b.find_state("x"));
    Lts lts = b.build();
    CHECK(lts.num_arcs() == 1);
    CHECK(lts.successor(0, 0) == std::optional<StateIndex>(1));
    CHECK_FALSE(lts.enables(1, 0));
    CHECK_THROWS_AS(LtsBuilder().build(), InputError);
}

TEST_CASE("running example satisfies the behavioural predicates") {
    Lts lts = fig1();
    CHECK(lts.num_states() == 7);
    CHECK(lts.num_arcs() == 10);
    CHECK(is_deterministic(lts).holds);
    CHECK(is_totally_reachable(lts).holds);
    CHECK(is_persistent(lts).holds);
    CHECK(is_reversible(lts).holds);
    auto cycles = small_cycle_parikh_vectors(lts);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == ParikhVector(std::vector<std::int64_t>{1, 1, 1, 1}));
    CHECK(cycles_same_pv(lts));
    CHECK(weak_small_cycle_property(lts));
    CHECK(strongly_connected_components(lts).size() == 1);
}

TEST_CASE("predicate witnesses") {
    Lts nondet = make({{"s0", "a", "s1"}, {"s0", "a", "s2"}});
    auto d = is_deterministic(nondet);
    CHECK_FALSE(d.holds);
    REQUIRE(d.witness);
    CHECK(d.witness->state == 0);
    CHECK_THROWS_AS(is_persistent(nondet), PreconditionError);

    Lts choice = make({{"s0", "a", "s1"}, {"s0", "b", "s2"}});
    auto p = is_persistent(choice);
    CHECK_FALSE(p.holds);
    REQUIRE(p.witness);
    CHECK(p.witness->state == 0);
    CHECK_FALSE(is_reversible(choice).holds);

    LtsBuilder b;
    b.add_arc("s0", "a", "s1");
    b.state("lonely");
    b.add_label("unused");
    b.set_initial(0);
    Lts partial = b.build();
    auto tr = is_totally_reachable(partial);
    CHECK_FALSE(tr.holds);
    CHECK(tr.unreachable_state == std::optional<StateIndex>(2));
    CHECK_THROWS_AS(spanning_tree(partial), PreconditionError);
}

TEST_CASE("components of a chain with a loop") {
    Lts lts = make({{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s2", "c", "s1"}, {"s3", "a", "s3"}});
    auto scc = strongly_connected_components(lts);
    CHECK(scc == std::vector<std::vector<StateIndex>>{{0}, {1, 2}, {3}});
    auto wcc = weakly_connected_components(lts);
    CHECK(wcc == std::vector<std::vector<StateIndex>>{{0, 1, 2}, {3}});
}

TEST_CASE("spanning tree paths reproduce arcs") {
    Lts lts = fig1();
    auto tree = spanning_tree(lts);
    CHECK(tree.chords.size() == lts.num_arcs() - (lts.num_states() - 1));
    for (StateIndex s = 0; s < lts.num_states(); ++s) {
        if (!tree.parent_arc[s])
            continue;
        const auto& arc = lts.arc(*tree.parent_arc[s]);
        auto expected = tree.path_parikh[arc.source];
        expected[arc.label] += 1;
        CHECK(expected == tree.path_parikh[s]);
    }
}

TEST_CASE("small cycles keep only minimal vectors") {
    Lts lts = make({{"s0", "a", "s0"}, {"s0", "b", "s1"}, {"s1", "a", "s0"}, {"s1", "c", "s1"}});
    auto cycles = small_cycle_parikh_vectors(lts);
    CHECK(cycles.size() == 2);
    CHECK_FALSE(cycles_same_pv(lts));
}

TEST_CASE("cycle limit raises") {
    Lts lts = fig1();
    CHECK_THROWS_AS(small_cycle_parikh_vectors(lts, 0), LimitExceeded);
}

TEST_CASE("isomorphism, bisimulation and language equivalence") {
    Lts a = make({{"s0", "a", "s1"}, {"s1", "b", "s0"}});
    Lts b = make({{"x", "a", "y"}, {"y", "b", "x"}}, "x");
    auto iso = isomorphic(a, b);
    CHECK(iso.holds);
    CHECK(iso.mapping == std::vector<StateIndex>{0, 1});
    CHECK(bisimilar(a, b).holds);
    CHECK(language_equivalent(a, b).holds);

    // unrolled loop: bisimilar but not isomorphic
    Lts c = make({{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s2", "a", "s3"}, {"s3", "b", "s0"}});
    CHECK_FALSE(isomorphic(a, c).holds);
    CHECK(bisimilar(a, c).holds);
    CHECK(language_equivalent(a, c).holds);

    // a.b + a.c versus a.(b + c): trace equivalent only
    Lts d = make({{"s0", "a", "s1"}, {"s0", "a", "s2"}, {"s1", "b", "s3"}, {"s2", "c", "s4"}});
    Lts e = make({{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s1", "c", "s3"}});
    CHECK_FALSE(bisimilar(d, e).holds);
    CHECK(language_equivalent(d, e).holds);

    Lts f = make({{"s0", "a", "s1"}, {"s1", "c", "s2"}});
    auto le = language_equivalent(a, f);
    CHECK_FALSE(le.holds);
    REQUIRE(le.distinguishing_word);
    CHECK(le.distinguishing_word->size() == 2);
}

TEST_CASE("equivalences are reflexive on every small lts") {
    for (const auto& lts : oracle::small_lts(3, 2)) {
        CHECK(isomorphic(lts, lts).holds);
        CHECK(bisimilar(lts, lts).holds);
        CHECK(language_equivalent(lts, lts).holds);
    }
}

TEST_CASE("isomorphic implies bisimilar implies language equivalent on small lts") {
    auto all = oracle::small_lts(3, 2);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i; j < all.size(); j += 7) {
            bool iso = isomorphic(all[i], all[j]).holds;
            bool bis = bisimilar(all[i], all[j]).holds;
            bool lang = language_equivalent(all[i], all[j]).holds;
            CHECK(iso == (i == j));
            if (iso)
                CHECK(bis);
            if (bis)
                CHECK(lang);
        }
}
