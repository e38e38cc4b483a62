#include <doctest.h>

#include <random>

#include "apt/error.hpp"
#include "apt/generators.hpp"
#include "apt/pn_analysis.hpp"
#include "apt/structure.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace apt;

namespace {

std::vector<std::vector<long>> as_long(const std::vector<exact::IntegerVector>& v) {
    std::vector<std::vector<long>> out;
    for (const auto& r : v) {
        out.emplace_back();
        for (const auto& x : r)
            out.back().push_back(x.get_si());
    }
    return out;
}

PetriNet random_net(std::mt19937& rng, std::size_t places, std::size_t transitions) {
    std::uniform_int_distribution<int> w(0, 3);
    PetriNet net;
    for (std::size_t p = 0; p < places; ++p)
        net.add_place("p" + std::to_string(p), 1);
    for (std::size_t t = 0; t < transitions; ++t)
        net.add_transition("t" + std::to_string(t));
    for (std::size_t p = 0; p < places; ++p)
        for (std::size_t t = 0; t < transitions; ++t) {
            net.set_consume(p, t, w(rng) == 3 ? 1 : 0);
            net.set_produce(t, p, w(rng) == 3 ? 1 : 0);
        }
    return net;
}

} // namespace

TEST_CASE("incidence matrices of the running example") {
    auto m = incidence_matrices(n1());
    REQUIRE(m.incidence.size() == 5);
    CHECK(m.backward[0] == std::vector<std::int64_t>{1, 0, 0, 0});
    CHECK(m.forward[4] == std::vector<std::int64_t>{1, 0, 0, 1});
    CHECK(m.incidence[4] == std::vector<std::int64_t>{1, -1, -1, 1});
}

TEST_CASE("invariants of the running example") {
    PetriNet net = n1();
    CHECK(as_long(invariants(net, InvariantKind::s)) == std::vector<std::vector<long>>{{0, 1, 0, 1, 0}, {1, 0, 1, 1, 1}});
    CHECK(as_long(invariants(net, InvariantKind::t)) == std::vector<std::vector<long>>{{1, 1, 1, 1}});
    CHECK(covered_by_invariants(net, InvariantKind::s).holds);
    CHECK(covered_by_invariants(net, InvariantKind::t).holds);
}

TEST_CASE("uncovered place is reported") {
    PetriNet net;
    auto p = net.add_place("p", 1);
    auto q = net.add_place("q");
    auto t = net.add_transition("t");
    net.set_consume(p, t, 1);
    net.set_produce(t, q, 2);
    auto cov = covered_by_invariants(net, InvariantKind::s);
    CHECK(cov.holds);
    auto tcov = covered_by_invariants(net, InvariantKind::t);
    CHECK_FALSE(tcov.holds);
    CHECK(tcov.uncovered == std::optional<std::size_t>(0));
    CHECK(as_long(invariants(net, InvariantKind::s)) == std::vector<std::vector<long>>{{2, 1}});
}

TEST_CASE("S-invariants are conserved along every reachable marking") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        PetriNet net = random_net(rng, 4, 3);
        auto graph = oracle::reachability(net, 500);
        for (const auto& x : invariants(net, InvariantKind::s)) {
            auto weigh = [&](const oracle::Tokens& m) {
                exact::Integer s = 0;
                for (std::size_t p = 0; p < m.size(); ++p)
                    s += x[p] * m[p];
                return s;
            };
            exact::Integer start = weigh(graph.states[0]);
            for (const auto& m : graph.states)
                CHECK(weigh(m) == start);
        }
    }
}

TEST_CASE("invariants agree with brute force") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        PetriNet net = random_net(rng, 3, 3);
        auto c = incidence_matrices(net).incidence;
        std::vector<std::vector<long>> m;
        for (const auto& row : c)
            m.emplace_back(row.begin(), row.end());
        CHECK(as_long(invariants(net, InvariantKind::t)) == oracle::minimal_solutions(m, 3, 4, false));
        CHECK(as_long(invariants(net, InvariantKind::s)) == oracle::minimal_solutions(m, 3, 4, true));
    }
}

TEST_CASE("siphons and traps of the running example") {
    PetriNet net = n1();
    CHECK(minimal_siphons(net) == std::vector<PlaceSet>{{0, 2, 4}, {1, 3}});
    CHECK(minimal_traps(net) == std::vector<PlaceSet>{{0, 3, 4}, {1, 3}, {2, 3, 4}});
    CHECK(is_siphon(net, {1, 3}));
    CHECK(is_trap(net, {1, 3}));
    CHECK_FALSE(is_siphon(net, {0}));
}

TEST_CASE("siphons and traps agree with brute force") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        PetriNet net = random_net(rng, 2 + trial % 5, 2 + trial % 3);
        auto siphons = minimal_siphons(net);
        auto traps = minimal_traps(net);
        CHECK(siphons == oracle::minimal_place_sets(net, false));
        CHECK(traps == oracle::minimal_place_sets(net, true));
        for (const auto& s : siphons)
            CHECK(is_siphon(net, s));
        for (const auto& s : traps)
            CHECK(is_trap(net, s));
    }
}

TEST_CASE("place cap is enforced") {
    CHECK_THROWS_AS(minimal_siphons(bitnet(3), 5), LimitExceeded);
    CHECK(minimal_siphons(bitnet(3), 6).size() == 3);
}

TEST_CASE("ring has a single invariant and the full siphon") {
    PetriNet ring = cyclenet(3, 1);
    CHECK(as_long(invariants(ring, InvariantKind::s)) == std::vector<std::vector<long>>{{1, 1, 1}});
    CHECK(as_long(invariants(ring, InvariantKind::t)) == std::vector<std::vector<long>>{{1, 1, 1}});
    CHECK(minimal_siphons(ring) == std::vector<PlaceSet>{{0, 1, 2}});
    CHECK(minimal_traps(ring) == std::vector<PlaceSet>{{0, 1, 2}});
}
