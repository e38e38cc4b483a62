#include <doctest.h>

#include "apt/generators.hpp"
#include "apt/pn_analysis.hpp"
#include "oracles.hpp"

using namespace apt;

namespace {

std::int64_t max_tokens(const oracle::Graph& g) {
    std::int64_t m = 0;
    for (const auto& s : g.states)
        for (auto t : s)
            m = std::max(m, t);
    return m;
}

} // namespace

TEST_CASE("bitnet has one state per bit vector") {
    for (std::size_t n = 1; n <= 8; ++n) {
        CAPTURE(n);
        PetriNet net = bitnet(n);
        CHECK(net.num_places() == 2 * n);
        CHECK(net.num_transitions() == 2 * n);
        auto g = oracle::reachability(net);
        CHECK(g.states.size() == (std::size_t{1} << n));
        CHECK(reachability_graph(net).lts.num_states() == (std::size_t{1} << n));
        CHECK(max_tokens(g) == 1);
        CHECK(is_plain(net).holds);
        CHECK(is_pure(net).holds);
    }
}

TEST_CASE("ring sizes") {
    CHECK(oracle::reachability(cyclenet(3, 2)).states.size() == 6);
    for (std::size_t n = 1; n <= 10; ++n) {
        CAPTURE(n);
        auto g = oracle::reachability(cyclenet(n, 1));
        CHECK(g.states.size() == n);
        CHECK(max_tokens(g) == 1);
        CHECK(is_plain(cyclenet(n, 1)).holds);
        if (n > 1)
            CHECK(is_pure(cyclenet(n, 1)).holds);
    }
    // a one-place ring is a self-loop
    CHECK_FALSE(is_pure(cyclenet(1, 1)).holds);
}

TEST_CASE("philosophers") {
    for (std::size_t n = 2; n <= 6; ++n) {
        CAPTURE(n);
        PetriNet net = philnet_bistate(n);
        auto g = oracle::reachability(net);
        CHECK(max_tokens(g) == 1);
        CHECK(is_plain(net).holds);
        CHECK(is_pure(net).holds);
        CHECK(reachability_graph(net).lts.num_states() == g.states.size());
        CHECK(is_reversible(net));
    }
    // two philosophers share both forks and cannot eat together
    CHECK(oracle::reachability(philnet_bistate(2)).states.size() == 3);
}
