#include <doctest.h>

#include <random>

#include "apt/error.hpp"
#include "apt/lts_analysis.hpp"
#include "apt/pn_analysis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace apt;

TEST_CASE("running example net parses as written") {
    PetriNet net = n1();
    CHECK(net.num_places() == 5);
    CHECK(net.num_transitions() == 4);
    CHECK(net.initial_marking() == Marking(std::vector<std::int64_t>{1, 1, 0, 0, 1}));
    CHECK(net.description() == "A Petri net N_1 having the small cycle property");
    CHECK(net.consume(*net.find_place("p4"), *net.find_transition("b")) == 1);
    CHECK(net.produce(*net.find_transition("c"), *net.find_place("p2")) == 1);
}

TEST_CASE("printing is a fixed point of parsing") {
    PetriNet net = n1();
    std::string once = print_net(net);
    std::string twice = print_net(parse_net(once));
    CHECK(once == twice);
    Lts lts = fig1();
    std::string l1 = print_lts(lts);
    CHECK(print_lts(parse_lts(l1)) == l1);
    CHECK(isomorphic(parse_lts(l1), lts).holds);
}

TEST_CASE("weights and labels survive a round trip") {
    PetriNet net;
    auto p = net.add_place("p", 3);
    auto t = net.add_transition("t1", std::string("go"));
    net.set_consume(p, t, 2);
    net.set_produce(t, p, 5);
    net.set_location(t, std::string("L"));
    PetriNet back = parse_net(print_net(net));
    CHECK(back.consume(0, 0) == 2);
    CHECK(back.produce(0, 0) == 5);
    CHECK(back.label(0) == "go");
    CHECK(back.location(0) == std::optional<std::string>("L"));
    CHECK(back.initial_marking()[0] == 3);
}

TEST_CASE("lts with locations") {
    Lts lts = read_document(fixture("lts_locations.apt")).lts();
    CHECK(lts.location(*lts.find_label("b")) == std::optional<std::string>("B"));
    CHECK(lts.has_locations());
    Lts back = parse_lts(print_lts(lts));
    CHECK(back.location(*back.find_label("a")) == std::optional<std::string>("A"));
}

TEST_CASE("marking comments") {
    PetriNet net = n1();
    CHECK(marking_comment(net, {1, 1, 0, 0, 1}) == "[ [p0:1] [p1:1] [p2:0] [p3:0] [p4:1] ]");
    CHECK(marking_comment(net, {OmegaMarking::omega, 0, 0, 0, 0}).find("[p0:OMEGA]") != std::string::npos);
}

TEST_CASE("parse errors carry positions") {
    auto position = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_document(text);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(position(".type LPN\n.places p\n.bogus\n") == std::pair<std::size_t, std::size_t>{3, 1});
    CHECK(position(".type LPN\n.places p\n.transitions t\n.flows t: {0 * p} -> {}\n").first == 4);
    CHECK(position(".type LTS\n.states s0\n").first == 1);
    CHECK(position(".type LPN\n/* open").first == 2);
    CHECK(position(".type LPN\n.places p $\n") == std::pair<std::size_t, std::size_t>{2, 11});
    CHECK(position(".type LPN\n.places p\n.places q\n").first == 3);
    CHECK_THROWS_AS(parse_net(".type LTS\n.states s0[initial]\n"), InputError);
    CHECK_THROWS_AS(read_document("/nonexistent/file.apt"), InputError);
}

TEST_CASE("random edits never crash the parser") {
    std::string base = read_text(fixture("net.apt"));
    std::mt19937 rng(13);
    const std::string alphabet = "{}[]()->,*.:\"/ \n0123456789abpq";
    std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1), ch(0, alphabet.size() - 1), count(1, 4);
    int parsed = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text = base;
        for (std::size_t k = count(rng); k > 0; --k)
            text[pos(rng)] = alphabet[ch(rng)];
        try {
            auto doc = parse_document(text);
            print_document(doc);
            ++parsed;
        } catch (const InputError&) {
        }
    }
    CHECK(parsed > 0);
}

TEST_CASE("dot output names every node") {
    std::string dot = to_dot(n1());
    for (const char* name : {"p0", "p4", "a", "d"})
        CHECK(dot.find(name) != std::string::npos);
    CHECK(to_dot(fig1()).find("digraph") != std::string::npos);
}
