#include "apt/generators.hpp"

#include <string>

#include "apt/error.hpp"

namespace apt {

PetriNet bitnet(std::size_t n) {
    if (n < 1)
        throw InputError("bitnet needs at least one bit");
    PetriNet net;
    net.set_name("bitnet-" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::string s = std::to_string(i);
        PlaceIndex off = net.add_place("off_" + s, 1);
        PlaceIndex on = net.add_place("on_" + s, 0);
        TransitionIndex set = net.add_transition("set_" + s);
        TransitionIndex unset = net.add_transition("unset_" + s);
        net.set_consume(off, set, 1);
        net.set_produce(set, on, 1);
        net.set_consume(on, unset, 1);
        net.set_produce(unset, off, 1);
    }
    return net;
}

PetriNet philnet_bistate(std::size_t n) {
    if (n < 2)
        throw InputError("the philosophers net needs at least two philosophers");
    PetriNet net;
    net.set_name("philnet-bistate-" + std::to_string(n));
    std::vector<PlaceIndex> thinking, eating, forks;
    for (std::size_t i = 0; i < n; ++i) {
        thinking.push_back(net.add_place("thinking_" + std::to_string(i), 1));
        eating.push_back(net.add_place("eating_" + std::to_string(i), 0));
    }
    for (std::size_t i = 0; i < n; ++i)
        forks.push_back(net.add_place("fork_" + std::to_string(i), 1));
    for (std::size_t i = 0; i < n; ++i) {
        TransitionIndex take = net.add_transition("take_" + std::to_string(i));
        TransitionIndex put = net.add_transition("put_" + std::to_string(i));
        for (PlaceIndex p : {thinking[i], forks[i], forks[(i + 1) % n]}) {
            net.set_consume(p, take, 1);
            net.set_produce(put, p, 1);
        }
        net.set_produce(take, eating[i], 1);
        net.set_consume(eating[i], put, 1);
    }
    return net;
}

PetriNet cyclenet(std::size_t n, std::int64_t k) {
    if (n < 1 || k < 1)
        throw InputError("cyclenet needs n >= 1 and k >= 1");
    PetriNet net;
    net.set_name("cyclenet-" + std::to_string(n) + "-" + std::to_string(k));
    for (std::size_t i = 0; i < n; ++i)
        net.add_place("q_" + std::to_string(i), i == 0 ? k : 0);
    for (std::size_t i = 0; i < n; ++i) {
        TransitionIndex t = net.add_transition("t_" + std::to_string(i));
        net.set_consume(i, t, 1);
        net.set_produce(t, (i + 1) % n, 1);
    }
    return net;
}

} // namespace apt
