#include "apt/structure.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "apt/error.hpp"

namespace apt {

IncidenceMatrices incidence_matrices(const PetriNet& net) {
    const std::size_t np = net.num_places();
    const std::size_t nt = net.num_transitions();
    IncidenceMatrices m;
    m.backward.assign(np, std::vector<std::int64_t>(nt, 0));
    m.forward = m.backward;
    m.incidence = m.backward;
    for (TransitionIndex t = 0; t < nt; ++t) {
        for (auto [p, w] : net.preset(t))
            m.backward[p][t] = w;
        for (auto [p, w] : net.postset(t))
            m.forward[p][t] = w;
    }
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t t = 0; t < nt; ++t)
            m.incidence[p][t] = m.forward[p][t] - m.backward[p][t];
    return m;
}

std::vector<exact::IntegerVector> invariants(const PetriNet& net, InvariantKind kind) {
    auto c = incidence_matrices(net).incidence;
    std::vector<exact::IntegerVector> rows;
    for (const auto& r : c) {
        exact::IntegerVector row;
        for (auto v : r)
            row.emplace_back(static_cast<long>(v));
        rows.push_back(std::move(row));
    }
    if (kind == InvariantKind::s && net.num_transitions() == 0) {
        std::vector<exact::IntegerVector> units;
        for (std::size_t p = 0; p < net.num_places(); ++p) {
            exact::IntegerVector e(net.num_places(), 0);
            e[p] = 1;
            units.push_back(std::move(e));
        }
        std::sort(units.begin(), units.end());
        return units;
    }
    return exact::minimal_semipositive_solutions(
        rows, net.num_transitions(), kind == InvariantKind::s ? exact::Side::rows : exact::Side::columns);
}

Coverage covered_by_invariants(const PetriNet& net, InvariantKind kind) {
    const std::size_t n = kind == InvariantKind::s ? net.num_places() : net.num_transitions();
    std::vector<bool> covered(n, false);
    for (const auto& inv : invariants(net, kind))
        for (std::size_t i = 0; i < n; ++i)
            if (inv[i] != 0)
                covered[i] = true;
    Coverage result;
    for (std::size_t i = 0; i < n; ++i)
        if (!covered[i]) {
            result.holds = false;
            result.uncovered = i;
            break;
        }
    return result;
}

namespace {

using Bits = std::uint64_t;

// producers[p]: transitions t with F(t,p) > 0, each given by the bitset of its pre-places.
struct FlowView {
    std::size_t places = 0;
    std::vector<std::vector<Bits>> producer_inputs;
};

FlowView siphon_view(const PetriNet& net, bool reversed) {
    FlowView v;
    v.places = net.num_places();
    v.producer_inputs.resize(v.places);
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        const auto& in = reversed ? net.postset(t) : net.preset(t);
        const auto& out = reversed ? net.preset(t) : net.postset(t);
        Bits inputs = 0;
        for (auto [p, w] : in)
            inputs |= Bits{1} << p;
        for (auto [p, w] : out)
            v.producer_inputs[p].push_back(inputs);
    }
    return v;
}

// Largest siphon contained in `within`.
Bits largest_siphon(const FlowView& v, Bits within) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < v.places; ++p) {
            if (!(within >> p & 1))
                continue;
            for (Bits inputs : v.producer_inputs[p])
                if ((inputs & within) == 0) {
                    within &= ~(Bits{1} << p);
                    changed = true;
                    break;
                }
        }
    }
    return within;
}

bool minimal(const FlowView& v, Bits set) {
    for (std::size_t p = 0; p < v.places; ++p)
        if ((set >> p & 1) && largest_siphon(v, set & ~(Bits{1} << p)) != 0)
            return false;
    return true;
}

void search(const FlowView& v, Bits included, Bits forbidden, std::vector<Bits>& found) {
    for (Bits f : found)
        if ((f & included) == f)
            return;
    for (std::size_t p = 0; p < v.places; ++p) {
        if (!(included >> p & 1))
            continue;
        for (Bits inputs : v.producer_inputs[p]) {
            if (inputs & included)
                continue;
            Bits options = inputs & ~forbidden;
            Bits blocked = forbidden;
            while (options) {
                int q = std::countr_zero(options);
                options &= options - 1;
                search(v, included | Bits{1} << q, blocked, found);
                blocked |= Bits{1} << q;
            }
            return;
        }
    }
    if (minimal(v, included))
        found.push_back(included);
}

std::vector<PlaceSet> enumerate(const PetriNet& net, bool reversed, std::size_t cap) {
    const std::size_t limit = std::min<std::size_t>(cap, 64);
    if (net.num_places() > limit)
        throw LimitExceeded("siphon/trap enumeration supports at most " + std::to_string(limit) + " places, net has " +
                            std::to_string(net.num_places()));
    FlowView v = siphon_view(net, reversed);
    std::vector<Bits> found;
    Bits forbidden = 0;
    for (std::size_t p = 0; p < v.places; ++p) {
        search(v, Bits{1} << p, forbidden, found);
        forbidden |= Bits{1} << p;
    }
    std::set<PlaceSet> out;
    for (Bits b : found) {
        PlaceSet s;
        for (std::size_t p = 0; p < v.places; ++p)
            if (b >> p & 1)
                s.push_back(p);
        out.insert(std::move(s));
    }
    return {out.begin(), out.end()};
}

bool check(const PetriNet& net, const PlaceSet& places, bool reversed) {
    if (places.empty())
        return false;
    std::vector<bool> in(net.num_places(), false);
    for (auto p : places)
        in.at(p) = true;
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        const auto& src = reversed ? net.postset(t) : net.preset(t);
        const auto& dst = reversed ? net.preset(t) : net.postset(t);
        bool feeds = std::any_of(dst.begin(), dst.end(), [&](auto a) { return in[a.first]; });
        bool draws = std::any_of(src.begin(), src.end(), [&](auto a) { return in[a.first]; });
        if (feeds && !draws)
            return false;
    }
    return true;
}

} // namespace

bool is_siphon(const PetriNet& net, const PlaceSet& places) { return check(net, places, false); }
bool is_trap(const PetriNet& net, const PlaceSet& places) { return check(net, places, true); }

std::vector<PlaceSet> minimal_siphons(const PetriNet& net, std::size_t place_cap) {
    return enumerate(net, false, place_cap);
}

std::vector<PlaceSet> minimal_traps(const PetriNet& net, std::size_t place_cap) {
    return enumerate(net, true, place_cap);
}

} // namespace apt
