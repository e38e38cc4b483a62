#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "apt/exact.hpp"
#include "apt/petri_net.hpp"

namespace apt {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Rows are places, columns transitions.
struct IncidenceMatrices {
    IntMatrix backward;
    IntMatrix forward;
    IntMatrix incidence;
};

IncidenceMatrices incidence_matrices(const PetriNet& net);

enum class InvariantKind { s, t };

/// Minimal semipositive S-invariants (x^T C = 0, indexed by places) or
/// T-invariants (C y = 0, indexed by transitions).
std::vector<exact::IntegerVector> invariants(const PetriNet& net, InvariantKind kind);

struct Coverage {
    bool holds = true;
    /// First place (S) or transition (T) outside every invariant's support.
    std::optional<std::size_t> uncovered;
};
Coverage covered_by_invariants(const PetriNet& net, InvariantKind kind);

using PlaceSet = std::vector<PlaceIndex>;

inline constexpr std::size_t default_siphon_place_cap = 64;

bool is_siphon(const PetriNet& net, const PlaceSet& places);
bool is_trap(const PetriNet& net, const PlaceSet& places);

/// Inclusion-minimal nonempty siphons, each sorted, the list sorted lexicographically.
/// Throws LimitExceeded when the net has more places than the cap.
std::vector<PlaceSet> minimal_siphons(const PetriNet& net, std::size_t place_cap = default_siphon_place_cap);
std::vector<PlaceSet> minimal_traps(const PetriNet& net, std::size_t place_cap = default_siphon_place_cap);

} // namespace apt
