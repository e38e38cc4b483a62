#pragma once

#include <cstddef>
#include <cstdint>

#include "apt/petri_net.hpp"

namespace apt {

/// n independent bits, each with places off_i (marked) and on_i, toggled by set_i/unset_i.
PetriNet bitnet(std::size_t n);

/// n philosophers who take both neighbouring forks in one step.
PetriNet philnet_bistate(std::size_t n);

/// Ring of n places q_i and transitions t_i: q_i -> q_{i+1 mod n}, k tokens on q_0.
PetriNet cyclenet(std::size_t n, std::int64_t k);

} // namespace apt
