// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "qsplit/circuit.hpp"

namespace qsplit {

// Behavioral equality on computational basis inputs: exhaustive for
// m <= 10, otherwise 200 seed-deterministic random basis states. Classical
// circuits are compared by integer index propagation; anything else by
// statevector fidelity >= 1 - tol per input.
bool circuits_equivalent(const Circuit& a, const Circuit& b,
                         std::uint64_t seed = 0, double tol = 1e-8);

}  // namespace qsplit
