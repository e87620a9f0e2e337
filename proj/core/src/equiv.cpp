// SPDX-License-Identifier: Apache-2.0
#include "qsplit/equiv.hpp"

#include <stdexcept>

#include "qsplit/qsim.hpp"
#include "qsplit/random.hpp"

namespace qsplit {

bool circuits_equivalent(const Circuit& a, const Circuit& b,
                         std::uint64_t seed, double tol) {
  if (a.num_qubits != b.num_qubits) return false;
  const std::uint32_t m = a.num_qubits;
  const bool classical = is_classical(a) && is_classical(b);

  const auto agree_on = [&](std::uint64_t index) {
    if (classical) return apply_classical(a, index) == apply_classical(b, index);
    const PureState in = basis_state(m, index);
    return fidelity_pure(apply(a, in), apply(b, in)) >= 1.0 - tol;
  };

  if (m <= 10) {
    for (std::uint64_t i = 0; i < (1ull << m); ++i)
      if (!agree_on(i)) return false;
    return true;
  }
  Rng rng(seed);
  for (int trial = 0; trial < 200; ++trial)
    if (!agree_on(rng.bounded(1ull << m))) return false;
  return true;
}

}  // namespace qsplit
