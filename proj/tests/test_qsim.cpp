// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "helpers/dense_sim.hpp"
#include "helpers/generators.hpp"
#include "qsplit/circuit.hpp"
#include "qsplit/qsim.hpp"
#include "qsplit/random.hpp"

using namespace qsplit;

namespace {

double max_amp_diff(const PureState& a, const PureState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
  return worst;
}

PureState bell_pair() {
  PureState s = basis_state(2, 0);
  Circuit c;
  c.num_qubits = 2;
  c.gates = {Gate::h(0), Gate::cx(0, 1)};
  return apply(c, s);
}

}  // namespace

TEST_SUITE("qsim") {

TEST_CASE("qubit 0 owns the most significant bit") {
  CHECK(wire_mask(3, 0) == 4);
  CHECK(wire_mask(3, 2) == 1);
  CHECK(basis_label(3, 5) == "101");
  const PureState s = basis_state(3, 5);
  CHECK(s.amps[5] == Complex(1.0, 0.0));
  CHECK_THROWS_AS(basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("product_state multiplies per-wire factors") {
  const Complex one(1.0, 0.0), zero(0.0, 0.0);
  const PureState s = product_state({{zero, one}, {one, zero}});
  CHECK(s.num_qubits == 2);
  CHECK(std::abs(s.amps[2] - one) < 1e-12);  // |10>
}

TEST_CASE("classical gates move basis states") {
  Circuit c;
  c.num_qubits = 3;

  SUBCASE("X flips its wire") {
    c.gates = {Gate::x(1)};
    CHECK(max_amp_diff(apply(c, basis_state(3, 0)), basis_state(3, 2)) <
          1e-12);
  }
  SUBCASE("CCX fires only when both controls are set") {
    c.gates = {Gate::ccx(0, 1, 2)};
    CHECK(max_amp_diff(apply(c, basis_state(3, 6)), basis_state(3, 7)) <
          1e-12);
    CHECK(max_amp_diff(apply(c, basis_state(3, 4)), basis_state(3, 4)) <
          1e-12);
  }
  SUBCASE("swap exchanges wire contents") {
    c.gates = {Gate::swap(0, 2)};
    CHECK(max_amp_diff(apply(c, basis_state(3, 4)), basis_state(3, 1)) <
          1e-12);
  }
  SUBCASE("fredkin swaps only under its control") {
    c.gates = {Gate::fredkin({0}, 1, 2)};
    CHECK(max_amp_diff(apply(c, basis_state(3, 6)), basis_state(3, 5)) <
          1e-12);
    CHECK(max_amp_diff(apply(c, basis_state(3, 2)), basis_state(3, 2)) <
          1e-12);
  }
}

TEST_CASE("V on |0> produces the square-root-of-X column") {
  Circuit c;
  c.num_qubits = 1;
  c.gates = {Gate::v({}, 0)};
  const PureState out = apply(c, basis_state(1, 0));
  CHECK(std::abs(out.amps[0] - Complex(0.5, 0.5)) < 1e-12);
  CHECK(std::abs(out.amps[1] - Complex(0.5, -0.5)) < 1e-12);
}

TEST_CASE("V applied twice equals X") {
  Circuit vv, x;
  vv.num_qubits = 2;
  vv.gates = {Gate::v({0}, 1), Gate::v({0}, 1)};
  x.num_qubits = 2;
  x.gates = {Gate::cx(0, 1)};
  Rng rng(5);
  for (int i = 0; i < 4; ++i) {
    const PureState in = basis_state(2, i);
    CHECK(fidelity_pure(apply(vv, in), apply(x, in)) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("H, S, and T act as their textbook matrices") {
  Circuit c;
  c.num_qubits = 1;
  const double r = 1.0 / std::sqrt(2.0);

  c.gates = {Gate::h(0)};
  PureState out = apply(c, basis_state(1, 0));
  CHECK(std::abs(out.amps[0] - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(out.amps[1] - Complex(r, 0)) < 1e-12);

  c.gates = {Gate::s(0)};
  out = apply(c, basis_state(1, 1));
  CHECK(std::abs(out.amps[1] - Complex(0, 1)) < 1e-12);

  c.gates = {Gate::t(0)};
  out = apply(c, basis_state(1, 1));
  CHECK(std::abs(out.amps[1] - Complex(r, r)) < 1e-12);

  c.gates = {Gate::rz(0, std::acos(-1.0))};  // Rz(pi) = diag(-i, i)
  out = apply(c, basis_state(1, 0));
  CHECK(std::abs(out.amps[0] - Complex(0, -1)) < 1e-12);
}

TEST_CASE("statevector engine agrees with the dense reference") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.bounded(5));
    const Circuit c =
        qsplit_test::random_circuit(m, 1 + rng.bounded(12), rng);
    const PureState in = basis_state(m, rng.bounded(1ull << m));
    const PureState fast = apply(c, in);
    const PureState slow = qsplit_test::dense_apply(c, in);
    CHECK(max_amp_diff(fast, slow) < 1e-10);
  }
}

TEST_CASE("apply_inverse undoes apply") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.bounded(8));
    const Circuit c =
        qsplit_test::random_circuit(m, 1 + rng.bounded(25), rng);
    const PureState in = basis_state(m, rng.bounded(1ull << m));
    const PureState round = apply_inverse(c, apply(c, in));
    CHECK(max_amp_diff(round, in) < 1e-8);
  }
}

TEST_CASE("apply_classical tracks apply on basis states") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.bounded(5));
    Circuit c;
    c.num_qubits = m;
    for (int g = 0; g < 10; ++g) {
      auto w = qsplit_test::draw_wires(m, std::min(m, 2u), rng);
      c.gates.push_back(w.size() == 1 ? Gate::x(w[0]) : Gate::cx(w[0], w[1]));
    }
    const std::uint64_t in = rng.bounded(1ull << m);
    const std::uint64_t out = apply_classical(c, in);
    CHECK(fidelity_pure(apply(c, basis_state(m, in)), basis_state(m, out)) ==
          doctest::Approx(1.0));
  }
  Circuit h;
  h.num_qubits = 1;
  h.gates = {Gate::h(0)};
  CHECK_THROWS_AS(apply_classical(h, 0), std::invalid_argument);
}

TEST_CASE("permute_wires moves wire contents to pi[wire]") {
  // |011>: wire 0 holds 0, wires 1 and 2 hold 1.
  const PureState in = basis_state(3, 3);
  // wire 0 -> 2, wire 1 -> 0, wire 2 -> 1.
  const PureState out = permute_wires(in, {2, 0, 1});
  CHECK(fidelity_pure(out, basis_state(3, 6)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(permute_wires(in, {0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_wires(in, {0, 1}), std::invalid_argument);
}

TEST_CASE("permutation then inverse permutation is the identity") {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.bounded(7));
    const Circuit c = qsplit_test::random_circuit(m, 8, rng);
    const PureState s = apply(c, basis_state(m, rng.bounded(1ull << m)));
    const auto pi = rng.permutation(m);
    std::vector<std::uint32_t> inv(m);
    for (std::uint32_t i = 0; i < m; ++i) inv[pi[i]] = i;
    CHECK(max_amp_diff(permute_wires(permute_wires(s, pi), inv), s) < 1e-12);
  }
}

TEST_CASE("fidelity_pure basics") {
  const PureState a = basis_state(2, 1);
  const PureState b = basis_state(2, 2);
  CHECK(fidelity_pure(a, b) == doctest::Approx(0.0));
  CHECK(fidelity_pure(a, a) == doctest::Approx(1.0));

  PureState phased = a;
  for (auto& amp : phased.amps) amp *= Complex(0.0, 1.0);
  CHECK(fidelity_pure(a, phased) == doctest::Approx(1.0));
}

TEST_CASE("reduced state of a Bell pair is maximally mixed") {
  const ReducedState rho = reduced(bell_pair(), {0});
  CHECK(std::abs(rho.rho(0, 0) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho.rho(1, 1) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho.rho(0, 1)) < 1e-12);
}

TEST_CASE("fidelity_mixed matches closed forms") {
  const ReducedState half = reduced(bell_pair(), {0});
  const ReducedState pure0 = reduced(basis_state(2, 0), {0});
  CHECK(fidelity_mixed(half, pure0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fidelity_mixed(half, half) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fidelity_mixed(pure0, pure0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reduced_fidelity agrees with the density-matrix route") {
  Rng rng(909);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.bounded(5));
    const Circuit ca = qsplit_test::random_circuit(m, 10, rng);
    const Circuit cb = qsplit_test::random_circuit(m, 10, rng);
    const PureState a = apply(ca, basis_state(m, 0));
    const PureState b = apply(cb, basis_state(m, 0));
    const std::uint32_t k =
        1 + static_cast<std::uint32_t>(rng.bounded(m));  // spans both paths
    const auto keep = qsplit_test::draw_wires(m, k, rng);
    const double fast = reduced_fidelity(a, keep, b, keep);
    const double slow = fidelity_mixed(reduced(a, keep), reduced(b, keep));
    CHECK(fast == doctest::Approx(slow).epsilon(1e-7));
  }
}

TEST_CASE("reduced_fidelity identifies kept wires positionally") {
  const PureState a = basis_state(2, 1);  // wire 1 holds 1
  const PureState b = basis_state(2, 2);  // wire 0 holds 1
  CHECK(reduced_fidelity(a, {1}, b, {0}) == doctest::Approx(1.0));
  CHECK(reduced_fidelity(a, {0}, b, {0}) == doctest::Approx(0.0));
}

TEST_CASE("Bell marginal against a basis marginal scores one half") {
  CHECK(reduced_fidelity(bell_pair(), {0}, basis_state(2, 0), {0}) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sample is deterministic and conserves shots") {
  const PureState s = basis_state(3, 5);
  const SampleCounts counts = sample(s, 100, 7);
  CHECK(counts.shots == 100);
  REQUIRE(counts.counts.size() == 1);
  CHECK(counts.counts.at("101") == 100);

  const PureState plus = apply(
      [] {
        Circuit c;
        c.num_qubits = 1;
        c.gates = {Gate::h(0)};
        return c;
      }(),
      basis_state(1, 0));
  const SampleCounts c1 = sample(plus, 1000, 11);
  const SampleCounts c2 = sample(plus, 1000, 11);
  CHECK(c1.counts == c2.counts);
  std::uint64_t total = 0;
  for (const auto& [label, count] : c1.counts) total += count;
  CHECK(total == 1000);
  CHECK(c1.counts.at("0") > 400);  // fair coin, 1000 tosses
  CHECK(c1.counts.at("1") > 400);
  CHECK_THROWS_AS(sample(s, 0, 1), std::invalid_argument);
}

}  // TEST_SUITE
