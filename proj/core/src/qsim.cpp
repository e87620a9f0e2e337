// SPDX-License-Identifier: Apache-2.0
#include "qsplit/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsplit/random.hpp"

namespace qsplit {

namespace {

std::uint64_t dim_of(std::uint32_t m) { return 1ull << m; }

std::uint64_t control_mask(std::uint32_t m, const std::vector<QubitId>& cs) {
  std::uint64_t mask = 0;
  for (QubitId q : cs) mask |= wire_mask(m, q);
  return mask;
}

// In-place controlled 2x2 update on the target wire.
void apply_u2(PureState& s, std::uint64_t cmask, QubitId target,
              const Complex u[2][2]) {
  const std::uint64_t tmask = wire_mask(s.num_qubits, target);
  const std::uint64_t dim = s.amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tmask) != 0 || (i & cmask) != cmask) continue;
    const Complex a0 = s.amps[i];
    const Complex a1 = s.amps[i | tmask];
    s.amps[i] = u[0][0] * a0 + u[0][1] * a1;
    s.amps[i | tmask] = u[1][0] * a0 + u[1][1] * a1;
  }
}

void apply_swap_pair(PureState& s, std::uint64_t cmask, QubitId a, QubitId b) {
  const std::uint64_t am = wire_mask(s.num_qubits, a);
  const std::uint64_t bm = wire_mask(s.num_qubits, b);
  const std::uint64_t dim = s.amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cmask) != cmask) continue;
    if ((i & am) == 0 || (i & bm) != 0) continue;
    std::swap(s.amps[i], s.amps[i ^ am ^ bm]);
  }
}

const Complex kV[2][2] = {{Complex(0.5, 0.5), Complex(0.5, -0.5)},
                          {Complex(0.5, -0.5), Complex(0.5, 0.5)}};
const Complex kVdag[2][2] = {{Complex(0.5, -0.5), Complex(0.5, 0.5)},
                             {Complex(0.5, 0.5), Complex(0.5, -0.5)}};

}  // namespace

PureState basis_state(std::uint32_t m, std::uint64_t index) {
  if (index >= dim_of(m))
    throw std::invalid_argument("basis index out of range");
  PureState s;
  s.num_qubits = m;
  s.amps.assign(dim_of(m), Complex(0.0, 0.0));
  s.amps[index] = Complex(1.0, 0.0);
  return s;
}

PureState product_state(const std::vector<std::array<Complex, 2>>& factors) {
  const std::uint32_t m = static_cast<std::uint32_t>(factors.size());
  PureState s;
  s.num_qubits = m;
  s.amps.assign(dim_of(m), Complex(1.0, 0.0));
  for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
    for (std::uint32_t q = 0; q < m; ++q)
      s.amps[i] *= factors[q][(i & wire_mask(m, q)) != 0 ? 1 : 0];
  }
  return s;
}

std::string basis_label(std::uint32_t m, std::uint64_t index) {
  std::string out(m, '0');
  for (std::uint32_t q = 0; q < m; ++q)
    if (index & wire_mask(m, q)) out[q] = '1';
  return out;
}

void apply_in_place(const Gate& g, PureState& s) {
  const std::uint32_t m = s.num_qubits;
  const std::uint64_t cmask = control_mask(m, g.controls);
  switch (g.kind) {
    case GateKind::Mcx: {
      const std::uint64_t tmask = wire_mask(m, g.targets[0]);
      const std::uint64_t dim = s.amps.size();
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tmask) != 0 || (i & cmask) != cmask) continue;
        std::swap(s.amps[i], s.amps[i | tmask]);
      }
      break;
    }
    case GateKind::Swap:
    case GateKind::Fredkin:
      apply_swap_pair(s, cmask, g.targets[0], g.targets[1]);
      break;
    case GateKind::V:
      apply_u2(s, cmask, g.targets[0], kV);
      break;
    case GateKind::Vdag:
      apply_u2(s, cmask, g.targets[0], kVdag);
      break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      const Complex u[2][2] = {{Complex(r, 0), Complex(r, 0)},
                               {Complex(r, 0), Complex(-r, 0)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::S: {
      const Complex u[2][2] = {{Complex(1, 0), 0}, {0, Complex(0, 1)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::Sdag: {
      const Complex u[2][2] = {{Complex(1, 0), 0}, {0, Complex(0, -1)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::T: {
      const double r = 1.0 / std::sqrt(2.0);
      const Complex u[2][2] = {{Complex(1, 0), 0}, {0, Complex(r, r)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::Tdag: {
      const double r = 1.0 / std::sqrt(2.0);
      const Complex u[2][2] = {{Complex(1, 0), 0}, {0, Complex(r, -r)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::Rx: {
      const double c = std::cos(g.angle / 2), v = std::sin(g.angle / 2);
      const Complex u[2][2] = {{Complex(c, 0), Complex(0, -v)},
                               {Complex(0, -v), Complex(c, 0)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(g.angle / 2), v = std::sin(g.angle / 2);
      const Complex u[2][2] = {{Complex(c, 0), Complex(-v, 0)},
                               {Complex(v, 0), Complex(c, 0)}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
    case GateKind::Rz: {
      const Complex u[2][2] = {
          {std::exp(Complex(0, -g.angle / 2)), 0},
          {0, std::exp(Complex(0, g.angle / 2))}};
      apply_u2(s, cmask, g.targets[0], u);
      break;
    }
  }
}

PureState apply(const Circuit& c, const PureState& s) {
  if (c.num_qubits != s.num_qubits)
    throw std::invalid_argument("circuit and state qubit counts differ");
  PureState out = s;
  for (const Gate& g : c.gates) apply_in_place(g, out);
  return out;
}

PureState apply_inverse(const Circuit& c, const PureState& s) {
  if (c.num_qubits != s.num_qubits)
    throw std::invalid_argument("circuit and state qubit counts differ");
  PureState out = s;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    apply_in_place(adjoint(*it), out);
  return out;
}

std::uint64_t apply_classical(const Circuit& c, std::uint64_t index) {
  if (!is_classical(c))
    throw std::invalid_argument("circuit has non-classical gates");
  if (index >= dim_of(c.num_qubits))
    throw std::invalid_argument("basis index out of range");
  const std::uint32_t m = c.num_qubits;
  for (const Gate& g : c.gates) {
    const std::uint64_t cmask = control_mask(m, g.controls);
    if ((index & cmask) != cmask) continue;
    if (g.kind == GateKind::Mcx) {
      index ^= wire_mask(m, g.targets[0]);
    } else {
      const std::uint64_t am = wire_mask(m, g.targets[0]);
      const std::uint64_t bm = wire_mask(m, g.targets[1]);
      const bool ba = (index & am) != 0, bb = (index & bm) != 0;
      if (ba != bb) index ^= am | bm;
    }
  }
  return index;
}

PureState permute_wires(const PureState& s,
                        const std::vector<std::uint32_t>& pi) {
  const std::uint32_t m = s.num_qubits;
  if (pi.size() != m)
    throw std::invalid_argument("permutation size does not match qubit count");
  std::vector<bool> seen(m, false);
  for (std::uint32_t v : pi) {
    if (v >= m || seen[v])
      throw std::invalid_argument("wire map is not a permutation");
    seen[v] = true;
  }
  PureState out;
  out.num_qubits = m;
  out.amps.assign(s.amps.size(), Complex(0.0, 0.0));
  for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
    std::uint64_t j = 0;
    for (std::uint32_t q = 0; q < m; ++q)
      if (i & wire_mask(m, q)) j |= wire_mask(m, pi[q]);
    out.amps[j] = s.amps[i];
  }
  return out;
}

double fidelity_pure(const PureState& a, const PureState& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("fidelity of states with different sizes");
  Complex ip(0.0, 0.0);
  for (std::uint64_t i = 0; i < a.amps.size(); ++i)
    ip += std::conj(a.amps[i]) * b.amps[i];
  return std::norm(ip);
}

namespace {

void check_keep(std::uint32_t m, const std::vector<QubitId>& keep) {
  std::vector<bool> seen(m, false);
  for (QubitId q : keep) {
    if (q >= m) throw std::invalid_argument("kept qubit out of range");
    if (seen[q]) throw std::invalid_argument("kept qubit repeated");
    seen[q] = true;
  }
}

std::vector<QubitId> complement_of(std::uint32_t m,
                                   const std::vector<QubitId>& keep) {
  std::vector<bool> kept(m, false);
  for (QubitId q : keep) kept[q] = true;
  std::vector<QubitId> rest;
  for (std::uint32_t q = 0; q < m; ++q)
    if (!kept[q]) rest.push_back(q);
  return rest;
}

// Amplitudes rearranged as a 2^|keep| x 2^|rest| matrix: row bits follow
// keep[] order (keep[0] most significant), column bits the ascending
// complement.
Eigen::MatrixXcd keep_matrix(const PureState& s,
                             const std::vector<QubitId>& keep) {
  const std::uint32_t m = s.num_qubits;
  const std::vector<QubitId> rest = complement_of(m, keep);
  const std::size_t k = keep.size(), r = rest.size();
  Eigen::MatrixXcd mat(1ll << k, 1ll << r);
  for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (i & wire_mask(m, keep[j])) row |= 1ull << (k - 1 - j);
    for (std::size_t j = 0; j < r; ++j)
      if (i & wire_mask(m, rest[j])) col |= 1ull << (r - 1 - j);
    mat(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        s.amps[i];
  }
  return mat;
}

double sum_sqrt_eigenvalues(const Eigen::MatrixXcd& product) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(product, false);
  double total = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    total += std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  return total;
}

}  // namespace

ReducedState reduced(const PureState& s, const std::vector<QubitId>& keep) {
  check_keep(s.num_qubits, keep);
  if (keep.size() > 12)
    throw std::invalid_argument("reduced density matrix over 12 qubits");
  Eigen::MatrixXcd mat = keep_matrix(s, keep);
  ReducedState out;
  out.qubits = keep;
  out.rho = mat * mat.adjoint();
  return out;
}

double fidelity_mixed(const ReducedState& a, const ReducedState& b) {
  if (a.qubits != b.qubits)
    throw std::invalid_argument("fidelity of mismatched qubit subsets");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.rho);
  Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXcd sqrt_a = es.eigenvectors() *
                            lambda.asDiagonal().toDenseMatrix().cast<Complex>() *
                            es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(sqrt_a * b.rho *
                                                        sqrt_a);
  double total = 0.0;
  for (Eigen::Index i = 0; i < inner.eigenvalues().size(); ++i)
    total += std::sqrt(std::max(0.0, inner.eigenvalues()[i]));
  return total * total;
}

double reduced_fidelity(const PureState& a, const std::vector<QubitId>& keep_a,
                        const PureState& b,
                        const std::vector<QubitId>& keep_b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("fidelity of states with different sizes");
  if (keep_a.size() != keep_b.size())
    throw std::invalid_argument("kept subsets differ in size");
  check_keep(a.num_qubits, keep_a);
  check_keep(b.num_qubits, keep_b);
  const std::uint32_t m = a.num_qubits;
  const std::size_t k = keep_a.size();
  Eigen::MatrixXcd ma = keep_matrix(a, keep_a);
  Eigen::MatrixXcd mb = keep_matrix(b, keep_b);
  if (2 * k <= m) {
    double total =
        sum_sqrt_eigenvalues((ma * ma.adjoint()) * (mb * mb.adjoint()));
    return total * total;
  }
  // The kept side is the bigger one: the fidelity equals the squared trace
  // norm of the cross Gram matrix contracted over the kept index, which
  // lives on the traced side.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ma.adjoint() * mb);
  const double total = svd.singularValues().sum();
  return total * total;
}

SampleCounts sample(const PureState& s, std::uint64_t shots,
                    std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("zero shots");
  std::vector<double> cdf(s.amps.size());
  double acc = 0.0;
  for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
    acc += std::norm(s.amps[i]);
    cdf[i] = acc;
  }
  Rng rng(seed);
  SampleCounts out;
  out.shots = shots;
  for (std::uint64_t n = 0; n < shots; ++n) {
    const double u = rng.next_double() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
    if (idx >= s.amps.size()) idx = s.amps.size() - 1;
    ++out.counts[basis_label(s.num_qubits, idx)];
  }
  return out;
}

}  // namespace qsplit
