#include "qpes/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace qpes {

EncodingScheme encoding_from_name(const std::string& name) {
  if (name == "jw" || name == "jordan-wigner" || name == "jordan_wigner")
    return EncodingScheme::jordan_wigner;
  if (name == "parity") return EncodingScheme::parity;
  if (name == "bk" || name == "bravyi-kitaev" || name == "bravyi_kitaev")
    return EncodingScheme::bravyi_kitaev;
  throw std::invalid_argument("unknown encoding scheme: " + name);
}

std::string encoding_name(EncodingScheme scheme) {
  switch (scheme) {
    case EncodingScheme::jordan_wigner: return "jw";
    case EncodingScheme::parity: return "parity";
    case EncodingScheme::bravyi_kitaev: return "bk";
  }
  return "?";
}

namespace {

inline std::uint64_t bits_below(int k) {
  return k >= 64 ? ~0ull : ((1ull << k) - 1);
}

// Fenwick tree over [0, n): node index = right endpoint of its interval.
struct FenwickTree {
  std::vector<int> parent;
  std::vector<int> lo;
  std::vector<std::vector<int>> children;

  explicit FenwickTree(int n) : parent(n, -1), lo(n, 0), children(n) {
    if (n == 0) return;
    lo[n - 1] = 0;
    build(0, n - 1, n - 1);
  }

  void build(int left, int right, int par) {
    if (left >= right) return;
    const int pivot = (left + right) >> 1;
    parent[pivot] = par;
    lo[pivot] = left;
    children[par].push_back(pivot);
    build(left, pivot, pivot);
    build(pivot + 1, right, par);
  }
};

}  // namespace

Encoding::Encoding(EncodingScheme scheme, int n_modes) : scheme_(scheme), n_(n_modes) {
  if (n_ < 1 || n_ > PauliString::max_qubits)
    throw std::invalid_argument("Encoding: mode count out of range");
  update_.assign(n_, 0);
  parity_.assign(n_, 0);
  remainder_.assign(n_, 0);
  interval_.assign(n_, 0);
  const std::uint64_t full = bits_below(n_);

  switch (scheme_) {
    case EncodingScheme::jordan_wigner:
      for (int j = 0; j < n_; ++j) {
        parity_[j] = remainder_[j] = bits_below(j);
        interval_[j] = 1ull << j;
      }
      break;
    case EncodingScheme::parity:
      for (int j = 0; j < n_; ++j) {
        update_[j] = full & ~bits_below(j + 1);
        parity_[j] = j > 0 ? (1ull << (j - 1)) : 0;
        remainder_[j] = 0;
        interval_[j] = bits_below(j + 1);
      }
      break;
    case EncodingScheme::bravyi_kitaev: {
      FenwickTree tree(n_);
      for (int j = 0; j < n_; ++j) {
        for (int a = tree.parent[j]; a >= 0; a = tree.parent[a]) update_[j] |= 1ull << a;
        // Prefix decomposition of [0, j).
        for (int t = j - 1; t >= 0; t = tree.lo[t] - 1) parity_[j] |= 1ull << t;
        std::uint64_t flip = 0;
        for (int c : tree.children[j]) flip |= 1ull << c;
        remainder_[j] = parity_[j] & ~flip;
        interval_[j] = bits_below(j + 1) & ~bits_below(tree.lo[j]);
      }
      break;
    }
  }
}

std::uint64_t Encoding::encode_occupation(std::uint64_t occupation_bits) const {
  std::uint64_t out = 0;
  for (int q = 0; q < n_; ++q)
    if (std::popcount(occupation_bits & interval_[q]) & 1) out |= 1ull << q;
  return out;
}

// ---------------------------------------------------------------------------
// Operator mapping
// ---------------------------------------------------------------------------

namespace {

using Cx = std::complex<double>;
using TermVec = std::vector<std::pair<PauliString, Cx>>;

// Pauli expansion of one ladder factor under the given encoding.
TermVec mode_operator(const Encoding& enc, int mode, bool dagger) {
  const int n = enc.n_modes();
  PauliString c_part((1ull << mode) | enc.update_mask(mode), enc.parity_mask(mode), n);
  PauliString d_part((1ull << mode) | enc.update_mask(mode),
                     enc.remainder_mask(mode) | (1ull << mode), n);
  const Cx id(0.0, dagger ? -0.5 : 0.5);
  return {{c_part, Cx(0.5, 0.0)}, {d_part, id}};
}

TermVec multiply(const TermVec& a, const TermVec& b) {
  TermVec out;
  out.reserve(a.size() * b.size());
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      PauliProduct prod = pauli_product(pa, pb);
      static const Cx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      const Cx coeff = ca * cb * phases[prod.phase_exponent];
      bool merged = false;
      for (auto& [ps, cs] : out)
        if (ps == prod.string) {
          cs += coeff;
          merged = true;
          break;
        }
      if (!merged) out.emplace_back(prod.string, coeff);
    }
  return out;
}

TermVec map_term(const Encoding& enc, std::uint64_t key) {
  TermVec acc = {{PauliString(0, 0, enc.n_modes()), Cx(1.0, 0.0)}};
  for (const LadderOp& op : fermion_term::decode(key))
    acc = multiply(acc, mode_operator(enc, op.mode, op.dagger));
  return acc;
}

using Accumulator = std::unordered_map<PauliSum::Key, Cx, PauliSum::KeyHash>;

void accumulate_operator(const FermionOperator& op, const Encoding& enc, Accumulator& acc,
                         Cx prefactor) {
  for (const auto& [key, coeff] : op.terms())
    for (const auto& [ps, c] : map_term(enc, key)) {
      const Cx value = prefactor * coeff * c;
      auto [it, inserted] = acc.try_emplace({ps.x, ps.z}, value);
      if (!inserted) it->second += value;
    }
}

PauliSum finish(const Accumulator& acc, int n_qubits, double constant, bool imag_part) {
  PauliSum sum(n_qubits);
  sum.set_constant(constant);
  for (const auto& [k, c] : acc) {
    const double wanted = imag_part ? c.imag() : c.real();
    const double residue = imag_part ? c.real() : c.imag();
    if (std::abs(residue) > 1e-10)
      throw std::runtime_error("map_to_qubits: non-real Pauli coefficient " +
                               std::to_string(residue) + " (operator not Hermitian?)");
    if (std::abs(wanted) > PauliSum::prune_threshold)
      sum.add(PauliString(k.first, k.second, n_qubits), wanted);
  }
  return sum;
}

}  // namespace

PauliSum map_to_qubits(const FermionOperator& op, EncodingScheme scheme) {
  const Encoding enc(scheme, op.n_spin_orbitals());
  Accumulator acc;
  acc.reserve(2 * op.stored_term_count() + 16);
  accumulate_operator(op, enc, acc, Cx(1.0, 0.0));
  // Identity contributions fold into the constant.
  double constant = op.constant();
  auto it = acc.find({0ull, 0ull});
  if (it != acc.end()) {
    if (std::abs(it->second.imag()) > 1e-10)
      throw std::runtime_error("map_to_qubits: imaginary identity coefficient");
    constant += it->second.real();
    acc.erase(it);
  }
  return finish(acc, op.n_spin_orbitals(), constant, false);
}

PauliSum map_excitation_generator(const FermionOperator& t, EncodingScheme scheme) {
  // For real T, map(T) = A + iB with A, B real sums, so T - T+ maps to 2iB
  // and Q = i (T - T+) = -2B satisfies T - T+ = -i Q.
  const Encoding enc(scheme, t.n_spin_orbitals());
  Accumulator acc;
  accumulate_operator(t, enc, acc, Cx(-2.0, 0.0));
  acc.erase({0ull, 0ull});  // identity part of T cancels in T - T+
  PauliSum sum(t.n_spin_orbitals());
  for (const auto& [k, c] : acc)
    if (std::abs(c.imag()) > PauliSum::prune_threshold)
      sum.add(PauliString(k.first, k.second, t.n_spin_orbitals()), c.imag());
  return sum;
}

// ---------------------------------------------------------------------------
// Two-qubit reduction
// ---------------------------------------------------------------------------

TwoQubitReducer::TwoQubitReducer(const PauliSum& sum, int n_active_electrons)
    : n_(sum.n_qubits()) {
  if (n_ < 3)
    throw std::invalid_argument("two_qubit_reduction: need at least 3 qubits");
  // Total particle parity sits on the last parity qubit; up-spin parity is
  // the prefix-difference chain covering qubits [0, n-2].
  sym_total_z_ = 1ull << (n_ - 1);
  sym_up_z_ = (1ull << (n_ - 1)) - 1;
  for (const auto& [key, coeff] : sum.terms()) {
    const std::uint64_t x = key.first;
    if ((std::popcount(x & sym_total_z_) & 1) || (std::popcount(x & sym_up_z_) & 1))
      throw std::invalid_argument(
          "two_qubit_reduction: input lacks the parity-encoding Z2 symmetries "
          "(expected a parity-mapped sum; Bravyi-Kitaev input is rejected)");
  }
  // Eigenvalues on the encoded closed-shell reference determinant.
  if (n_active_electrons < 0 || n_active_electrons > n_)
    throw std::invalid_argument("two_qubit_reduction: bad electron count");
  const std::uint64_t occ = (n_active_electrons == 64)
                                ? ~0ull
                                : ((1ull << n_active_electrons) - 1);
  const Encoding parity_enc(EncodingScheme::parity, n_);
  const std::uint64_t bits = parity_enc.encode_occupation(occ);
  sector_total_ = (std::popcount(bits & sym_total_z_) & 1) ? -1 : 1;
  sector_up_ = (std::popcount(bits & sym_up_z_) & 1) ? -1 : 1;
}

std::pair<PauliString, double> TwoQubitReducer::reduce_string(const PauliString& in) const {
  if (in.n_qubits != n_)
    throw std::invalid_argument("two_qubit_reduction: width mismatch");
  const int q_total = n_ - 1;
  const int q_up = n_ - 2;
  const std::uint64_t keep = (1ull << q_up) - 1;

  PauliString p = in;
  double c = 1.0;
  // Conjugate by U = (X_pivot + S)/sqrt(2) for each symmetry. A term that
  // commutes with both passes through; one that anticommutes with both flips
  // sign; one that anticommutes with exactly one maps to +-P.X_pivot.S.
  for (const auto& [pivot, z_mask] : {std::pair{q_total, sym_total_z_},
                                      std::pair{q_up, sym_up_z_}}) {
    const PauliString a(1ull << pivot, 0, n_);
    const PauliString s(0, z_mask, n_);
    const bool anti_a = !p.commutes_with(a);
    const bool anti_s = !p.commutes_with(s);
    if (!anti_a && !anti_s) continue;
    if (anti_a && anti_s) {
      c = -c;
      continue;
    }
    PauliProduct pa = pauli_product(p, a);
    PauliProduct pas = pauli_product(pa.string, s);
    const int phase = (pa.phase_exponent + pas.phase_exponent) % 4;
    if (phase == 1 || phase == 3)
      throw std::runtime_error("two_qubit_reduction: complex phase leak");
    double sign = (phase == 2) ? -1.0 : 1.0;
    if (anti_a && !anti_s) sign = -sign;
    p = pas.string;
    c *= sign;
  }
  // Pivot letters are now I or X; substitute the sector eigenvalues.
  if ((p.z >> q_up) & 1 || (p.z >> q_total) & 1)
    throw std::runtime_error("two_qubit_reduction: residual Z on tapered qubit");
  if ((p.x >> q_total) & 1) c *= sector_total_;
  if ((p.x >> q_up) & 1) c *= sector_up_;
  return {PauliString(p.x & keep, p.z & keep, n_ - 2), c};
}

PauliSum TwoQubitReducer::reduce(const PauliSum& sum) const {
  if (sum.n_qubits() != n_)
    throw std::invalid_argument("two_qubit_reduction: width mismatch");
  PauliSum out(n_ - 2);
  out.set_constant(sum.constant());
  for (const auto& [key, coeff] : sum.terms()) {
    auto [reduced, sign] = reduce_string(PauliString(key.first, key.second, n_));
    out.add(reduced, sign * coeff);
  }
  out.prune();
  return out;
}

std::uint64_t TwoQubitReducer::reduce_basis_bits(std::uint64_t parity_bits) const {
  return parity_bits & ((1ull << (n_ - 2)) - 1);
}

PauliSum two_qubit_reduction(const PauliSum& sum, int n_active_electrons) {
  return TwoQubitReducer(sum, n_active_electrons).reduce(sum);
}

// ---------------------------------------------------------------------------
// Resource metrics
// ---------------------------------------------------------------------------

ResourceMetrics resource_metrics(const FermionOperator& fermionic, const PauliSum& sum) {
  ResourceMetrics m;
  m.n_qubits = sum.n_qubits();
  m.n_fermionic_terms = count_terms(fermionic);
  const std::size_t strings = sum.term_count_with_identity();
  m.n_pauli_terms = strings * static_cast<std::size_t>(m.n_qubits);
  m.depth_estimate =
      m.n_qubits > 0 ? (m.n_pauli_terms + m.n_qubits - 1) / m.n_qubits : 0;
  return m;
}

}  // namespace qpes
