#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpes/fermion.hpp"
#include "qpes/pauli.hpp"

namespace qpes {

enum class EncodingScheme { jordan_wigner, parity, bravyi_kitaev };

EncodingScheme encoding_from_name(const std::string& name);
std::string encoding_name(EncodingScheme scheme);

// Per-mode qubit index sets of the generalized fermion-to-qubit transform,
// as bitmasks:
//   a_j   = (c_j + i d_j) / 2,   a+_j = (c_j - i d_j) / 2
//   c_j = X_{update(j)} X_j Z_{parity(j)}
//   d_j = X_{update(j)} Y_j Z_{remainder(j)}
// Jordan-Wigner: update = {}, parity = remainder = [0, j).
// Parity: update = (j, n), parity = {j-1}, remainder = {}.
// Bravyi-Kitaev: Fenwick-tree ancestors / prefix / prefix-minus-children.
class Encoding {
 public:
  Encoding(EncodingScheme scheme, int n_modes);

  EncodingScheme scheme() const { return scheme_; }
  int n_modes() const { return n_; }

  std::uint64_t update_mask(int mode) const { return update_[mode]; }
  std::uint64_t parity_mask(int mode) const { return parity_[mode]; }
  std::uint64_t remainder_mask(int mode) const { return remainder_[mode]; }

  // Basis-state map: qubit q of the encoded string stores the parity of the
  // occupation bits inside its stored interval.
  std::uint64_t encode_occupation(std::uint64_t occupation_bits) const;

 private:
  EncodingScheme scheme_;
  int n_;
  std::vector<std::uint64_t> update_, parity_, remainder_, interval_;
};

// Maps a fermionic operator to a qubit Pauli sum; qubit count equals the
// spin-orbital count. Throws if an imaginary coefficient above 1e-10
// survives (a Hermitian input cannot produce one).
PauliSum map_to_qubits(const FermionOperator& op, EncodingScheme scheme);

// Maps the anti-Hermitian generator T - T+ of a real excitation operator T,
// returned as the Hermitian sum Q with T - T+ = -i Q, so that
// exp(theta (T - T+)) = exp(-i theta Q) = prod_s exp(-i theta c_s P_s).
PauliSum map_excitation_generator(const FermionOperator& t, EncodingScheme scheme);

// Z2-symmetry tapering of the two parity-encoding symmetries (total particle
// parity and up-spin parity). Removes exactly two qubits; the eigensector is
// fixed by the closed-shell occupation of n_active_electrons.
class TwoQubitReducer {
 public:
  // Validates that both symmetries commute with every term of `sum`; throws
  // with a diagnostic otherwise (e.g. for a Bravyi-Kitaev-mapped input).
  TwoQubitReducer(const PauliSum& sum, int n_active_electrons);

  int n_qubits_in() const { return n_; }
  int n_qubits_out() const { return n_ - 2; }
  int sector_total() const { return sector_total_; }
  int sector_up() const { return sector_up_; }

  PauliSum reduce(const PauliSum& sum) const;
  // Conjugates one string through the tapering Cliffords and substitutes the
  // sector eigenvalues; the input must commute with both symmetries.
  std::pair<PauliString, double> reduce_string(const PauliString& in) const;
  // Drops the two tapered qubits from a parity-encoded basis string.
  std::uint64_t reduce_basis_bits(std::uint64_t parity_bits) const;

 private:
  int n_;
  int sector_total_, sector_up_;
  std::uint64_t sym_total_z_, sym_up_z_;
};

PauliSum two_qubit_reduction(const PauliSum& sum, int n_active_electrons);

// Table-style resource accounting. n_pauli_terms counts single-qubit Pauli
// factors (one letter per qubit per weighted string, identity included), so
// depth_estimate = ceil(n_pauli_terms / n_qubits) recovers the number of
// weighted strings: a one-term-per-qubit-per-layer packing model.
struct ResourceMetrics {
  int n_qubits = 0;
  std::size_t n_fermionic_terms = 0;
  std::size_t n_pauli_terms = 0;
  std::size_t depth_estimate = 0;
};

ResourceMetrics resource_metrics(const FermionOperator& fermionic, const PauliSum& sum);

}  // namespace qpes
