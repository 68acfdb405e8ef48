#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpes/integrals.hpp"

namespace qpes {

// One creation/annihilation factor: spin-orbital mode plus dagger flag.
// Spin orbitals interleave spin over spatial orbitals: mode 2p = p-up,
// mode 2p+1 = p-down.
struct LadderOp {
  int mode = 0;
  bool dagger = false;
};

// Normal-ordered product encoded in a single 64-bit key: one byte per factor
// ((mode << 1 | dagger) + 1), daggers first with modes strictly descending,
// then annihilators with modes strictly descending. Key 0 is the identity.
// Electronic-structure strings never exceed four factors; eight fit.
namespace fermion_term {
std::uint64_t encode(const std::vector<LadderOp>& ops);
std::vector<LadderOp> decode(std::uint64_t key);
std::string to_string(std::uint64_t key);
}  // namespace fermion_term

// Weighted sum of normal-ordered ladder strings with real coefficients.
class FermionOperator {
 public:
  static constexpr double prune_threshold = 1e-12;

  FermionOperator() = default;
  explicit FermionOperator(int n_spin_orbitals) : n_modes_(n_spin_orbitals) {}

  int n_spin_orbitals() const { return n_modes_; }
  double constant() const { return constant_; }
  void set_constant(double c) { constant_ = c; }

  // Adds coefficient * (product of ops, given left-to-right). The string is
  // brought to normal order assuming daggers already precede annihilators
  // (true for every construction in this codebase); within each group the
  // factors are sorted descending with the fermionic sign, and strings with
  // a repeated factor vanish.
  void add_term(const std::vector<LadderOp>& ops, double coefficient);

  const std::map<std::uint64_t, double>& terms() const { return terms_; }
  std::size_t stored_term_count() const { return terms_.size(); }

  // Generator-entry count in the resource-accounting convention: one entry
  // per nonzero spin-orbital tensor element of the originating integrals
  // (set by the builders below). Defaults to the stored count.
  std::size_t source_term_count() const {
    return source_count_ ? source_count_ : terms_.size();
  }
  void set_source_term_count(std::size_t n) { source_count_ = n; }

  void prune(double threshold = prune_threshold);

  // Hermiticity scan: every string's conjugate transpose must carry the
  // conjugate (= equal, real) coefficient within tol.
  bool is_hermitian(double tol = 1e-10) const;

  // Particle-number / spin-projection change of each stored string must be
  // zero for an electronic Hamiltonian.
  bool conserves_particle_and_spin() const;

  // Sorted text lines "coeff : string" for debugging / golden tests.
  std::string dump() const;

 private:
  int n_modes_ = 0;
  double constant_ = 0.0;
  std::size_t source_count_ = 0;
  std::map<std::uint64_t, double> terms_;
};

// Full second-quantized electronic Hamiltonian over 2 * n_spatial spin
// orbitals; the operator constant carries the integrals' core energy.
FermionOperator build_hamiltonian(const MolecularIntegrals& ints);

// HOMO/LUMO active-space window around the Fermi level.
struct ActiveSpaceSelection {
  int n_homo = 0;
  int n_lumo = 0;
  int n_active_electrons = 0;
  std::vector<int> active_spatial_indices;
  std::vector<int> frozen_occupied_indices;
  std::vector<int> discarded_virtual_indices;

  int n_active_spatial() const { return static_cast<int>(active_spatial_indices.size()); }
  int n_active_spin_orbitals() const { return 2 * n_active_spatial(); }
  std::string label() const;  // e.g. "2h2l" or "custom-4o4e"

  static ActiveSpaceSelection homo_lumo_window(const MolecularIntegrals& ints,
                                               int n_homo, int n_lumo);
  // Explicit index override (0-based spatial indices); frozen/discarded are
  // derived from the closed-shell occupation of the parent integrals.
  static ActiveSpaceSelection from_indices(const MolecularIntegrals& ints,
                                           std::vector<int> active_indices);
  // "full" selection covering every orbital.
  static ActiveSpaceSelection full_space(const MolecularIntegrals& ints);
};

struct ActiveSpaceHamiltonian {
  FermionOperator op;          // over active spin orbitals, constant = 0
  double core_shift = 0.0;     // add to eigenvalues for total energies
  MolecularIntegrals effective_integrals;  // h-tilde and active (pq|rs), core = 0
};

// Mean-field embedding of the frozen occupied orbitals into effective
// one-body integrals plus a scalar core shift.
ActiveSpaceHamiltonian apply_active_space(const MolecularIntegrals& ints,
                                          const ActiveSpaceSelection& sel);

// Resource-accounting term count (see FermionOperator::source_term_count).
std::size_t count_terms(const FermionOperator& op);

}  // namespace qpes
