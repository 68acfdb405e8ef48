#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qpes {

// An n-qubit Pauli string in symplectic form. Bit q of `x`/`z` set means the
// letter on qubit q has an X / Z component: I=(0,0) X=(1,0) Y=(1,1) Z=(0,1).
// Strings are phaseless; phases show up only in products.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int n_qubits = 0;

  static constexpr int max_qubits = 64;

  PauliString() = default;
  PauliString(std::uint64_t x_mask, std::uint64_t z_mask, int n);

  // Parse from an IXYZ character string, character k = qubit k.
  static PauliString from_label(const std::string& label);

  char letter(int qubit) const;
  std::string label() const;
  bool is_identity() const { return x == 0 && z == 0; }
  int weight() const;  // number of non-identity letters

  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.x == b.x && a.z == b.z && a.n_qubits == b.n_qubits;
  }
};

// a*b = i^phase_exponent * string
struct PauliProduct {
  PauliString string;
  int phase_exponent = 0;  // mod 4
};

PauliProduct pauli_product(const PauliString& a, const PauliString& b);

// Weighted sum of Pauli strings with real coefficients plus an identity
// constant. Electronic-structure observables are Hermitian, so an imaginary
// residue during construction is an error, not a representable state.
class PauliSum {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;  // (x, z)

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.first * 0x9e3779b97f4a7c15ull;
      h ^= k.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  static constexpr double prune_threshold = 1e-12;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  double constant() const { return constant_; }
  void set_constant(double c) { constant_ = c; }

  std::size_t size() const { return terms_.size(); }
  // Term count in the resource-accounting sense: weighted strings plus the
  // identity when its coefficient survives pruning.
  std::size_t term_count_with_identity() const;

  void add(const PauliString& s, double coefficient);
  double coefficient(const PauliString& s) const;
  void scale(double factor);
  void add_scaled(const PauliSum& other, double factor);
  void prune(double threshold = prune_threshold);

  const std::unordered_map<Key, double, KeyHash>& terms() const { return terms_; }

  // Deterministic text dump: one "coefficient  IXYZ" line per term including
  // the identity constant, sorted lexicographically by the letter string.
  std::string dump() const;
  static PauliSum parse_dump(const std::string& text);

  // Terms sorted by (z, x) masks; deterministic iteration order for
  // reductions and tests.
  std::vector<std::pair<PauliString, double>> sorted_terms() const;

 private:
  int n_qubits_ = 0;
  double constant_ = 0.0;
  std::unordered_map<Key, double, KeyHash> terms_;
};

}  // namespace qpes
