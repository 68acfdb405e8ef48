#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpes/encoding.hpp"
#include "qpes/fermion.hpp"
#include "qpes/statevector.hpp"

namespace qpes {

enum class AnsatzKind { uccsd, hardware_efficient };

// Parameterized circuit template. Binding a parameter vector instantiates a
// concrete gate sequence: element angle = scale * theta[param_index], or a
// fixed gate when param_index < 0. The all-zeros vector acts as the identity
// on the reference state.
class AnsatzCircuit {
 public:
  struct Element {
    Gate gate;
    int param_index = -1;
    double scale = 1.0;
  };

  AnsatzCircuit(int n_qubits, AnsatzKind kind) : n_qubits_(n_qubits), kind_(kind) {}

  int n_qubits() const { return n_qubits_; }
  AnsatzKind kind() const { return kind_; }
  std::size_t parameter_count() const { return labels_.size(); }
  const std::vector<std::string>& parameter_labels() const { return labels_; }
  const std::vector<Element>& elements() const { return elements_; }

  int add_parameter(std::string label);
  void add_fixed(const Gate& gate);
  void add_rotation(const Gate& prototype, int param_index, double scale);

  GateSequence bind(std::span<const double> params) const;

 private:
  int n_qubits_;
  AnsatzKind kind_;
  std::vector<std::string> labels_;
  std::vector<Element> elements_;
};

// Computational-basis state of the lowest-orbital closed-shell determinant
// under the chosen encoding.
Statevector hf_state(int n_qubits, int n_electrons, EncodingScheme scheme);
// Parity-encoded reference with the two tapered qubits removed.
Statevector hf_state_parity_reduced(int n_spin_orbitals, int n_electrons);

// Trotterized UCCSD over the active window: one parameter per spin-conserving
// single excitation and per spin-complement double-excitation pair.
AnsatzCircuit uccsd_ansatz(const ActiveSpaceSelection& sel, EncodingScheme scheme);

// Enumerations backing the parameter layout (exposed for tests).
struct UccsdExcitations {
  struct Single {
    int occ_mode, virt_mode;
  };
  struct Double {
    int occ1, occ2, virt1, virt2;  // spin-orbital modes, occ1<occ2, virt1<virt2
  };
  std::vector<Single> singles;
  std::vector<std::vector<Double>> double_groups;  // complement pairs share a slot
};
UccsdExcitations enumerate_uccsd_excitations(int n_active_spatial, int n_active_electrons);

// Alternating RY+RZ rotation layers with all-to-all CNOT entanglers between
// them; `layers` entangling blocks, 2*n_qubits parameters per rotation layer
// plus the initial layer.
AnsatzCircuit hardware_efficient_ansatz(int n_qubits, int layers);

// Rewrites a UCCSD circuit for the two-qubit-reduced register by tapering
// every Pauli-rotation generator through the same symmetry reduction.
AnsatzCircuit reduce_ansatz(const AnsatzCircuit& ansatz, const TwoQubitReducer& reducer);

}  // namespace qpes
