#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qpes/pauli.hpp"

namespace qpes {

// Dense amplitude vector over 2^n computational basis states. The qubit
// count is capped (default 24, ~256 MiB of complex doubles) because a dense
// representation of the full 48-spin-orbital problem is exactly what the
// active-space machinery exists to avoid.
struct Statevector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  static int max_qubits;  // configurable guardrail

  static Statevector zero_state(int n_qubits);
  static Statevector basis_state(int n_qubits, std::uint64_t bits);

  std::size_t dimension() const { return amplitudes.size(); }
  double norm() const;
  // |amplitude|^2 of one basis state.
  double probability(std::uint64_t bits) const;
};

struct Gate {
  enum class Kind { rx, ry, rz, hadamard, phase, pauli_x, cnot, pauli_rot };

  Kind kind = Kind::pauli_x;
  int target = 0;
  int control = -1;   // cnot only
  double angle = 0.0; // rx/ry/rz: rotation angle; phase: diag(1, e^{i angle})
  PauliString pauli;  // pauli_rot: exp(-i angle/2 P)

  static Gate rx(int q, double angle);
  static Gate ry(int q, double angle);
  static Gate rz(int q, double angle);
  static Gate hadamard(int q);
  static Gate phase(int q, double angle);
  static Gate pauli_x(int q);
  static Gate cnot(int control, int target);
  static Gate pauli_rot(const PauliString& p, double angle);
};

using GateSequence = std::vector<Gate>;

void apply_gate(Statevector& state, const Gate& gate);
void apply_circuit_inplace(Statevector& state, const GateSequence& circuit);
Statevector apply_circuit(const Statevector& state, const GateSequence& circuit);

// Pre-sorted observable for repeated expectation evaluations.
struct CompiledObservable {
  struct Term {
    std::uint64_t x, z;
    int phase_exponent;  // i^k of P(x,z) = i^{|x&z|} X^x Z^z
    double coefficient;
  };
  int n_qubits = 0;
  double constant = 0.0;
  std::vector<Term> terms;

  static CompiledObservable compile(const PauliSum& sum);
};

double expectation(const Statevector& state, const CompiledObservable& obs);
double expectation(const Statevector& state, const PauliSum& obs);

// Raw little-endian (re, im) float64 pairs, amplitude order.
void write_amplitudes(const Statevector& state, std::ostream& out);

}  // namespace qpes
