#include "qpes/statevector.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qpes {

int Statevector::max_qubits = 24;

Statevector Statevector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t bits) {
  if (n_qubits < 1 || n_qubits > max_qubits)
    throw std::invalid_argument("Statevector: qubit count " + std::to_string(n_qubits) +
                                " outside [1, " + std::to_string(max_qubits) + "]");
  if (bits >> n_qubits)
    throw std::invalid_argument("Statevector: basis index out of range");
  Statevector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(1ull << n_qubits, {0.0, 0.0});
  s.amplitudes[bits] = {1.0, 0.0};
  return s;
}

double Statevector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  return std::sqrt(n2);
}

double Statevector::probability(std::uint64_t bits) const {
  return std::norm(amplitudes.at(bits));
}

Gate Gate::rx(int q, double angle) { return {Kind::rx, q, -1, angle, {}}; }
Gate Gate::ry(int q, double angle) { return {Kind::ry, q, -1, angle, {}}; }
Gate Gate::rz(int q, double angle) { return {Kind::rz, q, -1, angle, {}}; }
Gate Gate::hadamard(int q) { return {Kind::hadamard, q, -1, 0.0, {}}; }
Gate Gate::phase(int q, double angle) { return {Kind::phase, q, -1, angle, {}}; }
Gate Gate::pauli_x(int q) { return {Kind::pauli_x, q, -1, 0.0, {}}; }
Gate Gate::cnot(int control, int target) { return {Kind::cnot, target, control, 0.0, {}}; }
Gate Gate::pauli_rot(const PauliString& p, double angle) {
  return {Kind::pauli_rot, 0, -1, angle, p};
}

namespace {

using Cx = std::complex<double>;

void apply_single_qubit(Statevector& state, int q, Cx u00, Cx u01, Cx u10, Cx u11) {
  if (q < 0 || q >= state.n_qubits)
    throw std::out_of_range("gate qubit index out of range");
  const std::uint64_t bit = 1ull << q;
  const std::uint64_t dim = state.amplitudes.size();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    Cx a0 = state.amplitudes[b];
    Cx a1 = state.amplitudes[b | bit];
    state.amplitudes[b] = u00 * a0 + u01 * a1;
    state.amplitudes[b | bit] = u10 * a0 + u11 * a1;
  }
}

void apply_cnot(Statevector& state, int control, int target) {
  if (control < 0 || control >= state.n_qubits || target < 0 ||
      target >= state.n_qubits || control == target)
    throw std::out_of_range("cnot qubit indices invalid");
  const std::uint64_t cbit = 1ull << control, tbit = 1ull << target;
  const std::uint64_t dim = state.amplitudes.size();
  for (std::uint64_t b = 0; b < dim; ++b)
    if ((b & cbit) && !(b & tbit))
      std::swap(state.amplitudes[b], state.amplitudes[b | tbit]);
}

// exp(-i angle/2 P) via the pairwise (cos, -i sin P) update.
void apply_pauli_exponential(Statevector& state, const PauliString& p, double angle) {
  if (p.n_qubits != state.n_qubits)
    throw std::invalid_argument("pauli_rot: width mismatch");
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  static const Cx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Cx front = phases[std::popcount(p.x & p.z) % 4];  // P = i^{|x&z|} X^x Z^z
  const std::uint64_t dim = state.amplitudes.size();
  if (p.x == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double zsign = (std::popcount(b & p.z) & 1) ? -1.0 : 1.0;
      state.amplitudes[b] *= Cx(c, 0.0) - Cx(0.0, s) * front * zsign;
    }
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t b2 = b ^ p.x;
    if (b2 < b) continue;
    const Cx ph_b = front * ((std::popcount(b & p.z) & 1) ? -1.0 : 1.0);
    const Cx ph_b2 = front * ((std::popcount(b2 & p.z) & 1) ? -1.0 : 1.0);
    const Cx a = state.amplitudes[b], a2 = state.amplitudes[b2];
    // P|b> = ph_b |b2>, P|b2> = ph_b2 |b>
    state.amplitudes[b] = c * a - Cx(0.0, s) * ph_b2 * a2;
    state.amplitudes[b2] = c * a2 - Cx(0.0, s) * ph_b * a;
  }
}

}  // namespace

void apply_gate(Statevector& state, const Gate& gate) {
  const double h = gate.angle / 2;
  switch (gate.kind) {
    case Gate::Kind::rx:
      apply_single_qubit(state, gate.target, {std::cos(h), 0}, {0, -std::sin(h)},
                         {0, -std::sin(h)}, {std::cos(h), 0});
      break;
    case Gate::Kind::ry:
      apply_single_qubit(state, gate.target, {std::cos(h), 0}, {-std::sin(h), 0},
                         {std::sin(h), 0}, {std::cos(h), 0});
      break;
    case Gate::Kind::rz:
      apply_single_qubit(state, gate.target, std::exp(Cx(0, -h)), {0, 0}, {0, 0},
                         std::exp(Cx(0, h)));
      break;
    case Gate::Kind::hadamard: {
      const double r = 1.0 / std::sqrt(2.0);
      apply_single_qubit(state, gate.target, {r, 0}, {r, 0}, {r, 0}, {-r, 0});
      break;
    }
    case Gate::Kind::phase:
      apply_single_qubit(state, gate.target, {1, 0}, {0, 0}, {0, 0},
                         std::exp(Cx(0, gate.angle)));
      break;
    case Gate::Kind::pauli_x:
      apply_single_qubit(state, gate.target, {0, 0}, {1, 0}, {1, 0}, {0, 0});
      break;
    case Gate::Kind::cnot:
      apply_cnot(state, gate.control, gate.target);
      break;
    case Gate::Kind::pauli_rot:
      apply_pauli_exponential(state, gate.pauli, gate.angle);
      break;
  }
}

void apply_circuit_inplace(Statevector& state, const GateSequence& circuit) {
  for (const Gate& g : circuit) apply_gate(state, g);
}

Statevector apply_circuit(const Statevector& state, const GateSequence& circuit) {
  Statevector out = state;
  apply_circuit_inplace(out, circuit);
  return out;
}

CompiledObservable CompiledObservable::compile(const PauliSum& sum) {
  CompiledObservable obs;
  obs.n_qubits = sum.n_qubits();
  obs.constant = sum.constant();
  for (const auto& [p, c] : sum.sorted_terms())
    obs.terms.push_back({p.x, p.z, std::popcount(p.x & p.z) % 4, c});
  return obs;
}

double expectation(const Statevector& state, const CompiledObservable& obs) {
  if (obs.n_qubits != state.n_qubits)
    throw std::invalid_argument("expectation: width mismatch");
  static const Cx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::uint64_t dim = state.amplitudes.size();
  double total = obs.constant;
  for (const auto& t : obs.terms) {
    Cx acc(0.0, 0.0);
    if (t.x == 0) {
      for (std::uint64_t b = 0; b < dim; ++b) {
        const double zsign = (std::popcount(b & t.z) & 1) ? -1.0 : 1.0;
        acc += std::norm(state.amplitudes[b]) * zsign;
      }
    } else {
      for (std::uint64_t b = 0; b < dim; ++b) {
        const double zsign = (std::popcount(b & t.z) & 1) ? -1.0 : 1.0;
        acc += std::conj(state.amplitudes[b ^ t.x]) * state.amplitudes[b] * zsign;
      }
    }
    total += t.coefficient * (phases[t.phase_exponent] * acc).real();
  }
  return total;
}

double expectation(const Statevector& state, const PauliSum& obs) {
  return expectation(state, CompiledObservable::compile(obs));
}

void write_amplitudes(const Statevector& state, std::ostream& out) {
  for (const auto& a : state.amplitudes) {
    const double re = a.real(), im = a.imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof(double));
    out.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
}

}  // namespace qpes
