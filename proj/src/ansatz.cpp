#include "qpes/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qpes {

int AnsatzCircuit::add_parameter(std::string label) {
  labels_.push_back(std::move(label));
  return static_cast<int>(labels_.size()) - 1;
}

void AnsatzCircuit::add_fixed(const Gate& gate) { elements_.push_back({gate, -1, 1.0}); }

void AnsatzCircuit::add_rotation(const Gate& prototype, int param_index, double scale) {
  if (param_index < 0 || param_index >= static_cast<int>(labels_.size()))
    throw std::out_of_range("AnsatzCircuit: parameter index out of range");
  elements_.push_back({prototype, param_index, scale});
}

GateSequence AnsatzCircuit::bind(std::span<const double> params) const {
  if (params.size() != labels_.size())
    throw std::invalid_argument("AnsatzCircuit::bind: expected " +
                                std::to_string(labels_.size()) + " parameters, got " +
                                std::to_string(params.size()));
  GateSequence out;
  out.reserve(elements_.size());
  for (const Element& e : elements_) {
    Gate g = e.gate;
    if (e.param_index >= 0)
      g.angle = e.scale * params[static_cast<std::size_t>(e.param_index)];
    out.push_back(g);
  }
  return out;
}

Statevector hf_state(int n_qubits, int n_electrons, EncodingScheme scheme) {
  if (n_electrons < 0 || n_electrons > n_qubits)
    throw std::invalid_argument("hf_state: electron count exceeds orbitals");
  const std::uint64_t occ =
      n_electrons >= 64 ? ~0ull : ((1ull << n_electrons) - 1);
  const Encoding enc(scheme, n_qubits);
  return Statevector::basis_state(n_qubits, enc.encode_occupation(occ));
}

Statevector hf_state_parity_reduced(int n_spin_orbitals, int n_electrons) {
  const Encoding enc(EncodingScheme::parity, n_spin_orbitals);
  const std::uint64_t occ =
      n_electrons >= 64 ? ~0ull : ((1ull << n_electrons) - 1);
  const std::uint64_t bits = enc.encode_occupation(occ);
  return Statevector::basis_state(n_spin_orbitals - 2,
                                  bits & ((1ull << (n_spin_orbitals - 2)) - 1));
}

UccsdExcitations enumerate_uccsd_excitations(int n_active_spatial, int n_active_electrons) {
  if (n_active_electrons % 2 != 0)
    throw std::invalid_argument("uccsd: closed-shell active space required");
  const int n_occ = n_active_electrons / 2;
  const int n_modes = 2 * n_active_spatial;
  UccsdExcitations out;

  // Spin-conserving singles, one parameter each.
  for (int o = 0; o < n_occ; ++o)
    for (int s = 0; s < 2; ++s)
      for (int v = n_occ; v < n_active_spatial; ++v)
        out.singles.push_back({2 * o + s, 2 * v + s});

  // Spin-conserving doubles; spin-complement pairs share one parameter.
  const auto spin = [](int mode) { return mode & 1; };
  auto is_occ = [&](int mode) { return mode / 2 < n_occ; };
  std::vector<UccsdExcitations::Double> doubles;
  for (int o1 = 0; o1 < n_modes; ++o1)
    for (int o2 = o1 + 1; o2 < n_modes; ++o2) {
      if (!is_occ(o1) || !is_occ(o2)) continue;
      for (int v1 = 0; v1 < n_modes; ++v1)
        for (int v2 = v1 + 1; v2 < n_modes; ++v2) {
          if (is_occ(v1) || is_occ(v2)) continue;
          if (spin(o1) + spin(o2) != spin(v1) + spin(v2)) continue;
          doubles.push_back({o1, o2, v1, v2});
        }
    }
  auto key_of = [](const UccsdExcitations::Double& d) {
    return std::array<int, 4>{d.occ1, d.occ2, d.virt1, d.virt2};
  };
  auto complement = [&](const UccsdExcitations::Double& d) {
    UccsdExcitations::Double c{d.occ1 ^ 1, d.occ2 ^ 1, d.virt1 ^ 1, d.virt2 ^ 1};
    if (c.occ1 > c.occ2) std::swap(c.occ1, c.occ2);
    if (c.virt1 > c.virt2) std::swap(c.virt1, c.virt2);
    return c;
  };
  std::set<std::array<int, 4>> claimed;
  for (const auto& d : doubles) {
    if (claimed.count(key_of(d))) continue;
    const auto c = complement(d);
    claimed.insert(key_of(d));
    if (key_of(c) == key_of(d)) {
      out.double_groups.push_back({d});
    } else {
      claimed.insert(key_of(c));
      out.double_groups.push_back({d, c});
    }
  }
  return out;
}

namespace {

std::string mode_name(int mode) {
  std::ostringstream os;
  os << mode / 2 << (mode % 2 == 0 ? "a" : "b");
  return os.str();
}

}  // namespace

AnsatzCircuit uccsd_ansatz(const ActiveSpaceSelection& sel, EncodingScheme scheme) {
  const int n_spatial = sel.n_active_spatial();
  const int n_qubits = 2 * n_spatial;
  if (sel.n_active_electrons / 2 >= n_spatial)
    throw std::invalid_argument("uccsd: no virtual orbitals in the active window");
  if (sel.n_active_electrons <= 0)
    throw std::invalid_argument("uccsd: no occupied orbitals in the active window");

  const UccsdExcitations exc =
      enumerate_uccsd_excitations(n_spatial, sel.n_active_electrons);
  AnsatzCircuit circuit(n_qubits, AnsatzKind::uccsd);

  auto append_generator = [&](const FermionOperator& t, int param) {
    const PauliSum q = map_excitation_generator(t, scheme);
    for (const auto& [p, c] : q.sorted_terms())
      circuit.add_rotation(Gate::pauli_rot(p, 0.0), param, 2.0 * c);
  };

  for (const auto& s : exc.singles) {
    const int param =
        circuit.add_parameter("s(" + mode_name(s.occ_mode) + "->" + mode_name(s.virt_mode) + ")");
    FermionOperator t(n_qubits);
    t.add_term({{s.virt_mode, true}, {s.occ_mode, false}}, 1.0);
    append_generator(t, param);
  }
  for (const auto& group : exc.double_groups) {
    const auto& d = group.front();
    const int param = circuit.add_parameter(
        "d(" + mode_name(d.occ1) + "," + mode_name(d.occ2) + "->" + mode_name(d.virt1) +
        "," + mode_name(d.virt2) + ")");
    FermionOperator t(n_qubits);
    for (const auto& m : group)
      t.add_term({{m.virt1, true}, {m.virt2, true}, {m.occ2, false}, {m.occ1, false}}, 1.0);
    append_generator(t, param);
  }
  return circuit;
}

AnsatzCircuit hardware_efficient_ansatz(int n_qubits, int layers) {
  if (layers < 1) throw std::invalid_argument("hardware_efficient_ansatz: layers >= 1");
  AnsatzCircuit circuit(n_qubits, AnsatzKind::hardware_efficient);
  auto rotation_layer = [&](int layer) {
    for (int q = 0; q < n_qubits; ++q) {
      const int p = circuit.add_parameter("ry[" + std::to_string(layer) + "," +
                                          std::to_string(q) + "]");
      circuit.add_rotation(Gate::ry(q, 0.0), p, 1.0);
    }
    for (int q = 0; q < n_qubits; ++q) {
      const int p = circuit.add_parameter("rz[" + std::to_string(layer) + "," +
                                          std::to_string(q) + "]");
      circuit.add_rotation(Gate::rz(q, 0.0), p, 1.0);
    }
  };
  rotation_layer(0);
  for (int layer = 1; layer <= layers; ++layer) {
    for (int i = 0; i < n_qubits; ++i)
      for (int j = i + 1; j < n_qubits; ++j) circuit.add_fixed(Gate::cnot(i, j));
    rotation_layer(layer);
  }
  return circuit;
}

AnsatzCircuit reduce_ansatz(const AnsatzCircuit& ansatz, const TwoQubitReducer& reducer) {
  if (ansatz.n_qubits() != reducer.n_qubits_in())
    throw std::invalid_argument("reduce_ansatz: width mismatch");
  AnsatzCircuit out(reducer.n_qubits_out(), ansatz.kind());
  for (const std::string& label : ansatz.parameter_labels()) out.add_parameter(label);
  for (const auto& e : ansatz.elements()) {
    if (e.gate.kind != Gate::Kind::pauli_rot)
      throw std::invalid_argument("reduce_ansatz: only Pauli-rotation circuits reduce");
    auto [p, sign] = reducer.reduce_string(e.gate.pauli);
    if (p.is_identity()) continue;  // global phase
    if (e.param_index < 0)
      out.add_fixed(Gate::pauli_rot(p, sign * e.gate.angle));
    else
      out.add_rotation(Gate::pauli_rot(p, 0.0), e.param_index, sign * e.scale);
  }
  return out;
}

}  // namespace qpes
