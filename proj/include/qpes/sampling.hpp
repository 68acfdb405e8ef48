#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qpes/pauli.hpp"
#include "qpes/statevector.hpp"

namespace qpes {

// Independent per-qubit readout flips: p01[q] = P(read 1 | true 0),
// p10[q] = P(read 0 | true 1). Both below 0.5 keeps the per-qubit confusion
// matrix invertible.
struct ReadoutNoiseModel {
  std::vector<double> p01;
  std::vector<double> p10;

  static ReadoutNoiseModel uniform(int n_qubits, double p01, double p10);
  void validate(int n_qubits) const;
};

using CountsHistogram = std::map<std::uint64_t, std::uint64_t>;

// Multinomial draw from the post-rotation measurement distribution; noise
// flips each readout bit independently. Seeded and bit-reproducible.
CountsHistogram sample_counts(const Statevector& state, const GateSequence& basis_rotations,
                              std::uint64_t shots,
                              const std::optional<ReadoutNoiseModel>& noise,
                              std::uint64_t seed);

// Inverse tensor-product confusion matrix applied to the empirical
// distribution; returns a quasi-probability vector over all 2^n bitstrings.
std::vector<double> mitigate_readout(const CountsHistogram& counts,
                                     const ReadoutNoiseModel& noise, int n_qubits);

// Qubit-wise commuting measurement groups by greedy first-fit coloring over
// the deterministic term order.
struct MeasurementGroup {
  std::vector<std::pair<PauliString, double>> terms;
  PauliString basis;        // per-qubit letter commitment (I where free)
  GateSequence rotations;   // maps the group basis to the Z basis
};

std::vector<MeasurementGroup> group_qubitwise_commuting(const PauliSum& sum);

struct EnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
};

// Shot-based energy estimate of <state|H|state>: shots are split evenly over
// the measurement groups; with noise present the estimator optionally applies
// confusion-matrix inversion. The standard error is the exact sample
// statistic of the per-shot estimator (mitigation inflation included).
EnergyEstimate sampled_energy(const Statevector& state, const PauliSum& h,
                              std::uint64_t shots, std::uint64_t seed,
                              const std::optional<ReadoutNoiseModel>& noise,
                              bool mitigate);

}  // namespace qpes
