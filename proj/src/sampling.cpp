#include "qpes/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qpes/rng.hpp"

namespace qpes {

ReadoutNoiseModel ReadoutNoiseModel::uniform(int n_qubits, double p01_, double p10_) {
  ReadoutNoiseModel m;
  m.p01.assign(n_qubits, p01_);
  m.p10.assign(n_qubits, p10_);
  m.validate(n_qubits);
  return m;
}

void ReadoutNoiseModel::validate(int n_qubits) const {
  if (static_cast<int>(p01.size()) != n_qubits || static_cast<int>(p10.size()) != n_qubits)
    throw std::invalid_argument("ReadoutNoiseModel: size mismatch");
  for (int q = 0; q < n_qubits; ++q)
    if (p01[q] < 0.0 || p01[q] >= 0.5 || p10[q] < 0.0 || p10[q] >= 0.5)
      throw std::invalid_argument(
          "ReadoutNoiseModel: flip probabilities must lie in [0, 0.5) for an "
          "invertible confusion matrix");
}

CountsHistogram sample_counts(const Statevector& state, const GateSequence& basis_rotations,
                              std::uint64_t shots,
                              const std::optional<ReadoutNoiseModel>& noise,
                              std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  if (noise) noise->validate(state.n_qubits);
  Statevector rotated = apply_circuit(state, basis_rotations);

  std::vector<double> cdf(rotated.amplitudes.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < cdf.size(); ++b) {
    acc += std::norm(rotated.amplitudes[b]);
    cdf[b] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);  // guard against rounding at the tail

  CounterRng rng(seed, /*stream=*/0x5a);
  CountsHistogram counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t bits = static_cast<std::uint64_t>(it - cdf.begin());
    if (noise) {
      for (int q = 0; q < state.n_qubits; ++q) {
        const bool one = (bits >> q) & 1;
        const double flip_p = one ? noise->p10[q] : noise->p01[q];
        if (rng.bernoulli(flip_p)) bits ^= 1ull << q;
      }
    }
    ++counts[bits];
  }
  return counts;
}

std::vector<double> mitigate_readout(const CountsHistogram& counts,
                                     const ReadoutNoiseModel& noise, int n_qubits) {
  noise.validate(n_qubits);
  std::uint64_t total = 0;
  for (const auto& [bits, c] : counts) total += c;
  if (total == 0) throw std::invalid_argument("mitigate_readout: empty histogram");

  std::vector<double> q(1ull << n_qubits, 0.0);
  for (const auto& [bits, c] : counts) {
    if (bits >> n_qubits)
      throw std::invalid_argument("mitigate_readout: bitstring wider than n_qubits");
    q[bits] = static_cast<double>(c) / static_cast<double>(total);
  }
  // Per-qubit inverse confusion matrix:
  //   A = [[1-p01, p10], [p01, 1-p10]],  A^-1 = 1/det [[1-p10, -p10], [-p01, 1-p01]]
  for (int k = 0; k < n_qubits; ++k) {
    const double det = 1.0 - noise.p01[k] - noise.p10[k];
    const double i00 = (1.0 - noise.p10[k]) / det, i01 = -noise.p10[k] / det;
    const double i10 = -noise.p01[k] / det, i11 = (1.0 - noise.p01[k]) / det;
    const std::uint64_t bit = 1ull << k;
    for (std::uint64_t b = 0; b < q.size(); ++b) {
      if (b & bit) continue;
      const double v0 = q[b], v1 = q[b | bit];
      q[b] = i00 * v0 + i01 * v1;
      q[b | bit] = i10 * v0 + i11 * v1;
    }
  }
  return q;
}

std::vector<MeasurementGroup> group_qubitwise_commuting(const PauliSum& sum) {
  std::vector<MeasurementGroup> groups;
  for (const auto& [p, c] : sum.sorted_terms()) {
    MeasurementGroup* dest = nullptr;
    for (auto& g : groups) {
      bool compatible = true;
      for (int q = 0; q < p.n_qubits && compatible; ++q) {
        const char a = g.basis.letter(q), b = p.letter(q);
        if (a != 'I' && b != 'I' && a != b) compatible = false;
      }
      if (compatible) {
        dest = &g;
        break;
      }
    }
    if (!dest) {
      groups.push_back({{}, PauliString(0, 0, sum.n_qubits()), {}});
      dest = &groups.back();
    }
    dest->terms.emplace_back(p, c);
    dest->basis.x |= p.x;
    dest->basis.z |= p.z;
  }
  for (auto& g : groups) {
    for (int q = 0; q < g.basis.n_qubits; ++q) {
      switch (g.basis.letter(q)) {
        case 'X':
          g.rotations.push_back(Gate::hadamard(q));
          break;
        case 'Y':
          // S-dagger then H sends Y to Z.
          g.rotations.push_back(Gate::phase(q, -M_PI / 2));
          g.rotations.push_back(Gate::hadamard(q));
          break;
        default:
          break;
      }
    }
  }
  return groups;
}

EnergyEstimate sampled_energy(const Statevector& state, const PauliSum& h,
                              std::uint64_t shots, std::uint64_t seed,
                              const std::optional<ReadoutNoiseModel>& noise,
                              bool mitigate) {
  const auto groups = group_qubitwise_commuting(h);
  EnergyEstimate est;
  est.value = h.constant();
  est.shots = shots;
  if (groups.empty()) return est;

  const std::uint64_t per_group = std::max<std::uint64_t>(1, shots / groups.size());
  double variance_total = 0.0;

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    // Per-bitstring weight of this group after rotation to the Z basis.
    const std::uint64_t dim = 1ull << h.n_qubits();
    std::vector<double> w(dim, 0.0);
    for (std::uint64_t b = 0; b < dim; ++b) {
      double v = 0.0;
      for (const auto& [p, c] : g.terms) {
        const std::uint64_t mask = p.x | p.z;  // support measures as Z after rotation
        v += c * ((std::popcount(b & mask) & 1) ? -1.0 : 1.0);
      }
      w[b] = v;
    }
    if (mitigate && noise) {
      // E_b~p_hat [ (A^-T w)(b) ] equals sum_b w(b) (A^-1 p_hat)(b).
      for (int k = 0; k < h.n_qubits(); ++k) {
        const double det = 1.0 - noise->p01[k] - noise->p10[k];
        const double i00 = (1.0 - noise->p10[k]) / det, i10 = -noise->p01[k] / det;
        const double i01 = -noise->p10[k] / det, i11 = (1.0 - noise->p01[k]) / det;
        const std::uint64_t bit = 1ull << k;
        for (std::uint64_t b = 0; b < dim; ++b) {
          if (b & bit) continue;
          const double v0 = w[b], v1 = w[b | bit];
          // transpose of the inverse
          w[b] = i00 * v0 + i10 * v1;
          w[b | bit] = i01 * v0 + i11 * v1;
        }
      }
    }
    const CountsHistogram counts =
        sample_counts(state, g.rotations, per_group, noise, seed + 0x9e37 * (gi + 1));
    double sum_w = 0.0, sum_w2 = 0.0;
    std::uint64_t n = 0;
    for (const auto& [bits, c] : counts) {
      sum_w += w[bits] * static_cast<double>(c);
      sum_w2 += w[bits] * w[bits] * static_cast<double>(c);
      n += c;
    }
    const double mean = sum_w / static_cast<double>(n);
    const double var = std::max(0.0, sum_w2 / static_cast<double>(n) - mean * mean);
    est.value += mean;
    variance_total += var / static_cast<double>(n);
  }
  est.std_error = std::sqrt(variance_total);
  return est;
}

}  // namespace qpes
