#include "qpes/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace qpes {

PauliString::PauliString(std::uint64_t x_mask, std::uint64_t z_mask, int n)
    : x(x_mask), z(z_mask), n_qubits(n) {
  if (n < 0 || n > max_qubits)
    throw std::invalid_argument("PauliString: qubit count out of range: " + std::to_string(n));
  if (n < max_qubits) {
    const std::uint64_t allowed = (1ull << n) - 1;
    if ((x & ~allowed) || (z & ~allowed))
      throw std::invalid_argument("PauliString: mask exceeds qubit count");
  }
}

PauliString PauliString::from_label(const std::string& label) {
  PauliString s;
  s.n_qubits = static_cast<int>(label.size());
  if (s.n_qubits > max_qubits)
    throw std::invalid_argument("PauliString: label too long");
  for (int q = 0; q < s.n_qubits; ++q) {
    switch (label[static_cast<std::size_t>(q)]) {
      case 'I': break;
      case 'X': s.x |= 1ull << q; break;
      case 'Y': s.x |= 1ull << q; s.z |= 1ull << q; break;
      case 'Z': s.z |= 1ull << q; break;
      default:
        throw std::invalid_argument(std::string("PauliString: bad letter '") +
                                    label[static_cast<std::size_t>(q)] + "'");
    }
  }
  return s;
}

char PauliString::letter(int qubit) const {
  const bool bx = (x >> qubit) & 1, bz = (z >> qubit) & 1;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

std::string PauliString::label() const {
  std::string out(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) out[static_cast<std::size_t>(q)] = letter(q);
  return out;
}

int PauliString::weight() const { return std::popcount(x | z); }

bool PauliString::commutes_with(const PauliString& other) const {
  // Strings commute iff the symplectic form <a,b> = |x_a&z_b| + |z_a&x_b|
  // is even.
  return ((std::popcount(x & other.z) + std::popcount(z & other.x)) & 1) == 0;
}

PauliProduct pauli_product(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("pauli_product: width mismatch");
  PauliProduct out;
  out.string.x = a.x ^ b.x;
  out.string.z = a.z ^ b.z;
  out.string.n_qubits = a.n_qubits;
  // With the convention P(x,z) = i^{|x&z|} X^x Z^z, collecting the phase of
  // X^{xa}Z^{za} X^{xb}Z^{zb} gives i-exponent:
  //   |xa&za| + |xb&zb| + 2|za&xb| - |xc&zc|   (mod 4)
  int g = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
          2 * std::popcount(a.z & b.x) - std::popcount(out.string.x & out.string.z);
  out.phase_exponent = ((g % 4) + 4) % 4;
  return out;
}

std::size_t PauliSum::term_count_with_identity() const {
  return terms_.size() + (std::abs(constant_) > prune_threshold ? 1 : 0);
}

void PauliSum::add(const PauliString& s, double coefficient) {
  if (s.n_qubits != n_qubits_)
    throw std::invalid_argument("PauliSum::add: width mismatch");
  if (s.is_identity()) {
    constant_ += coefficient;
    return;
  }
  auto [it, inserted] = terms_.try_emplace({s.x, s.z}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (std::abs(it->second) <= prune_threshold) terms_.erase(it);
  }
}

double PauliSum::coefficient(const PauliString& s) const {
  if (s.is_identity()) return constant_;
  auto it = terms_.find({s.x, s.z});
  return it == terms_.end() ? 0.0 : it->second;
}

void PauliSum::scale(double factor) {
  constant_ *= factor;
  for (auto& [k, v] : terms_) v *= factor;
}

void PauliSum::add_scaled(const PauliSum& other, double factor) {
  if (other.n_qubits_ != n_qubits_)
    throw std::invalid_argument("PauliSum::add_scaled: width mismatch");
  constant_ += factor * other.constant_;
  for (const auto& [k, v] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, factor * v);
    if (!inserted) {
      it->second += factor * v;
      if (std::abs(it->second) <= prune_threshold) terms_.erase(it);
    }
  }
}

void PauliSum::prune(double threshold) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  if (std::abs(constant_) <= threshold) constant_ = 0.0;
}

std::vector<std::pair<PauliString, double>> PauliSum::sorted_terms() const {
  std::vector<std::pair<PauliString, double>> out;
  out.reserve(terms_.size());
  for (const auto& [k, v] : terms_)
    out.emplace_back(PauliString(k.first, k.second, n_qubits_), v);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.z, a.first.x) < std::tie(b.first.z, b.first.x);
  });
  return out;
}

std::string PauliSum::dump() const {
  std::vector<std::pair<std::string, double>> lines;
  lines.reserve(terms_.size() + 1);
  if (std::abs(constant_) > prune_threshold)
    lines.emplace_back(std::string(static_cast<std::size_t>(n_qubits_), 'I'), constant_);
  for (const auto& [k, v] : terms_)
    lines.emplace_back(PauliString(k.first, k.second, n_qubits_).label(), v);
  std::sort(lines.begin(), lines.end());
  std::ostringstream os;
  os.precision(16);
  for (const auto& [label, coeff] : lines) os << coeff << "  " << label << "\n";
  return os.str();
}

PauliSum PauliSum::parse_dump(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  PauliSum sum;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double coeff;
    std::string label;
    if (!(ls >> coeff >> label))
      throw std::invalid_argument("PauliSum::parse_dump: bad line: " + line);
    PauliString s = PauliString::from_label(label);
    if (first) {
      sum = PauliSum(s.n_qubits);
      first = false;
    }
    sum.add(s, coeff);
  }
  return sum;
}

}  // namespace qpes
