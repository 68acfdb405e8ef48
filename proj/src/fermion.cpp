#include "qpes/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qpes {

namespace fermion_term {

std::uint64_t encode(const std::vector<LadderOp>& ops) {
  if (ops.size() > 8)
    throw std::invalid_argument("fermion term: more than 8 factors");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::uint64_t byte =
        ((static_cast<std::uint64_t>(ops[i].mode) << 1) | (ops[i].dagger ? 1u : 0u)) + 1u;
    key |= byte << (8 * i);
  }
  return key;
}

std::vector<LadderOp> decode(std::uint64_t key) {
  std::vector<LadderOp> ops;
  while (key) {
    const std::uint64_t byte = key & 0xffu;
    ops.push_back({static_cast<int>((byte - 1) >> 1), ((byte - 1) & 1u) != 0});
    key >>= 8;
  }
  return ops;
}

std::string to_string(std::uint64_t key) {
  std::ostringstream os;
  bool first = true;
  for (const LadderOp& op : decode(key)) {
    if (!first) os << " ";
    os << op.mode << (op.dagger ? "^" : "");
    first = false;
  }
  return first ? "1" : os.str();
}

}  // namespace fermion_term

void FermionOperator::add_term(const std::vector<LadderOp>& ops, double coefficient) {
  if (ops.empty()) {
    constant_ += coefficient;
    return;
  }
  std::vector<int> create, annihilate;
  bool past_daggers = false;
  for (const LadderOp& op : ops) {
    if (op.mode < 0 || op.mode >= n_modes_)
      throw std::out_of_range("FermionOperator::add_term: mode out of range");
    if (op.dagger) {
      if (past_daggers)
        throw std::invalid_argument(
            "FermionOperator::add_term: expects daggers left of annihilators");
      create.push_back(op.mode);
    } else {
      past_daggers = true;
      annihilate.push_back(op.mode);
    }
  }
  // Sort each group descending, tracking the permutation sign; repeated
  // modes inside one group square a ladder operator to zero.
  int sign = 1;
  auto sort_group = [&sign](std::vector<int>& g) -> bool {
    for (std::size_t i = 1; i < g.size(); ++i)
      for (std::size_t j = i; j > 0 && g[j] > g[j - 1]; --j) {
        std::swap(g[j], g[j - 1]);
        sign = -sign;
      }
    for (std::size_t i = 1; i < g.size(); ++i)
      if (g[i] == g[i - 1]) return false;
    return true;
  };
  if (!sort_group(create) || !sort_group(annihilate)) return;

  std::vector<LadderOp> canonical;
  canonical.reserve(create.size() + annihilate.size());
  for (int m : create) canonical.push_back({m, true});
  for (int m : annihilate) canonical.push_back({m, false});
  const std::uint64_t key = fermion_term::encode(canonical);
  auto [it, inserted] = terms_.try_emplace(key, sign * coefficient);
  if (!inserted) {
    it->second += sign * coefficient;
    if (std::abs(it->second) <= prune_threshold) terms_.erase(it);
  }
}

void FermionOperator::prune(double threshold) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
}

bool FermionOperator::is_hermitian(double tol) const {
  for (const auto& [key, coeff] : terms_) {
    // Conjugate transpose: reverse factor order, flip daggers, re-canonicalize.
    std::vector<LadderOp> ops = fermion_term::decode(key);
    std::reverse(ops.begin(), ops.end());
    for (LadderOp& op : ops) op.dagger = !op.dagger;
    FermionOperator tmp(n_modes_);
    tmp.add_term(ops, 1.0);
    if (tmp.terms_.size() != 1) return false;
    const auto& [ckey, csign] = *tmp.terms_.begin();
    auto it = terms_.find(ckey);
    if (it == terms_.end() || std::abs(it->second - csign * coeff) > tol) return false;
  }
  return true;
}

bool FermionOperator::conserves_particle_and_spin() const {
  for (const auto& [key, coeff] : terms_) {
    int dn = 0, dsz = 0;
    for (const LadderOp& op : fermion_term::decode(key)) {
      const int d = op.dagger ? 1 : -1;
      dn += d;
      dsz += (op.mode % 2 == 0) ? d : -d;
    }
    if (dn != 0 || dsz != 0) return false;
  }
  return true;
}

std::string FermionOperator::dump() const {
  std::ostringstream os;
  os.precision(16);
  if (constant_ != 0.0) os << constant_ << " : 1\n";
  for (const auto& [key, coeff] : terms_)
    os << coeff << " : " << fermion_term::to_string(key) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Hamiltonian construction
// ---------------------------------------------------------------------------

namespace {

void add_two_body_tuple(FermionOperator& op, int p, int q, int r, int s, double g) {
  // 1/2 (pq|rs) sum_{st} a+_{p,s} a+_{r,t} a_{s,t} a_{q,s}
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      op.add_term({{2 * p + s1, true}, {2 * r + s2, true}, {2 * s + s2, false}, {2 * q + s1, false}},
                  0.5 * g);
}

}  // namespace

FermionOperator build_hamiltonian(const MolecularIntegrals& ints) {
  const int n = ints.n_spatial_orbitals();
  FermionOperator op(2 * n);
  op.set_constant(ints.core_energy());

  const double thresh = ints.storage_threshold();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double h = ints.one_body(p, q);
      if (std::abs(h) <= thresh) continue;
      for (int s = 0; s < 2; ++s)
        op.add_term({{2 * p + s, true}, {2 * q + s, false}}, h);
    }

  for (const auto& [key, value] : ints.two_body_entries()) {
    int p, q, r, s;
    MolecularIntegrals::unpack_indices(key, p, q, r, s);
    // Expand the stored orbit to all distinct index tuples.
    std::set<std::uint64_t> seen;
    const std::array<std::array<int, 4>, 8> tuples = {
        {{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
         {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}}};
    for (const auto& t : tuples) {
      const std::uint64_t packed = MolecularIntegrals::pack_indices(t[0], t[1], t[2], t[3]);
      if (!seen.insert(packed).second) continue;
      add_two_body_tuple(op, t[0], t[1], t[2], t[3], value);
    }
  }
  op.prune();
  op.set_source_term_count(2 * ints.one_body_nnz(thresh) + 4 * ints.two_body_nnz(thresh));
  return op;
}

// ---------------------------------------------------------------------------
// Active space
// ---------------------------------------------------------------------------

std::string ActiveSpaceSelection::label() const {
  const int n_act = n_active_spatial();
  if (n_homo + n_lumo == n_act && n_active_electrons == 2 * n_homo) {
    std::ostringstream os;
    os << n_homo << "h" << n_lumo << "l";
    return os.str();
  }
  std::ostringstream os;
  os << "custom-" << n_act << "o" << n_active_electrons << "e";
  return os.str();
}

ActiveSpaceSelection ActiveSpaceSelection::homo_lumo_window(const MolecularIntegrals& ints,
                                                            int n_homo, int n_lumo) {
  if (ints.n_electrons() % 2 != 0)
    throw std::invalid_argument("active space window: closed shell required");
  const int n_occ = ints.n_electrons() / 2;
  const int n_orb = ints.n_spatial_orbitals();
  if (n_homo < 0 || n_lumo < 0 || n_homo > n_occ || n_occ + n_lumo > n_orb)
    throw std::invalid_argument("active space window exceeds available orbitals");
  ActiveSpaceSelection sel;
  sel.n_homo = n_homo;
  sel.n_lumo = n_lumo;
  sel.n_active_electrons = 2 * n_homo;
  for (int i = 0; i < n_occ - n_homo; ++i) sel.frozen_occupied_indices.push_back(i);
  for (int i = n_occ - n_homo; i < n_occ + n_lumo; ++i) sel.active_spatial_indices.push_back(i);
  for (int i = n_occ + n_lumo; i < n_orb; ++i) sel.discarded_virtual_indices.push_back(i);
  return sel;
}

ActiveSpaceSelection ActiveSpaceSelection::from_indices(const MolecularIntegrals& ints,
                                                        std::vector<int> active_indices) {
  if (ints.n_electrons() % 2 != 0)
    throw std::invalid_argument("active space window: closed shell required");
  std::sort(active_indices.begin(), active_indices.end());
  if (std::adjacent_find(active_indices.begin(), active_indices.end()) != active_indices.end())
    throw std::invalid_argument("active space indices: duplicates");
  const int n_orb = ints.n_spatial_orbitals();
  for (int i : active_indices)
    if (i < 0 || i >= n_orb)
      throw std::invalid_argument("active space index out of range");
  const int n_occ = ints.n_electrons() / 2;
  ActiveSpaceSelection sel;
  sel.active_spatial_indices = active_indices;
  for (int i = 0; i < n_orb; ++i) {
    if (std::binary_search(active_indices.begin(), active_indices.end(), i)) continue;
    if (i < n_occ)
      sel.frozen_occupied_indices.push_back(i);
    else
      sel.discarded_virtual_indices.push_back(i);
  }
  sel.n_active_electrons =
      ints.n_electrons() - 2 * static_cast<int>(sel.frozen_occupied_indices.size());
  if (sel.n_active_electrons < 0 ||
      sel.n_active_electrons > 2 * static_cast<int>(active_indices.size()))
    throw std::invalid_argument("active space indices inconsistent with electron count");
  sel.n_homo = sel.n_active_electrons / 2;
  sel.n_lumo = static_cast<int>(active_indices.size()) - sel.n_homo;
  return sel;
}

ActiveSpaceSelection ActiveSpaceSelection::full_space(const MolecularIntegrals& ints) {
  return homo_lumo_window(ints, ints.n_electrons() / 2,
                          ints.n_spatial_orbitals() - ints.n_electrons() / 2);
}

ActiveSpaceHamiltonian apply_active_space(const MolecularIntegrals& ints,
                                          const ActiveSpaceSelection& sel) {
  const auto& act = sel.active_spatial_indices;
  const auto& frozen = sel.frozen_occupied_indices;
  const int n_act = static_cast<int>(act.size());

  MolecularIntegrals eff(n_act, sel.n_active_electrons, ints.spin_2ms(),
                         ints.storage_threshold());
  eff.set_source_label(ints.source_label() + ":" + sel.label());

  double core = ints.core_energy();
  for (int i : frozen) {
    core += 2.0 * ints.one_body(i, i);
    for (int j : frozen)
      core += 2.0 * ints.two_body(i, i, j, j) - ints.two_body(i, j, j, i);
  }

  for (int a = 0; a < n_act; ++a)
    for (int b = a; b < n_act; ++b) {
      double h = ints.one_body(act[a], act[b]);
      for (int i : frozen)
        h += 2.0 * ints.two_body(act[a], act[b], i, i) -
             ints.two_body(act[a], i, i, act[b]);
      eff.set_one_body(a, b, h);
    }
  for (int a = 0; a < n_act; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c <= a; ++c)
        for (int d = 0; d <= (c == a ? b : c); ++d)
          eff.set_two_body(a, b, c, d,
                           ints.two_body(act[a], act[b], act[c], act[d]));

  ActiveSpaceHamiltonian out{build_hamiltonian(eff), core, std::move(eff)};
  out.op.set_constant(0.0);
  return out;
}

std::size_t count_terms(const FermionOperator& op) { return op.source_term_count(); }

}  // namespace qpes
