#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qpes {

// MO-basis one- and two-electron integrals for one geometry, as carried by an
// FCIDUMP file. Two-electron integrals are chemists' notation (pq|rs), stored
// once per 8-fold-symmetry orbit above the magnitude threshold. Immutable
// after construction.
class MolecularIntegrals {
 public:
  MolecularIntegrals(int n_spatial_orbitals, int n_electrons, int spin_2ms,
                     double storage_threshold = 1e-12);

  int n_spatial_orbitals() const { return n_orb_; }
  int n_electrons() const { return n_elec_; }
  int spin_2ms() const { return spin_2ms_; }
  double core_energy() const { return core_energy_; }
  double storage_threshold() const { return threshold_; }
  const std::string& source_label() const { return source_label_; }

  void set_core_energy(double e) { core_energy_ = e; }
  void set_source_label(std::string label) { source_label_ = std::move(label); }

  // 0-based orbital indices.
  double one_body(int p, int q) const;
  double two_body(int p, int q, int r, int s) const;  // (pq|rs)
  void set_one_body(int p, int q, double value);
  void set_two_body(int p, int q, int r, int s, double value);

  // Nonzero entries (|v| > threshold) counted over the fully expanded
  // tensors, i.e. every index permutation of a stored orbit counts.
  std::size_t one_body_nnz(double threshold) const;
  std::size_t two_body_nnz(double threshold) const;

  // Stored canonical entries: (packed key, value). Keys decode via
  // unpack_two_body_key.
  const std::unordered_map<std::uint64_t, double>& two_body_entries() const {
    return two_body_;
  }
  const std::vector<double>& one_body_matrix() const { return one_body_; }

  static std::uint64_t pack_indices(int p, int q, int r, int s);
  static void unpack_indices(std::uint64_t key, int& p, int& q, int& r, int& s);
  static std::uint64_t canonical_two_body_key(int p, int q, int r, int s);

  // Checks the type invariants (h symmetry is structural here; electron
  // count bound is validated). Throws on violation.
  void validate() const;

 private:
  int n_orb_;
  int n_elec_;
  int spin_2ms_;
  double core_energy_ = 0.0;
  double threshold_;
  std::string source_label_;
  std::vector<double> one_body_;                           // dense n x n
  std::unordered_map<std::uint64_t, double> two_body_;     // canonical orbit keys
};

// FCIDUMP interchange: namelist header (NORB, NELEC, MS2) followed by
// "value i j k l" lines with 1-based indices; `i j 0 0` is one-body and
// `0 0 0 0` the core energy.
MolecularIntegrals parse_fcidump(std::istream& in, double threshold = 1e-12);
MolecularIntegrals parse_fcidump_file(const std::filesystem::path& path,
                                      double threshold = 1e-12);
void write_fcidump(const MolecularIntegrals& ints, std::ostream& out);
std::string fcidump_text(const MolecularIntegrals& ints);

// Closed-shell mean-field energy evaluated directly in the converged MO
// basis: core + 2 sum_i h_ii + sum_ij [2(ii|jj) - (ij|ji)] over the lowest
// n_electrons/2 orbitals.
double rhf_energy(const MolecularIntegrals& ints);

// One record of a geometry series.
struct ManifestEntry {
  double coord = 0.0;
  std::optional<double> coord2;
  std::filesystem::path path;   // resolved relative to the manifest file
  std::string tag;              // optional: complex | gas | ion | site | cell
};

struct GeometryManifest {
  enum class ScanKind { one_dimensional, grid2d };
  ScanKind scan_kind = ScanKind::one_dimensional;
  std::vector<ManifestEntry> entries;  // sorted by coordinate(s)
};

// Manifest text: one "coord=<v> [coord2=<v>] path=<p> [tag=<t>]" record per
// line, '#' comments. Referenced files must exist and parse.
GeometryManifest load_manifest(const std::filesystem::path& path);
GeometryManifest parse_manifest(std::istream& in,
                                const std::filesystem::path& base_dir);

}  // namespace qpes
