#include "qpes/integrals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace qpes {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

std::array<std::array<int, 4>, 8> orbit(int p, int q, int r, int s) {
  return {{{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
           {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}}};
}

}  // namespace

MolecularIntegrals::MolecularIntegrals(int n_spatial_orbitals, int n_electrons,
                                       int spin_2ms, double storage_threshold)
    : n_orb_(n_spatial_orbitals), n_elec_(n_electrons), spin_2ms_(spin_2ms),
      threshold_(storage_threshold),
      one_body_(static_cast<std::size_t>(n_spatial_orbitals) * n_spatial_orbitals, 0.0) {
  if (n_orb_ < 1 || n_orb_ > 128)
    throw std::invalid_argument("MolecularIntegrals: orbital count out of range");
  validate();
}

void MolecularIntegrals::validate() const {
  if (n_elec_ < 0 || n_elec_ > 2 * n_orb_)
    throw std::invalid_argument("MolecularIntegrals: electron count exceeds 2 x orbitals");
}

double MolecularIntegrals::one_body(int p, int q) const {
  return one_body_[static_cast<std::size_t>(p) * n_orb_ + q];
}

void MolecularIntegrals::set_one_body(int p, int q, double value) {
  if (p < 0 || p >= n_orb_ || q < 0 || q >= n_orb_)
    throw std::out_of_range("one_body index out of range");
  if (std::abs(value) <= threshold_) value = 0.0;
  one_body_[static_cast<std::size_t>(p) * n_orb_ + q] = value;
  one_body_[static_cast<std::size_t>(q) * n_orb_ + p] = value;
}

std::uint64_t MolecularIntegrals::pack_indices(int p, int q, int r, int s) {
  return (static_cast<std::uint64_t>(p) << 48) | (static_cast<std::uint64_t>(q) << 32) |
         (static_cast<std::uint64_t>(r) << 16) | static_cast<std::uint64_t>(s);
}

void MolecularIntegrals::unpack_indices(std::uint64_t key, int& p, int& q, int& r, int& s) {
  p = static_cast<int>((key >> 48) & 0xffff);
  q = static_cast<int>((key >> 32) & 0xffff);
  r = static_cast<int>((key >> 16) & 0xffff);
  s = static_cast<int>(key & 0xffff);
}

std::uint64_t MolecularIntegrals::canonical_two_body_key(int p, int q, int r, int s) {
  std::uint64_t best = ~0ull;
  for (const auto& t : orbit(p, q, r, s))
    best = std::min(best, pack_indices(t[0], t[1], t[2], t[3]));
  return best;
}

double MolecularIntegrals::two_body(int p, int q, int r, int s) const {
  auto it = two_body_.find(canonical_two_body_key(p, q, r, s));
  return it == two_body_.end() ? 0.0 : it->second;
}

void MolecularIntegrals::set_two_body(int p, int q, int r, int s, double value) {
  for (int i : {p, q, r, s})
    if (i < 0 || i >= n_orb_) throw std::out_of_range("two_body index out of range");
  const std::uint64_t key = canonical_two_body_key(p, q, r, s);
  if (std::abs(value) <= threshold_) {
    two_body_.erase(key);
    return;
  }
  two_body_[key] = value;
}

std::size_t MolecularIntegrals::one_body_nnz(double threshold) const {
  std::size_t n = 0;
  for (double v : one_body_)
    if (std::abs(v) > threshold) ++n;
  return n;
}

std::size_t MolecularIntegrals::two_body_nnz(double threshold) const {
  // Count every distinct index tuple in each stored orbit.
  std::size_t n = 0;
  for (const auto& [key, v] : two_body_) {
    if (std::abs(v) <= threshold) continue;
    int p, q, r, s;
    unpack_indices(key, p, q, r, s);
    std::set<std::uint64_t> members;
    for (const auto& t : orbit(p, q, r, s))
      members.insert(pack_indices(t[0], t[1], t[2], t[3]));
    n += members.size();
  }
  return n;
}

// ---------------------------------------------------------------------------
// FCIDUMP
// ---------------------------------------------------------------------------

namespace {

// Pulls NORB/NELEC/MS2 out of the namelist header, which ends at "&END", "/"
// or "$END". Key=value pairs may span lines and carry arbitrary spacing.
struct Header {
  int norb = -1, nelec = -1, ms2 = 0;
  bool have_norb = false, have_nelec = false;
};

Header parse_header(std::istream& in) {
  std::string header_text;
  std::string line;
  bool terminated = false;
  while (std::getline(in, line)) {
    std::string upper;
    upper.reserve(line.size());
    for (char c : line) upper.push_back(static_cast<char>(std::toupper(c)));
    const auto end_pos = std::min(upper.find("&END"), upper.find("$END"));
    const auto slash_pos = upper.find('/');
    auto stop = std::min(end_pos, slash_pos);
    if (stop != std::string::npos) {
      header_text += upper.substr(0, stop);
      terminated = true;
      break;
    }
    header_text += upper + " ";
  }
  if (!terminated)
    throw std::invalid_argument("parse_fcidump: header namelist never terminated");

  Header h;
  auto grab = [&](const std::string& key, int& out, bool& flag) {
    auto pos = header_text.find(key);
    while (pos != std::string::npos) {
      // Require a non-alphanumeric boundary before the key (avoid matching
      // e.g. ORBSYM when looking for... none collide today, but be strict).
      if (pos == 0 || !std::isalnum(static_cast<unsigned char>(header_text[pos - 1]))) {
        auto eq = header_text.find('=', pos + key.size());
        if (eq == std::string::npos)
          throw std::invalid_argument("parse_fcidump: malformed header near " + key);
        std::size_t idx = eq + 1;
        while (idx < header_text.size() && std::isspace(static_cast<unsigned char>(header_text[idx])))
          ++idx;
        std::size_t len = 0;
        try {
          out = std::stoi(header_text.substr(idx), &len);
        } catch (const std::exception&) {
          throw std::invalid_argument("parse_fcidump: non-numeric value for " + key);
        }
        flag = true;
        return;
      }
      pos = header_text.find(key, pos + 1);
    }
  };
  bool have_ms2 = false;
  grab("NORB", h.norb, h.have_norb);
  grab("NELEC", h.nelec, h.have_nelec);
  grab("MS2", h.ms2, have_ms2);
  if (!h.have_norb) throw std::invalid_argument("parse_fcidump: missing NORB");
  if (!h.have_nelec) throw std::invalid_argument("parse_fcidump: missing NELEC");
  return h;
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in, double threshold) {
  const Header h = parse_header(in);
  MolecularIntegrals ints(h.norb, h.nelec, h.ms2, threshold);

  std::string line;
  std::size_t lineno = 0;
  // Track first-seen values per canonical slot so inconsistent duplicates are
  // detected regardless of which orbit member a file repeats.
  std::unordered_map<std::uint64_t, double> seen_two;
  std::unordered_map<std::uint64_t, double> seen_one;
  bool seen_core = false;
  double core = 0.0;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ls(line);
    double value;
    long i, j, k, l;
    if (!(ls >> value >> i >> j >> k >> l))
      throw std::invalid_argument("parse_fcidump: non-numeric entry at data line " +
                                  std::to_string(lineno) + ": " + line);
    auto check_range = [&](long idx) {
      if (idx < 0 || idx > h.norb)
        throw std::invalid_argument("parse_fcidump: index " + std::to_string(idx) +
                                    " out of range [1, " + std::to_string(h.norb) +
                                    "] at data line " + std::to_string(lineno));
    };
    check_range(i);
    check_range(j);
    check_range(k);
    check_range(l);

    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (seen_core && std::abs(core - value) > kDuplicateTolerance)
        throw std::invalid_argument("parse_fcidump: inconsistent duplicate core energy");
      core = value;
      seen_core = true;
      ints.set_core_energy(value);
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0)
        throw std::invalid_argument("parse_fcidump: bad one-body indices at line " +
                                    std::to_string(lineno));
      const int p = static_cast<int>(i - 1), q = static_cast<int>(j - 1);
      const std::uint64_t key = MolecularIntegrals::pack_indices(std::min(p, q), std::max(p, q), 0, 0);
      auto it = seen_one.find(key);
      if (it != seen_one.end() && std::abs(it->second - value) > kDuplicateTolerance)
        throw std::invalid_argument("parse_fcidump: inconsistent duplicate h(" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      seen_one[key] = value;
      ints.set_one_body(p, q, value);
    } else if (i == 0 || j == 0 || k == 0 || l == 0) {
      throw std::invalid_argument("parse_fcidump: mixed zero/nonzero indices at line " +
                                  std::to_string(lineno));
    } else {
      const int p = static_cast<int>(i - 1), q = static_cast<int>(j - 1);
      const int r = static_cast<int>(k - 1), s = static_cast<int>(l - 1);
      const std::uint64_t key = MolecularIntegrals::canonical_two_body_key(p, q, r, s);
      auto it = seen_two.find(key);
      if (it != seen_two.end() && std::abs(it->second - value) > kDuplicateTolerance)
        throw std::invalid_argument("parse_fcidump: inconsistent duplicate (pq|rs) at line " +
                                    std::to_string(lineno));
      seen_two[key] = value;
      ints.set_two_body(p, q, r, s, value);
    }
  }
  ints.validate();
  return ints;
}

MolecularIntegrals parse_fcidump_file(const std::filesystem::path& path, double threshold) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open integrals file: " + path.string());
  MolecularIntegrals ints = parse_fcidump(in, threshold);
  ints.set_source_label(path.filename().string());
  return ints;
}

void write_fcidump(const MolecularIntegrals& ints, std::ostream& out) {
  const int n = ints.n_spatial_orbitals();
  out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons()
      << ",MS2=" << ints.spin_2ms() << ",\n ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  out << std::scientific << std::setprecision(16);
  std::vector<std::pair<std::uint64_t, double>> two(ints.two_body_entries().begin(),
                                                    ints.two_body_entries().end());
  std::sort(two.begin(), two.end());
  for (const auto& [key, v] : two) {
    int p, q, r, s;
    MolecularIntegrals::unpack_indices(key, p, q, r, s);
    out << std::setw(24) << v << " " << p + 1 << " " << q + 1 << " " << r + 1
        << " " << s + 1 << "\n";
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (std::abs(ints.one_body(p, q)) > ints.storage_threshold())
        out << std::setw(24) << ints.one_body(p, q) << " " << p + 1 << " "
            << q + 1 << " 0 0\n";
  out << std::setw(24) << ints.core_energy() << " 0 0 0 0\n";
}

std::string fcidump_text(const MolecularIntegrals& ints) {
  std::ostringstream os;
  write_fcidump(ints, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// RHF
// ---------------------------------------------------------------------------

double rhf_energy(const MolecularIntegrals& ints) {
  if (ints.n_electrons() % 2 != 0)
    throw std::invalid_argument("rhf_energy: odd electron count (closed shell required)");
  const int n_occ = ints.n_electrons() / 2;
  double e = ints.core_energy();
  for (int i = 0; i < n_occ; ++i) {
    e += 2.0 * ints.one_body(i, i);
    for (int j = 0; j < n_occ; ++j)
      e += 2.0 * ints.two_body(i, i, j, j) - ints.two_body(i, j, j, i);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Geometry manifests
// ---------------------------------------------------------------------------

GeometryManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  GeometryManifest manifest;
  std::string line;
  std::size_t lineno = 0;
  bool any_coord2 = false, any_plain = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    ManifestEntry entry;
    bool have_coord = false, have_path = false;
    while (ls >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("manifest: expected key=value at line " +
                                    std::to_string(lineno));
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      try {
        if (key == "coord") {
          entry.coord = std::stod(value);
          have_coord = true;
        } else if (key == "coord2") {
          entry.coord2 = std::stod(value);
        } else if (key == "path") {
          entry.path = base_dir / value;
          have_path = true;
        } else if (key == "tag") {
          entry.tag = value;
        } else {
          throw std::invalid_argument("manifest: unknown field '" + key + "'");
        }
      } catch (const std::invalid_argument&) {
        throw;
      } catch (const std::exception&) {
        throw std::invalid_argument("manifest: bad value for '" + key + "' at line " +
                                    std::to_string(lineno));
      }
    }
    if (!have_coord && !have_path) continue;  // blank/comment line
    if (!have_coord || !have_path)
      throw std::invalid_argument("manifest: record at line " + std::to_string(lineno) +
                                  " needs both coord and path");
    (entry.coord2 ? any_coord2 : any_plain) = true;
    manifest.entries.push_back(std::move(entry));
  }
  if (any_coord2 && any_plain)
    throw std::invalid_argument("manifest: mixed 1D and 2D entries");
  manifest.scan_kind = any_coord2 ? GeometryManifest::ScanKind::grid2d
                                  : GeometryManifest::ScanKind::one_dimensional;

  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return std::tie(a.coord, a.coord2) < std::tie(b.coord, b.coord2);
            });
  for (std::size_t i = 1; i < manifest.entries.size(); ++i) {
    const auto& a = manifest.entries[i - 1];
    const auto& b = manifest.entries[i];
    if (a.coord == b.coord && a.coord2 == b.coord2 && a.tag == b.tag)
      throw std::invalid_argument("manifest: duplicate coordinate " +
                                  std::to_string(b.coord));
  }
  for (const auto& entry : manifest.entries) {
    if (!std::filesystem::exists(entry.path))
      throw std::invalid_argument("manifest: missing integrals file: " +
                                  entry.path.string());
    parse_fcidump_file(entry.path);  // must parse, not merely exist
  }
  return manifest;
}

GeometryManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  return parse_manifest(in, path.parent_path());
}

}  // namespace qpes
