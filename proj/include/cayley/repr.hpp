#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/group.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

/// Left regular representation: rho(g) e_h = e_{gh}.
///
/// rho(g) is never stored densely; `perm(g)[h]` is the row holding the unit
/// entry of column h.
class RegularRep {
 public:
  explicit RegularRep(const FiniteGroup& group) : group_(&group) {}

  const FiniteGroup& group() const noexcept { return *group_; }
  int dim() const noexcept { return group_->order(); }
  std::span<const Element> perm(Element g) const { return group_->row(g); }

  /// Dense rho(g), for tests and small explicit constructions.
  RealMatrix matrix(Element g) const;

 private:
  const FiniteGroup* group_;
};

struct IrrepSpectrum {
  std::string group;
  std::vector<int> degrees;  // sorted ascending

  long long sum_of_squares() const;
  int count_linear() const;
  /// Number of degrees strictly below `threshold`.
  int count_below(double threshold) const;
};

bool operator==(const IrrepSpectrum& a, const IrrepSpectrum& b);

/// C_K = sum of rho(g) over g in K. Throws ValidationError unless `cls` is
/// exactly one conjugacy class.
RealMatrix class_sum_matrix(const RegularRep& rep, std::span<const Element> cls);

struct IrrepOptions {
  // Eigenvalue clustering threshold, times spectral radius; capped at
  // 1e-2 / k^2 for k conjugacy classes.
  double relative_gap = 1e-6;
  int retries = 5;
};

/// Irreducible degrees from the eigenvalue multiplicities of a random
/// Hermitian central element of the group algebra. Groups with as many
/// classes as elements return all ones without an eigensolve. Throws
/// ValidationError if no draw passes the spectrum invariants within
/// `retries` redraws.
IrrepSpectrum irrep_degrees(const RegularRep& rep, std::uint64_t seed, const IrrepOptions& options = {});

/// S = sum_g rho(g^2), as an integer matrix.
Eigen::MatrixXi s_matrix(const RegularRep& rep);

/// Throws ValidationError if a spectrum is inconsistent with its group.
void check_spectrum(const FiniteGroup& group, const IrrepSpectrum& spectrum);

nlohmann::json to_json(const IrrepSpectrum& spectrum);
IrrepSpectrum spectrum_from_json(const nlohmann::json& doc);

/// On-disk cache of spectra keyed by group name. Cached entries are
/// re-checked against the group before use.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  IrrepSpectrum get(const RegularRep& rep, std::uint64_t seed = 0) const;

 private:
  std::filesystem::path file_for(const std::string& group_name) const;
  std::optional<std::filesystem::path> dir_;
};

}  // namespace cayley
