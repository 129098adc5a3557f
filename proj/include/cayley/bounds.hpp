#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/group.hpp"
#include "cayley/repr.hpp"
#include "cayley/sampler.hpp"

namespace cayley {

inline constexpr int kSigmaDimensionCap = 256;
inline constexpr int kCovarianceDilatedCap = 64;

/// sigma(X) = ||sum_i A~_i^2||^{1/2}. Exactly sqrt(n) for Cayley series.
double sigma_of(const GaussianSeries& series);

/// v(X) = ||Cov(X)||^{1/2} with Cov_{ij,kl} = E[X_ij conj(X_kl)]. Exactly
/// sqrt(2n) for Cayley series (which enter dilated); explicit families are
/// dilated according to their Dilation setting.
double v_of(const GaussianSeries& series);

/// f(s) = s + sum_pi d_pi^{-1/2} exp(-d_pi s^2 / 2).
double m_objective(const std::vector<int>& degrees, double s);

struct MOfGroup {
  double value = 0.0;
  double s_star = 0.0;
};

/// inf_{s >= 0} f(s) by a 10^4-point grid on [0, sqrt(2 ln n) + 2] followed
/// by golden-section refinement around the best cell. f can have more than
/// one local minimum, so the grid is mandatory.
MOfGroup m_of_group(const IrrepSpectrum& spectrum);

struct WCertificate {
  double value = 0.0;   // (n ||S||)^{1/4}
  double s_norm = 0.0;  // achieved ||S||
};

/// Lower-bound certificate for the alignment parameter w of X~_G. Throws std::logic_error if
/// ||S|| differs from n by more than 1e-8 relative.
WCertificate w_certificate(const RegularRep& rep);

struct SmallDegreeCount {
  double epsilon = 0.0;
  int count = 0;  // |{pi : d_pi < epsilon ln n}|
};

struct BoundsReport {
  std::string group;
  int n = 0;
  double sigma = 0.0;
  double v = 0.0;
  double w_certificate = 0.0;
  double s_norm = 0.0;
  double m_of_g = 0.0;
  double s_star = 0.0;
  double nck_lower = 0.0;
  double nck_upper = 0.0;  // sigma * sqrt(ln 2n)
  std::vector<SmallDegreeCount> small_degrees;
};

std::vector<SmallDegreeCount> small_degree_counts(const IrrepSpectrum& spectrum, int n);

BoundsReport bounds_report(const FiniteGroup& group, const IrrepSpectrum& spectrum);

nlohmann::json to_json(const BoundsReport& report);
std::string csv_header_bounds();
std::string to_csv_row(const BoundsReport& report);

}  // namespace cayley
