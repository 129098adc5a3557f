#include "cayley/bounds.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "cayley/errors.hpp"
#include "cayley/format.hpp"

namespace cayley {
namespace {

constexpr int kGridPoints = 10000;
constexpr double kTightTolerance = 1e-12;

double tight_norm(const RealMatrix& a) {
  NormOptions options;
  options.tolerance = kTightTolerance;
  return spectral_norm_detailed(as_operator(a), options).norm;
}

double tight_norm(const ComplexMatrix& a) {
  NormOptions options;
  options.tolerance = kTightTolerance;
  return spectral_norm_detailed(as_operator(a), options).norm;
}

bool needs_dilation(const GaussianSeries& series) {
  switch (series.dilation) {
    case Dilation::always: return true;
    case Dilation::never: return false;
    case Dilation::automatic:
      for (const auto& a : series.coefficients) {
        if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 0.0) return true;
      }
      return false;
  }
  return true;
}

template <typename Matrix>
double covariance_norm(const std::vector<ComplexMatrix>& family, bool dilated) {
  using Scalar = typename Matrix::Scalar;
  const Eigen::Index d = family.front().rows() * (dilated ? 2 : 1);
  const Eigen::Index entries = d * d;
  Matrix cov = Matrix::Zero(entries, entries);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flat(entries);
  for (const auto& a : family) {
    const ComplexMatrix b = dilated ? dilate(a) : a;
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        if constexpr (std::is_same_v<Scalar, double>) {
          flat(i + d * j) = b(i, j).real();
        } else {
          flat(i + d * j) = b(i, j);
        }
      }
    // Cov_{ij,kl} += B_ij conj(B_kl); only nonzero entries contribute.
    for (Eigen::Index c = 0; c < entries; ++c) {
      if (flat(c) == Scalar{}) continue;
      const Scalar right = [&] {
        if constexpr (std::is_same_v<Scalar, double>) {
          return flat(c);
        } else {
          return std::conj(flat(c));
        }
      }();
      cov.col(c) += flat * right;
    }
  }
  return tight_norm(cov);
}

}  // namespace

double sigma_of(const GaussianSeries& series) {
  if (series.is_cayley()) return std::sqrt(static_cast<double>(series.group->order()));
  const Eigen::Index d = series.dim();
  if (d > kSigmaDimensionCap) {
    throw ValidationError("sigma_of: dimension " + std::to_string(d) + " exceeds cap " +
                          std::to_string(kSigmaDimensionCap));
  }
  ComplexMatrix sum = ComplexMatrix::Zero(2 * d, 2 * d);
  for (const auto& a : series.coefficients) {
    const ComplexMatrix t = dilate(a);
    sum.noalias() += t * t;
  }
  return std::sqrt(tight_norm(sum));
}

double v_of(const GaussianSeries& series) {
  if (series.is_cayley()) return std::sqrt(2.0 * series.group->order());
  const bool dilated = needs_dilation(series);
  const Eigen::Index d = series.dim() * (dilated ? 2 : 1);
  if (d > kCovarianceDilatedCap) {
    throw ValidationError("v_of: covariance dimension " + std::to_string(d) + " exceeds cap " +
                          std::to_string(kCovarianceDilatedCap));
  }
  bool real = true;
  for (const auto& a : series.coefficients) real = real && a.imag().cwiseAbs().maxCoeff() == 0.0;
  const double norm = real ? covariance_norm<RealMatrix>(series.coefficients, dilated)
                           : covariance_norm<ComplexMatrix>(series.coefficients, dilated);
  return std::sqrt(norm);
}

double m_objective(const std::vector<int>& degrees, double s) {
  double total = s;
  for (int d : degrees) total += std::exp(-0.5 * d * s * s) / std::sqrt(static_cast<double>(d));
  return total;
}

MOfGroup m_of_group(const IrrepSpectrum& spectrum) {
  if (spectrum.degrees.empty()) throw ValidationError("m_of_group: empty degree multiset");
  std::map<int, int> multiplicity;
  for (int d : spectrum.degrees) ++multiplicity[d];
  auto f = [&](double s) {
    double total = s;
    for (const auto& [d, count] : multiplicity) {
      total += count * std::exp(-0.5 * d * s * s) / std::sqrt(static_cast<double>(d));
    }
    return total;
  };

  const double n = static_cast<double>(spectrum.sum_of_squares());
  const double upper = std::sqrt(2.0 * std::log(n)) + 2.0;
  const double step = upper / (kGridPoints - 1);
  int best = 0;
  double best_value = f(0.0);
  for (int i = 1; i < kGridPoints; ++i) {
    const double value = f(i * step);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }

  // Golden-section search on the bracketing cells.
  double lo = std::max(0.0, (best - 1) * step);
  double hi = std::min(upper, (best + 1) * step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  MOfGroup out{best_value, best * step};
  for (double s : {lo, hi, 0.5 * (lo + hi)}) {
    const double value = f(s);
    if (value < out.value) out = {value, s};
  }
  return out;
}

WCertificate w_certificate(const RegularRep& rep) {
  const double n = rep.dim();
  const double s_norm = tight_norm(RealMatrix(s_matrix(rep).cast<double>()));
  if (std::abs(s_norm - n) > 1e-8 * n) {
    throw std::logic_error("w_certificate: ||S|| = " + format_double(s_norm) + " differs from n = " +
                           format_double(n));
  }
  return {std::pow(n * s_norm, 0.25), s_norm};
}

std::vector<SmallDegreeCount> small_degree_counts(const IrrepSpectrum& spectrum, int n) {
  std::vector<SmallDegreeCount> out;
  for (double eps : {0.25, 0.5, 1.0}) {
    out.push_back({eps, spectrum.count_below(eps * std::log(static_cast<double>(n)))});
  }
  return out;
}

BoundsReport bounds_report(const FiniteGroup& group, const IrrepSpectrum& spectrum) {
  check_spectrum(group, spectrum);
  const RegularRep rep(group);
  const auto series = GaussianSeries::real_cayley(group);
  BoundsReport report;
  report.group = group.name();
  report.n = group.order();
  report.sigma = sigma_of(series);
  report.v = v_of(series);
  const WCertificate w = w_certificate(rep);
  report.w_certificate = w.value;
  report.s_norm = w.s_norm;
  const MOfGroup m = m_of_group(spectrum);
  report.m_of_g = m.value;
  report.s_star = m.s_star;
  report.nck_lower = report.sigma;
  report.nck_upper = report.sigma * std::sqrt(std::log(2.0 * report.n));
  report.small_degrees = small_degree_counts(spectrum, report.n);

  if (report.w_certificate > report.sigma * (1.0 + 1e-8)) {
    throw std::logic_error("w_certificate exceeds sigma");
  }
  const double m_low = std::exp(-0.5);
  const double m_high = std::sqrt(2.0 * std::log(static_cast<double>(report.n))) + 1.0;
  if (report.m_of_g < m_low - 1e-12 || report.m_of_g > m_high + 1e-12) {
    throw std::logic_error("m(G) outside [e^{-1/2}, sqrt(2 ln n) + 1]");
  }
  return report;
}

nlohmann::json to_json(const BoundsReport& report) {
  nlohmann::json small = nlohmann::json::array();
  for (const auto& s : report.small_degrees) small.push_back({{"epsilon", s.epsilon}, {"count", s.count}});
  return {{"group", report.group},
          {"n", report.n},
          {"sigma", report.sigma},
          {"v", report.v},
          {"w_certificate", report.w_certificate},
          {"s_norm", report.s_norm},
          {"m", report.m_of_g},
          {"s_star", report.s_star},
          {"nck_lower", report.nck_lower},
          {"nck_upper", report.nck_upper},
          {"small_degree_counts", small}};
}

std::string csv_header_bounds() { return "group,n,sigma,v,w_cert,m,s_star"; }

std::string to_csv_row(const BoundsReport& r) {
  return r.group + "," + std::to_string(r.n) + "," + format_double(r.sigma) + "," + format_double(r.v) + "," +
         format_double(r.w_certificate) + "," + format_double(r.m_of_g) + "," + format_double(r.s_star);
}

}  // namespace cayley
