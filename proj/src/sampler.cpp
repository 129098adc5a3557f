#include "cayley/sampler.hpp"

#include <cmath>
#include <exception>
#include <memory>
#include <mutex>

#include "cayley/errors.hpp"

namespace cayley {

GaussianSeries GaussianSeries::real_cayley(const FiniteGroup& group) {
  return {SeriesMode::real_cayley, &group, {}, Dilation::always};
}

GaussianSeries GaussianSeries::complex_cayley(const FiniteGroup& group) {
  return {SeriesMode::complex_cayley, &group, {}, Dilation::always};
}

GaussianSeries GaussianSeries::explicit_family(std::vector<ComplexMatrix> coefficients, Dilation dilation) {
  if (coefficients.empty()) throw ValidationError("explicit series needs at least one coefficient");
  const Eigen::Index d = coefficients.front().rows();
  for (const auto& a : coefficients) {
    if (a.rows() != d || a.cols() != d) {
      throw ValidationError("explicit series coefficients must be square and share dimensions");
    }
  }
  return {SeriesMode::explicit_family, nullptr, std::move(coefficients), dilation};
}

int GaussianSeries::dim() const {
  return is_cayley() ? group->order() : static_cast<int>(coefficients.front().rows());
}

std::string GaussianSeries::label() const {
  return is_cayley() ? group->name() : "explicit:" + std::to_string(coefficients.size());
}

GaussianSeries cayley_as_explicit(const FiniteGroup& group) {
  const RegularRep rep(group);
  std::vector<ComplexMatrix> family;
  family.reserve(group.order());
  for (int g = 0; g < group.order(); ++g) family.push_back(rep.matrix(g).cast<Complex>());
  return GaussianSeries::explicit_family(std::move(family), Dilation::always);
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cayley_matrix(const FiniteGroup& group,
                                                                     std::span<const Scalar> coeffs) {
  const int n = group.order();
  if (static_cast<int>(coeffs.size()) != n) throw ValidationError("coefficient count differs from group order");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  const auto inv = group.inverses();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(i, j) = coeffs[group.row(i)[inv[j]]];
  }
  return out;
}

template RealMatrix cayley_matrix(const FiniteGroup&, std::span<const double>);
template ComplexMatrix cayley_matrix(const FiniteGroup&, std::span<const Complex>);

ComplexMatrix sample_cayley(const GaussianSeries& series, NormalSampler& normal) {
  if (!series.is_cayley()) throw ValidationError("sample_cayley needs a Cayley series");
  std::vector<Complex> coeffs(series.group->order());
  for (auto& c : coeffs) {
    c = series.mode == SeriesMode::complex_cayley ? normal.complex() : Complex(normal(), 0.0);
  }
  return cayley_matrix<Complex>(*series.group, coeffs);
}

template <typename Scalar>
void cayley_apply_serial(const FiniteGroup& group, std::span<const Scalar> coeffs,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& u,
                         Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out) {
  const int n = group.order();
  const auto inv = group.inverses();
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    const Element* row = group.row(i).data();
    Scalar acc{};
    for (int j = 0; j < n; ++j) acc += coeffs[row[inv[j]]] * u(j);
    out(i) = acc;
  }
}

template <typename Scalar>
void cayley_apply(const FiniteGroup& group, std::span<const Scalar> coeffs,
                  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& u,
                  Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out) {
  const int n = group.order();
  const Element* inv = group.inverses().data();
  out.resize(n);
  // (Xu)_i = sum_j x_{i j^-1} u_j; each row is independent.
#pragma omp parallel for schedule(static) if (n >= 256)
  for (int i = 0; i < n; ++i) {
    const Element* row = group.row(i).data();
    Scalar acc{};
    for (int j = 0; j < n; ++j) acc += coeffs[row[inv[j]]] * u(j);
    out(i) = acc;
  }
}

template void cayley_apply_serial(const FiniteGroup&, std::span<const double>, const RealVector&, RealVector&);
template void cayley_apply_serial(const FiniteGroup&, std::span<const Complex>, const ComplexVector&,
                                  ComplexVector&);
template void cayley_apply(const FiniteGroup&, std::span<const double>, const RealVector&, RealVector&);
template void cayley_apply(const FiniteGroup&, std::span<const Complex>, const ComplexVector&, ComplexVector&);

namespace {
double conj_if_complex(double x) { return x; }
Complex conj_if_complex(Complex x) { return std::conj(x); }
}  // namespace

template <typename Scalar>
LinearOperator<Scalar> cayley_operator(const FiniteGroup& group, std::vector<Scalar> coeffs) {
  using Vector = typename LinearOperator<Scalar>::Vector;
  // X* = sum_g conj(x_g) rho(g^-1), so its coefficients are conj(x_{g^-1}).
  std::vector<Scalar> adjoint(coeffs.size());
  for (int g = 0; g < group.order(); ++g) adjoint[g] = conj_if_complex(coeffs[group.inverse(g)]);
  auto forward = std::make_shared<const std::vector<Scalar>>(std::move(coeffs));
  auto backward = std::make_shared<const std::vector<Scalar>>(std::move(adjoint));
  const FiniteGroup* g = &group;
  return {group.order(),
          [g, forward](const Vector& x, Vector& y) { cayley_apply<Scalar>(*g, *forward, x, y); },
          [g, backward](const Vector& x, Vector& y) { cayley_apply<Scalar>(*g, *backward, x, y); }};
}

template LinearOperator<double> cayley_operator(const FiniteGroup&, std::vector<double>);
template LinearOperator<Complex> cayley_operator(const FiniteGroup&, std::vector<Complex>);

std::string to_string(NormMethod method) {
  switch (method) {
    case NormMethod::direct_real: return "direct_real";
    case NormMethod::direct_complex: return "direct_complex";
    case NormMethod::block: return "block";
  }
  return "unknown";
}

NormMethod parse_norm_method(std::string_view text) {
  if (text == "direct_real" || text == "real") return NormMethod::direct_real;
  if (text == "direct_complex" || text == "complex") return NormMethod::direct_complex;
  if (text == "block") return NormMethod::block;
  throw ValidationError("unknown norm method '" + std::string(text) + "'");
}

namespace {

void validate_request(const GaussianSeries& series, int trials, NormMethod method,
                      const IrrepSpectrum* spectrum) {
  if (trials < 2) throw ValidationError("need at least 2 trials");
  if (method == NormMethod::block) {
    if (!series.is_cayley()) throw ValidationError("block method applies to Cayley series only");
    if (spectrum == nullptr) throw ValidationError("block method requires an irrep spectrum");
    if (spectrum->sum_of_squares() != series.group->order()) {
      throw ValidationError("spectrum does not match group order");
    }
  }
}

double block_trial(const IrrepSpectrum& spectrum, NormalSampler& normal) {
  double best = 0.0;
  double n = 0.0;
  for (int d : spectrum.degrees) {
    n += static_cast<double>(d) * d;
    double norm;
    if (d == 1) {
      norm = std::abs(normal.complex());
    } else {
      ComplexMatrix z(d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) z(i, j) = normal.complex();
      norm = spectral_norm_dense(z) / std::sqrt(static_cast<double>(d));
    }
    best = std::max(best, norm);
  }
  return std::sqrt(n) * best;
}

template <typename Scalar>
double explicit_trial(const GaussianSeries& series, NormalSampler& normal, const NormOptions& options) {
  const Eigen::Index d = series.dim();
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (const auto& a : series.coefficients) {
    const Complex c = std::is_same_v<Scalar, double> ? Complex(normal(), 0.0) : normal.complex();
    x += c * a;
  }
  return spectral_norm_detailed(as_operator(x), options).norm;
}

double trial_norm(const GaussianSeries& series, NormMethod method, std::uint64_t master_seed, int t,
                  const IrrepSpectrum* spectrum, const EstimateOptions& options) {
  NormalSampler normal(Philox4x32(master_seed, streams::kTrialBase + static_cast<std::uint64_t>(t)));
  if (method == NormMethod::block) return block_trial(*spectrum, normal);
  if (!series.is_cayley()) {
    return method == NormMethod::direct_real ? explicit_trial<double>(series, normal, options.norm)
                                             : explicit_trial<Complex>(series, normal, options.norm);
  }
  const int n = series.group->order();
  if (method == NormMethod::direct_real) {
    std::vector<double> x(n);
    for (auto& v : x) v = normal();
    return spectral_norm_detailed(cayley_operator<double>(*series.group, std::move(x)), options.norm).norm;
  }
  std::vector<Complex> z(n);
  for (auto& v : z) v = normal.complex();
  return spectral_norm_detailed(cayley_operator<Complex>(*series.group, std::move(z)), options.norm).norm;
}

}  // namespace

std::vector<double> sample_norms_serial(const GaussianSeries& series, int trials, NormMethod method,
                                        std::uint64_t master_seed, const IrrepSpectrum* spectrum,
                                        const EstimateOptions& options) {
  validate_request(series, trials, method, spectrum);
  std::vector<double> values(trials);
  for (int t = 0; t < trials; ++t) values[t] = trial_norm(series, method, master_seed, t, spectrum, options);
  return values;
}

std::vector<double> sample_norms(const GaussianSeries& series, int trials, NormMethod method,
                                 std::uint64_t master_seed, const IrrepSpectrum* spectrum,
                                 const EstimateOptions& options) {
  if (!options.parallel) return sample_norms_serial(series, trials, method, master_seed, spectrum, options);
  validate_request(series, trials, method, spectrum);
  std::vector<double> values(trials);
  // Exceptions cannot leave the parallel region; keep the one from the
  // lowest trial index so the reported failure is schedule-independent.
  std::exception_ptr failure;
  int failed_trial = trials;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    try {
      values[t] = trial_norm(series, method, master_seed, t, spectrum, options);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (t < failed_trial) {
        failed_trial = t;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

std::pair<double, double> mean_and_std_error(std::span<const double> values) {
  const double count = static_cast<double>(values.size());
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / count;
  if (values.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / (count - 1.0)) / std::sqrt(count)};
}

NormEstimate estimate_expected_norm(const GaussianSeries& series, int trials, NormMethod method,
                                    std::uint64_t master_seed, const IrrepSpectrum* spectrum,
                                    const EstimateOptions& options) {
  const auto values = sample_norms(series, trials, method, master_seed, spectrum, options);
  const auto [mean, se] = mean_and_std_error(values);
  return {series.label(), method, trials, master_seed, mean, se};
}

nlohmann::json to_json(const NormEstimate& estimate) {
  return {{"group", estimate.group},       {"method", to_string(estimate.method)},
          {"trials", estimate.trials},     {"seed", estimate.seed},
          {"mean", estimate.mean},         {"std_error", estimate.std_error}};
}

}  // namespace cayley
