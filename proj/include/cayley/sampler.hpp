#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/group.hpp"
#include "cayley/linalg.hpp"
#include "cayley/repr.hpp"
#include "cayley/rng.hpp"

namespace cayley {

enum class SeriesMode { real_cayley, complex_cayley, explicit_family };

/// How an explicit family enters self-adjoint statistics: through its
/// dilation, as is, or dilated only when some coefficient is not Hermitian.
enum class Dilation { automatic, always, never };

/// X = sum_i x_i A_i. Cayley modes use the family {rho(g)} implicitly.
struct GaussianSeries {
  SeriesMode mode = SeriesMode::real_cayley;
  const FiniteGroup* group = nullptr;
  std::vector<ComplexMatrix> coefficients;
  Dilation dilation = Dilation::automatic;

  static GaussianSeries real_cayley(const FiniteGroup& group);
  static GaussianSeries complex_cayley(const FiniteGroup& group);
  /// Throws ValidationError if the matrices are empty, non-square, or of
  /// differing sizes.
  static GaussianSeries explicit_family(std::vector<ComplexMatrix> coefficients,
                                        Dilation dilation = Dilation::automatic);

  bool is_cayley() const noexcept { return mode != SeriesMode::explicit_family; }
  int dim() const;
  std::string label() const;
};

/// Dense rho(g) family of a Cayley series, for the generic code paths.
/// Marked for dilation, since Cayley families enter through X~_G.
GaussianSeries cayley_as_explicit(const FiniteGroup& group);

/// Dense sum_g coeffs[g] rho(g).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cayley_matrix(const FiniteGroup& group,
                                                                     std::span<const Scalar> coeffs);

/// Fresh draw of a Cayley series as a dense matrix. Real mode fills only
/// the real part.
ComplexMatrix sample_cayley(const GaussianSeries& series, NormalSampler& normal);

/// out = (sum_g coeffs[g] rho(g)) u, computed from the Cayley table without
/// forming the matrix. The parallel kernel splits rows across threads; the
/// serial one is the reference it is tested against.
template <typename Scalar>
void cayley_apply(const FiniteGroup& group, std::span<const Scalar> coeffs,
                  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& u,
                  Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out);
template <typename Scalar>
void cayley_apply_serial(const FiniteGroup& group, std::span<const Scalar> coeffs,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& u,
                         Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out);

/// Matrix-free operator for sum_g coeffs[g] rho(g). Keeps copies of the
/// coefficients; the group must outlive it.
template <typename Scalar>
LinearOperator<Scalar> cayley_operator(const FiniteGroup& group, std::vector<Scalar> coeffs);

enum class NormMethod { direct_real, direct_complex, block };

std::string to_string(NormMethod method);
NormMethod parse_norm_method(std::string_view text);

struct NormEstimate {
  std::string group;
  NormMethod method = NormMethod::direct_real;
  int trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct EstimateOptions {
  NormOptions norm;
  bool parallel = true;
};

/// Norm of trial t, one value per trial. Trial t draws from the stream
/// (master_seed, t), so the vector does not depend on scheduling.
std::vector<double> sample_norms(const GaussianSeries& series, int trials, NormMethod method,
                                 std::uint64_t master_seed, const IrrepSpectrum* spectrum = nullptr,
                                 const EstimateOptions& options = {});

/// Single-threaded reference for sample_norms.
std::vector<double> sample_norms_serial(const GaussianSeries& series, int trials, NormMethod method,
                                        std::uint64_t master_seed, const IrrepSpectrum* spectrum = nullptr,
                                        const EstimateOptions& options = {});

/// Monte Carlo estimate of E||X||. The block method needs `spectrum` and
/// returns sqrt(n) * max_pi ||Z_pi|| / sqrt(d_pi) per trial.
NormEstimate estimate_expected_norm(const GaussianSeries& series, int trials, NormMethod method,
                                    std::uint64_t master_seed, const IrrepSpectrum* spectrum = nullptr,
                                    const EstimateOptions& options = {});

/// Mean and standard error of a sample, reduced in index order.
std::pair<double, double> mean_and_std_error(std::span<const double> values);

nlohmann::json to_json(const NormEstimate& estimate);

}  // namespace cayley
