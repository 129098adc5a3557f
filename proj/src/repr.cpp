#include "cayley/repr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>

#include "cayley/errors.hpp"
#include "cayley/rng.hpp"

namespace cayley {

RealMatrix RegularRep::matrix(Element g) const {
  const int n = dim();
  RealMatrix out = RealMatrix::Zero(n, n);
  const auto p = perm(g);
  for (int h = 0; h < n; ++h) out(p[h], h) = 1.0;
  return out;
}

long long IrrepSpectrum::sum_of_squares() const {
  long long total = 0;
  for (int d : degrees) total += static_cast<long long>(d) * d;
  return total;
}

int IrrepSpectrum::count_linear() const {
  return static_cast<int>(std::count(degrees.begin(), degrees.end(), 1));
}

int IrrepSpectrum::count_below(double threshold) const {
  return static_cast<int>(std::count_if(degrees.begin(), degrees.end(),
                                        [&](int d) { return d < threshold; }));
}

bool operator==(const IrrepSpectrum& a, const IrrepSpectrum& b) {
  return a.group == b.group && a.degrees == b.degrees;
}

RealMatrix class_sum_matrix(const RegularRep& rep, std::span<const Element> cls) {
  const FiniteGroup& group = rep.group();
  if (cls.empty()) throw ValidationError("empty class");
  const ConjugacyClasses classes = conjugacy_classes(group);
  std::vector<Element> sorted(cls.begin(), cls.end());
  std::sort(sorted.begin(), sorted.end());
  for (Element g : sorted) {
    if (g < 0 || g >= group.order()) throw ValidationError("class element out of range");
  }
  if (sorted != classes.classes[classes.class_of[sorted.front()]]) {
    throw ValidationError("input is not a single conjugacy class");
  }
  const int n = rep.dim();
  RealMatrix out = RealMatrix::Zero(n, n);
  for (Element g : sorted) {
    const auto p = rep.perm(g);
    for (int h = 0; h < n; ++h) out(p[h], h) += 1.0;
  }
  return out;
}

void check_spectrum(const FiniteGroup& group, const IrrepSpectrum& spectrum) {
  if (spectrum.degrees.empty()) throw ValidationError("empty irrep spectrum");
  if (spectrum.sum_of_squares() != group.order()) {
    throw ValidationError("sum of squared degrees " + std::to_string(spectrum.sum_of_squares()) +
                          " != group order " + std::to_string(group.order()));
  }
  const auto classes = conjugacy_classes(group);
  if (spectrum.degrees.size() != classes.count()) {
    throw ValidationError("number of degrees differs from number of conjugacy classes");
  }
  if (spectrum.count_linear() != abelianization_index(group)) {
    throw ValidationError("number of linear characters differs from |G/[G,G]|");
  }
}

namespace {

// Clusters sorted eigenvalues; returns each cluster's size.
std::vector<int> cluster_sizes(const Eigen::VectorXd& sorted_values, double gap) {
  std::vector<int> sizes;
  for (Eigen::Index i = 0; i < sorted_values.size(); ++i) {
    if (i == 0 || sorted_values(i) - sorted_values(i - 1) > gap) {
      sizes.push_back(1);
    } else {
      ++sizes.back();
    }
  }
  return sizes;
}

}  // namespace

IrrepSpectrum irrep_degrees(const RegularRep& rep, std::uint64_t seed, const IrrepOptions& options) {
  const FiniteGroup& group = rep.group();
  const int n = group.order();
  const ConjugacyClasses classes = conjugacy_classes(group);
  const std::vector<int> inv_class = inverse_classes(group, classes);
  const std::size_t class_count = classes.count();
  const std::size_t expected_linear = static_cast<std::size_t>(abelianization_index(group));

  // n classes force n linear characters; there is nothing to cluster.
  if (class_count == static_cast<std::size_t>(n)) return IrrepSpectrum{group.name(), std::vector<int>(n, 1)};

  // Distinct eigenvalues of a random central element sit ~radius / k^2
  // apart for k classes, so the gap threshold shrinks with k. Eigenvalue
  // error is ~1e-13 relative, far below either value.
  const double k = static_cast<double>(class_count);
  const double relative_gap = std::min(options.relative_gap, 1e-2 / (k * k));

  std::string last_failure;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    // Coefficient of each class in M = sum_K (c_K C_K + conj(c_K) C_{K^-1}).
    NormalSampler normal(Philox4x32(seed, streams::kIrrepCoefficients + attempt));
    std::vector<Complex> coeff(class_count, Complex{});
    for (std::size_t k = 0; k < class_count; ++k) {
      const std::size_t partner = static_cast<std::size_t>(inv_class[k]);
      if (partner < k) continue;  // one draw per unordered {K, K^-1}
      const Complex c = normal.complex();
      coeff[k] += c;
      coeff[partner] += std::conj(c);
    }

    // M = sum_g m_g rho(g); entry (i, j) carries m_{i j^-1}.
    ComplexMatrix central(n, n);
    const auto inv = group.inverses();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        central(i, j) = coeff[classes.class_of[group.row(i)[inv[j]]]];
      }
    }
    // Eigen 3.4's tridiagonal QR deflates on |e| <= eps sqrt(|d_i| + |d_i+1|),
    // which is not scale invariant and stalls when diagonals pass near zero.
    // Shift the spectrum into [b, 3b] (b the Gershgorin bound), rescale by a
    // power of two to norm ~2^-10, and undo both afterwards.
    const double bound = std::max(central.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
    const double shift = 2.0 * bound;
    const int exponent = -10 - std::ilogb(3.0 * bound);
    central.diagonal().array() += shift;
    central *= std::ldexp(1.0, exponent);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(central, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
      last_failure = "Hermitian eigensolver did not converge";
      continue;
    }
    const Eigen::VectorXd values = (eig.eigenvalues() * std::ldexp(1.0, -exponent)).array() - shift;
    const double radius = values.cwiseAbs().maxCoeff();
    const std::vector<int> sizes = cluster_sizes(values, relative_gap * std::max(radius, 1e-300));

    IrrepSpectrum spectrum{group.name(), {}};
    bool squares = true;
    for (int size : sizes) {
      const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
      squares = squares && d * d == size;
      spectrum.degrees.push_back(d);
    }
    std::sort(spectrum.degrees.begin(), spectrum.degrees.end());

    if (!squares) {
      last_failure = "cluster size is not a perfect square";
    } else if (spectrum.sum_of_squares() != n) {
      last_failure = "sum of squared degrees differs from order";
    } else if (spectrum.degrees.size() != class_count) {
      last_failure = "degree count differs from class count";
    } else if (static_cast<std::size_t>(spectrum.count_linear()) != expected_linear) {
      last_failure = "linear character count differs from |G/[G,G]|";
    } else {
      return spectrum;
    }
  }
  throw ValidationError("irrep_degrees(" + group.name() + "): degenerate spectrum after " +
                        std::to_string(options.retries) + " redraws: " + last_failure);
}

Eigen::MatrixXi s_matrix(const RegularRep& rep) {
  const FiniteGroup& group = rep.group();
  const int n = group.order();
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(n, n);
  for (int g = 0; g < n; ++g) {
    const auto p = rep.perm(group.square(g));
    for (int h = 0; h < n; ++h) out(p[h], h) += 1;
  }
  return out;
}

nlohmann::json to_json(const IrrepSpectrum& spectrum) {
  return {{"group", spectrum.group}, {"degrees", spectrum.degrees}};
}

IrrepSpectrum spectrum_from_json(const nlohmann::json& doc) {
  try {
    IrrepSpectrum out{doc.at("group").get<std::string>(), doc.at("degrees").get<std::vector<int>>()};
    std::sort(out.degrees.begin(), out.degrees.end());
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed spectrum document: ") + e.what());
  }
}

std::filesystem::path SpectrumCache::file_for(const std::string& group_name) const {
  std::string stem = group_name;
  std::replace_if(stem.begin(), stem.end(), [](char c) { return !std::isalnum(static_cast<unsigned char>(c)); }, '_');
  return *dir_ / ("spectrum_" + stem + ".json");
}

IrrepSpectrum SpectrumCache::get(const RegularRep& rep, std::uint64_t seed) const {
  const FiniteGroup& group = rep.group();
  if (dir_) {
    std::ifstream in(file_for(group.name()));
    if (in) {
      try {
        IrrepSpectrum cached = spectrum_from_json(nlohmann::json::parse(in));
        if (cached.group == group.name()) {
          check_spectrum(group, cached);
          return cached;
        }
      } catch (const std::exception&) {
        // Unreadable or stale entry; recompute below and overwrite it.
      }
    }
  }
  IrrepSpectrum spectrum = irrep_degrees(rep, seed);
  if (dir_) {
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    const auto target = file_for(group.name());
    const auto partial = target.string() + ".tmp";
    {
      std::ofstream out(partial);
      out << to_json(spectrum).dump() << '\n';
    }
    std::filesystem::rename(partial, target, ec);
  }
  return spectrum;
}

}  // namespace cayley
