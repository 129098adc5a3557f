#include "oracles/brute.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <set>

namespace cayley::oracle {

std::vector<int> brute_class_sizes(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<int> label(n, -1);
  std::vector<int> sizes;
  for (int g = 0; g < n; ++g) {
    if (label[g] >= 0) continue;
    std::set<int> members;
    for (int x = 0; x < n; ++x) {
      for (int h = 0; h < n; ++h) {
        if (group.multiply(h, g) == group.multiply(x, h)) {
          members.insert(x);
          break;
        }
      }
    }
    for (int x : members) label[x] = g;
    sizes.push_back(static_cast<int>(members.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::pair<double, double> grid_min_m(const std::vector<int>& degrees, int points) {
  long long n = 0;
  for (int d : degrees) n += static_cast<long long>(d) * d;
  const double upper = std::sqrt(2.0 * std::log(static_cast<double>(n))) + 2.0;
  double best = std::numeric_limits<double>::infinity(), arg = 0.0;
  for (int i = 0; i < points; ++i) {
    const double s = upper * i / (points - 1);
    double f = s;
    for (int d : degrees) f += std::exp(-0.5 * d * s * s) / std::sqrt(static_cast<double>(d));
    if (f < best) {
      best = f;
      arg = s;
    }
  }
  return {best, arg};
}

double circulant_sign_norm(const std::vector<int>& signs) {
  const int n = static_cast<int>(signs.size());
  double best = 0.0;
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc{};
    for (int j = 0; j < n; ++j) acc += static_cast<double>(signs[j]) * std::polar(1.0, 2.0 * std::numbers::pi * j * k / n);
    best = std::max(best, std::abs(acc));
  }
  return best;
}

double brute_min_circulant(int n) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> signs(n);
  for (long mask = 0; mask < (1L << n); ++mask) {
    for (int j = 0; j < n; ++j) signs[j] = (mask >> j) & 1 ? -1 : 1;
    best = std::min(best, circulant_sign_norm(signs));
  }
  return best;
}

}  // namespace cayley::oracle
