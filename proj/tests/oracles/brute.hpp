#pragma once

#include <vector>

#include "cayley/group.hpp"

namespace cayley::oracle {

/// Conjugacy class sizes (sorted), from x ~ g iff hg = xh for some h.
std::vector<int> brute_class_sizes(const FiniteGroup& group);

/// min over a uniform grid of `points` on [0, sqrt(2 ln n) + 2] of
/// s + sum_d d^{-1/2} exp(-d s^2 / 2). Returns {value, argmin}.
std::pair<double, double> grid_min_m(const std::vector<int>& degrees, int points);

/// max_k |sum_j signs[j] exp(2 pi i jk / n)|, the norm of a circulant sign
/// matrix on cyclic(n) with element j = residue j.
double circulant_sign_norm(const std::vector<int>& signs);

/// Exact minimum of circulant_sign_norm over all 2^n sign vectors.
double brute_min_circulant(int n);

}  // namespace cayley::oracle
