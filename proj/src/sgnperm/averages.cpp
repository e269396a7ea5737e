#include "sepwidth/sgnperm/averages.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/kernels/kernels.hpp"
#include "sepwidth/sgnperm/signed_permutation.hpp"

namespace sepwidth::sgnperm {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_unit(std::span<const double> v, const char* name) {
  const double len = std::sqrt(dot(v, v));
  if (std::abs(len - 1.0) > tol::kUnitNorm) {
    throw PreconditionError(std::string(name) + " is not a unit vector (norm " +
                            std::to_string(len) + ")");
  }
}

void require_enumerable(int n) {
  if (n < 1 || n > kMaxEnumerationDim) {
    throw PreconditionError("exact group averages need 1 <= N <= " +
                            std::to_string(kMaxEnumerationDim) + ", got " + std::to_string(n));
  }
}

}  // namespace

Subspace::Subspace(int ambient_dim, std::vector<std::vector<double>> basis)
    : n_(ambient_dim), basis_(std::move(basis)) {
  if (n_ < 1) throw PreconditionError("subspace ambient dimension must be positive");
  if (basis_.empty() || static_cast<int>(basis_.size()) > n_) {
    throw PreconditionError("subspace dimension must lie in [1, N]");
  }
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (static_cast<int>(basis_[i].size()) != n_) {
      throw PreconditionError("basis vector has wrong ambient dimension");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(dot(basis_[i], basis_[j]) - expected) > tol::kOrthonormal) {
        throw PreconditionError("subspace basis is not orthonormal");
      }
    }
  }
}

Subspace Subspace::coordinate(int ambient_dim, std::span<const int> axes) {
  std::vector<std::vector<double>> basis;
  for (int axis : axes) {
    if (axis < 0 || axis >= ambient_dim) throw PreconditionError("coordinate axis out of range");
    std::vector<double> e(static_cast<std::size_t>(ambient_dim), 0.0);
    e[static_cast<std::size_t>(axis)] = 1.0;
    basis.push_back(std::move(e));
  }
  return Subspace(ambient_dim, std::move(basis));
}

DotAverages dot_averages(std::span<const double> a, std::span<const double> b) {
  const int n = static_cast<int>(a.size());
  require_enumerable(n);
  if (b.size() != a.size()) throw PreconditionError("dot_averages: dimension mismatch");
  require_unit(a, "a");
  require_unit(b, "b");

  // For a fixed permutation the 2^N sign choices only flip the terms
  // a_i b_perm(i); the signed-sum kernel handles all of them at once.
  const auto& k = kernels::active();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> c(static_cast<std::size_t>(n));
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  do {
    for (int i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] =
          a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    const auto m = k.signed_moments(c.data(), n);
    abs_sum += m.abs_sum;
    sq_sum += m.sq_sum;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double order = static_cast<double>(group_order(n));
  return {abs_sum / order, sq_sum / order};
}

double avg_abs_dot(std::span<const double> a, std::span<const double> b) {
  return dot_averages(a, b).abs_dot;
}

double avg_sq_dot(std::span<const double> a, std::span<const double> b) {
  return dot_averages(a, b).sq_dot;
}

ProjectionAverages projection_averages(std::span<const double> b, const Subspace& subspace) {
  const int n = subspace.ambient_dim();
  require_enumerable(n);
  if (static_cast<int>(b.size()) != n) throw PreconditionError("projection: dimension mismatch");
  require_unit(b, "b");
  double len_sum = 0.0;
  double sq_sum = 0.0;
  for_each_element(n, [&](const SignedPermutation& g) {
    const auto gb = g.apply(b);
    double sq = 0.0;
    for (const auto& a : subspace.basis()) {
      const double d = dot(a, gb);
      sq += d * d;
    }
    len_sum += std::sqrt(sq);
    sq_sum += sq;
  });
  const double order = static_cast<double>(group_order(n));
  return {len_sum / order, sq_sum / order};
}

double avg_projection_length(std::span<const double> b, const Subspace& subspace) {
  return projection_averages(b, subspace).length;
}

JacobianAverages jacobian_averages(const Subspace& first, const Subspace& second) {
  const int n = first.ambient_dim();
  if (second.ambient_dim() != n || second.dim() != first.dim()) {
    throw PreconditionError("jacobian: subspaces must share ambient dimension and dimension");
  }
  require_enumerable(n);
  const int m = first.dim();
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  std::vector<std::vector<double>> moved(static_cast<std::size_t>(m));
  std::vector<double> matrix(static_cast<std::size_t>(m * m));
  for_each_element(n, [&](const SignedPermutation& g) {
    for (int j = 0; j < m; ++j) moved[static_cast<std::size_t>(j)] = g.apply(second.basis()[static_cast<std::size_t>(j)]);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        matrix[static_cast<std::size_t>(i * m + j)] =
            dot(first.basis()[static_cast<std::size_t>(i)], moved[static_cast<std::size_t>(j)]);
      }
    }
    const double det = determinant(matrix, m);
    abs_sum += std::abs(det);
    sq_sum += det * det;
  });
  const double order = static_cast<double>(group_order(n));
  return {abs_sum / order, sq_sum / order};
}

double avg_projection_jacobian(const Subspace& first, const Subspace& second) {
  return jacobian_averages(first, second).abs_det;
}

SampledDotMoments sampled_dot_moments(std::span<const double> a, std::span<const double> b,
                                      std::size_t count, std::uint64_t seed) {
  const int n = static_cast<int>(a.size());
  if (b.size() != a.size()) throw PreconditionError("sampled_dot_moments: dimension mismatch");
  if (count < 2) throw PreconditionError("sampled_dot_moments needs at least two samples");
  require_unit(a, "a");
  require_unit(b, "b");
  double s1 = 0.0, s1sq = 0.0, s2 = 0.0, s2sq = 0.0;
  for (const auto& g : sample_group(n, count, seed)) {
    const double d = dot(a, g.apply(b));
    const double ad = std::abs(d);
    const double d2 = d * d;
    s1 += ad;
    s1sq += ad * ad;
    s2 += d2;
    s2sq += d2 * d2;
  }
  const double c = static_cast<double>(count);
  auto se = [c](double sum, double sumsq) {
    const double mean = sum / c;
    const double var = std::max(0.0, (sumsq - c * mean * mean) / (c - 1.0));
    return std::sqrt(var / c);
  };
  return {s1 / c, se(s1, s1sq), s2 / c, se(s2, s2sq)};
}

double determinant(std::vector<double> a, int m) {
  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(a[static_cast<std::size_t>(r * m + col)]) >
          std::abs(a[static_cast<std::size_t>(pivot * m + col)])) {
        pivot = r;
      }
    }
    const double p = a[static_cast<std::size_t>(pivot * m + col)];
    if (p == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < m; ++c) {
        std::swap(a[static_cast<std::size_t>(pivot * m + c)], a[static_cast<std::size_t>(col * m + c)]);
      }
      det = -det;
    }
    det *= p;
    for (int r = col + 1; r < m; ++r) {
      const double f = a[static_cast<std::size_t>(r * m + col)] / p;
      if (f == 0.0) continue;
      for (int c = col; c < m; ++c) {
        a[static_cast<std::size_t>(r * m + c)] -= f * a[static_cast<std::size_t>(col * m + c)];
      }
    }
  }
  return det;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::vector<double> random_unit_vector(int n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  double len = 0.0;
  while (len < 1e-3) {
    for (auto& x : v) x = rng.normal();
    len = std::sqrt(dot(v, v));
  }
  for (auto& x : v) x /= len;
  return v;
}

Subspace random_subspace(int n, int m, Rng& rng) {
  std::vector<std::vector<double>> basis;
  while (static_cast<int>(basis.size()) < m) {
    auto v = random_unit_vector(n, rng);
    // Two Gram-Schmidt passes keep the result orthonormal to ~1e-16.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) {
        const double d = dot(v, e);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * e[i];
      }
    }
    const double len = std::sqrt(dot(v, v));
    if (len < 1e-6) continue;
    for (auto& x : v) x /= len;
    basis.push_back(std::move(v));
  }
  return Subspace(n, std::move(basis));
}

}  // namespace sepwidth::sgnperm
