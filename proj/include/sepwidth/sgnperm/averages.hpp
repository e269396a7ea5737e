#pragma once

// Exact averages over the signed permutation group of the quantities that
// bound the l-infinity kinematic inequalities, together with the companion
// second moments, which are exact rational constants.

#include <cstdint>
#include <span>
#include <vector>

#include "sepwidth/common/rng.hpp"

namespace sepwidth::sgnperm {

/// An m-dimensional linear subspace of R^N given by an orthonormal basis.
class Subspace {
 public:
  /// Throws PreconditionError unless the vectors are pairwise orthogonal and
  /// unit-norm within tol::kOrthonormal. No re-orthonormalization is done.
  Subspace(int ambient_dim, std::vector<std::vector<double>> basis);

  /// Span of the given coordinate axes.
  static Subspace coordinate(int ambient_dim, std::span<const int> axes);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::vector<double>>& basis() const { return basis_; }

 private:
  int n_;
  std::vector<std::vector<double>> basis_;
};

struct DotAverages {
  double abs_dot = 0.0;  // average of |a . g b|
  double sq_dot = 0.0;   // average of (a . g b)^2; equals 1/N
};

struct ProjectionAverages {
  double length = 0.0;     // average of |P_L g b|
  double sq_length = 0.0;  // average of |P_L g b|^2; equals m/N
};

struct JacobianAverages {
  double abs_det = 0.0;  // average of |det(A . g B)|
  double sq_det = 0.0;   // average of det^2; equals 1/C(N, m)
};

/// Requires 1 <= N <= 8 and unit a, b (tol::kUnitNorm).
DotAverages dot_averages(std::span<const double> a, std::span<const double> b);
double avg_abs_dot(std::span<const double> a, std::span<const double> b);
double avg_sq_dot(std::span<const double> a, std::span<const double> b);

ProjectionAverages projection_averages(std::span<const double> b, const Subspace& subspace);
double avg_projection_length(std::span<const double> b, const Subspace& subspace);

JacobianAverages jacobian_averages(const Subspace& first, const Subspace& second);
double avg_projection_jacobian(const Subspace& first, const Subspace& second);

/// Monte Carlo estimate of the dot moments from `count` sampled group
/// elements (for N beyond the enumeration cap).
struct SampledDotMoments {
  double abs_dot = 0.0, abs_dot_se = 0.0;
  double sq_dot = 0.0, sq_dot_se = 0.0;
};
SampledDotMoments sampled_dot_moments(std::span<const double> a, std::span<const double> b,
                                      std::size_t count, std::uint64_t seed);

/// Determinant by Gaussian elimination with partial pivoting; `a` is
/// row-major m x m.
double determinant(std::vector<double> a, int m);

double binomial(int n, int k);

std::vector<double> random_unit_vector(int n, Rng& rng);
/// Gram-Schmidt on Gaussian vectors; orthonormal to roundoff.
Subspace random_subspace(int n, int m, Rng& rng);

}  // namespace sepwidth::sgnperm
