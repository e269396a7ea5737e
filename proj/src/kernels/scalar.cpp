#include <cmath>
#include <numbers>

#include "backends.hpp"

namespace sepwidth::kernels {
namespace {

void eigenfield(int dim, std::size_t count, const double* coords, double* value,
                double* grad_norm) {
  constexpr double pi = std::numbers::pi;
  double s[kMaxEigenDim];
  double c[kMaxEigenDim];
  double prefix[kMaxEigenDim + 1];
  for (std::size_t p = 0; p < count; ++p) {
    for (int d = 0; d < dim; ++d) {
      const double x = coords[d * count + p];
      s[d] = std::sin(pi * x);
      c[d] = std::cos(pi * x);
    }
    prefix[0] = 1.0;
    for (int d = 0; d < dim; ++d) prefix[d + 1] = prefix[d] * s[d];
    double suffix = 1.0;
    double g2 = 0.0;
    for (int d = dim - 1; d >= 0; --d) {
      const double g = pi * c[d] * prefix[d] * suffix;
      g2 += g * g;
      suffix *= s[d];
    }
    value[p] = prefix[dim];
    grad_norm[p] = std::sqrt(g2);
  }
}

std::size_t claim_row(std::int32_t* owner, const double* profile, double scale, double level,
                      std::int32_t label, std::size_t n) {
  std::size_t claimed = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (owner[k] < 0 && scale * profile[k] >= level) {
      owner[k] = label;
      ++claimed;
    }
  }
  return claimed;
}

std::size_t count_mismatch(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) count += a[k] != b[k];
  return count;
}

SignedMoments signed_moments(const double* c, int n) {
  SignedMoments out;
  const std::uint32_t masks = 1u << n;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += (mask >> i & 1u) ? -c[i] : c[i];
    out.abs_sum += std::abs(sum);
    out.sq_sum += sum * sum;
  }
  return out;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{eigenfield, claim_row, count_mismatch, signed_moments};
  return table;
}

}  // namespace sepwidth::kernels
