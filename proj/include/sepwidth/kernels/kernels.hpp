#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and an AVX2 variant; the active backend is chosen once at
// startup from CPUID and can be forced for testing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sepwidth::kernels {

enum class Backend { kScalar, kAvx2 };

struct SignedMoments {
  double abs_sum = 0.0;  // sum over sign masks of |sum_i eps_i c_i|
  double sq_sum = 0.0;   // sum over sign masks of (sum_i eps_i c_i)^2
};

inline constexpr int kMaxEigenDim = 8;
inline constexpr int kMaxSignDim = 16;

struct KernelTable {
  // f(x) = prod_i sin(pi x_i) and |grad f| at `count` points. Coordinates are
  // dimension-major: coords[d * count + p]. Requires 1 <= dim <= kMaxEigenDim.
  void (*eigenfield)(int dim, std::size_t count, const double* coords, double* value,
                     double* grad_norm);
  // For k < n: if owner[k] < 0 and scale * profile[k] >= level, set owner[k] =
  // label. Returns the number of cells claimed.
  std::size_t (*claim_row)(std::int32_t* owner, const double* profile, double scale,
                           double level, std::int32_t label, std::size_t n);
  // Number of k < n with a[k] != b[k].
  std::size_t (*count_mismatch)(const std::int32_t* a, const std::int32_t* b, std::size_t n);
  // Moments of the signed sums over all 2^n sign masks; bit i of the mask set
  // means eps_i = -1. Requires n <= kMaxSignDim.
  SignedMoments (*signed_moments)(const double* c, int n);
};

bool avx2_supported();
const KernelTable& table(Backend backend);
Backend active_backend();
/// Throws PreconditionError if the backend is not supported on this CPU.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

inline const KernelTable& active() { return table(active_backend()); }

}  // namespace sepwidth::kernels
