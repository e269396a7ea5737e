#include <immintrin.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "backends.hpp"

namespace sepwidth::kernels {
namespace {

// sin(pi x) and cos(pi x). x is reduced to r = x - n/2 with |r| <= 1/4, then
// Taylor polynomials in t = pi r (truncation error below 1e-16 on |t| <= pi/4)
// are combined by the quadrant n mod 4.
inline void sincospi(__m256d x, __m256d& s, __m256d& c) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, two),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, half));
  const __m256d t = _mm256_mul_pd(r, _mm256_set1_pd(std::numbers::pi));
  const __m256d t2 = _mm256_mul_pd(t, t);

  // sin t = t (1 - t^2/3! + t^4/5! - ... + t^16/17!)
  __m256d ps = _mm256_set1_pd(1.0 / 355687428096000.0);
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(-1.0 / 1307674368000.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(1.0 / 6227020800.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(-1.0 / 39916800.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(1.0 / 362880.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(-1.0 / 5040.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(1.0 / 120.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(-1.0 / 6.0));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(1.0));
  const __m256d sin_t = _mm256_mul_pd(ps, t);

  // cos t = 1 - t^2/2! + ... + t^16/16!
  __m256d pc = _mm256_set1_pd(1.0 / 20922789888000.0);
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(-1.0 / 87178291200.0));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(1.0 / 479001600.0));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(-1.0 / 3628800.0));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(1.0 / 40320.0));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(-1.0 / 720.0));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(1.0 / 24.0));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(-0.5));
  const __m256d cos_t = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(1.0));

  // q = n mod 4
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d q = _mm256_sub_pd(
      n, _mm256_mul_pd(four, _mm256_floor_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.25)))));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d swap = _mm256_or_pd(_mm256_cmp_pd(q, one, _CMP_EQ_OQ),
                                    _mm256_cmp_pd(q, three, _CMP_EQ_OQ));
  const __m256d neg_sin = _mm256_cmp_pd(q, two, _CMP_GE_OQ);
  const __m256d neg_cos = _mm256_and_pd(_mm256_cmp_pd(q, one, _CMP_GE_OQ),
                                        _mm256_cmp_pd(q, two, _CMP_LE_OQ));
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d s0 = _mm256_blendv_pd(sin_t, cos_t, swap);
  const __m256d c0 = _mm256_blendv_pd(cos_t, sin_t, swap);
  s = _mm256_xor_pd(s0, _mm256_and_pd(neg_sin, sign_bit));
  c = _mm256_xor_pd(c0, _mm256_and_pd(neg_cos, sign_bit));
}

void eigenfield_block(int dim, const __m256d* x, __m256d& value, __m256d& grad_norm) {
  const __m256d pi = _mm256_set1_pd(std::numbers::pi);
  __m256d s[kMaxEigenDim];
  __m256d c[kMaxEigenDim];
  __m256d prefix[kMaxEigenDim + 1];
  for (int d = 0; d < dim; ++d) sincospi(x[d], s[d], c[d]);
  prefix[0] = _mm256_set1_pd(1.0);
  for (int d = 0; d < dim; ++d) prefix[d + 1] = _mm256_mul_pd(prefix[d], s[d]);
  __m256d suffix = _mm256_set1_pd(1.0);
  __m256d g2 = _mm256_setzero_pd();
  for (int d = dim - 1; d >= 0; --d) {
    const __m256d g = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(pi, c[d]), prefix[d]), suffix);
    g2 = _mm256_add_pd(g2, _mm256_mul_pd(g, g));
    suffix = _mm256_mul_pd(suffix, s[d]);
  }
  value = prefix[dim];
  grad_norm = _mm256_sqrt_pd(g2);
}

void eigenfield(int dim, std::size_t count, const double* coords, double* value,
                double* grad_norm) {
  __m256d x[kMaxEigenDim];
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    for (int d = 0; d < dim; ++d) x[d] = _mm256_loadu_pd(coords + d * count + p);
    __m256d v, g;
    eigenfield_block(dim, x, v, g);
    _mm256_storeu_pd(value + p, v);
    _mm256_storeu_pd(grad_norm + p, g);
  }
  if (p < count) {
    alignas(32) double pad[4];
    for (int d = 0; d < dim; ++d) {
      for (int k = 0; k < 4; ++k) pad[k] = p + k < count ? coords[d * count + p + k] : 0.5;
      x[d] = _mm256_load_pd(pad);
    }
    __m256d v, g;
    eigenfield_block(dim, x, v, g);
    alignas(32) double vout[4];
    alignas(32) double gout[4];
    _mm256_store_pd(vout, v);
    _mm256_store_pd(gout, g);
    for (std::size_t k = 0; p + k < count; ++k) {
      value[p + k] = vout[k];
      grad_norm[p + k] = gout[k];
    }
  }
}

std::size_t claim_row(std::int32_t* owner, const double* profile, double scale, double level,
                      std::int32_t label, std::size_t n) {
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d vlevel = _mm256_set1_pd(level);
  const __m128i vlabel = _mm_set1_epi32(label);
  const __m128i zero = _mm_setzero_si128();
  const __m256i pick_low = _mm256_setr_epi32(0, 2, 4, 6, 0, 2, 4, 6);
  std::size_t claimed = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d prod = _mm256_mul_pd(vscale, _mm256_loadu_pd(profile + k));
    const __m256i above = _mm256_castpd_si256(_mm256_cmp_pd(prod, vlevel, _CMP_GE_OQ));
    const __m128i cur = _mm_loadu_si128(reinterpret_cast<const __m128i*>(owner + k));
    const __m256i free64 = _mm256_cvtepi32_epi64(_mm_cmplt_epi32(cur, zero));
    const __m256i take64 = _mm256_and_si256(above, free64);
    const __m128i take =
        _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(take64, pick_low));
    const __m128i next = _mm_blendv_epi8(cur, vlabel, take);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(owner + k), next);
    claimed += static_cast<std::size_t>(std::popcount(
        static_cast<unsigned>(_mm_movemask_ps(_mm_castsi128_ps(take)))));
  }
  for (; k < n; ++k) {
    if (owner[k] < 0 && scale * profile[k] >= level) {
      owner[k] = label;
      ++claimed;
    }
  }
  return claimed;
}

std::size_t count_mismatch(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  std::size_t count = 0;
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    const auto eq = static_cast<unsigned>(
        _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb))));
    count += 8 - static_cast<std::size_t>(std::popcount(eq));
  }
  for (; k < n; ++k) count += a[k] != b[k];
  return count;
}

SignedMoments signed_moments(const double* c, int n) {
  if (n < 2) {
    return scalar_table().signed_moments(c, n);
  }
  // For masks m, m+1, m+2, m+3 (m divisible by 4) the signs of c_0 and c_1
  // follow fixed lane patterns; the rest is a broadcast scalar.
  const __m256d lane0 = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  const __m256d lane1 = _mm256_setr_pd(1.0, 1.0, -1.0, -1.0);
  const __m256d low = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(c[0]), lane0),
                                    _mm256_mul_pd(_mm256_set1_pd(c[1]), lane1));
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  __m256d abs_acc = _mm256_setzero_pd();
  __m256d sq_acc = _mm256_setzero_pd();
  const std::uint32_t masks = 1u << n;
  for (std::uint32_t m = 0; m < masks; m += 4) {
    double base = 0.0;
    for (int i = 2; i < n; ++i) base += (m >> i & 1u) ? -c[i] : c[i];
    const __m256d sum = _mm256_add_pd(_mm256_set1_pd(base), low);
    abs_acc = _mm256_add_pd(abs_acc, _mm256_andnot_pd(sign_bit, sum));
    sq_acc = _mm256_add_pd(sq_acc, _mm256_mul_pd(sum, sum));
  }
  alignas(32) double a[4];
  alignas(32) double q[4];
  _mm256_store_pd(a, abs_acc);
  _mm256_store_pd(q, sq_acc);
  return {(a[0] + a[1]) + (a[2] + a[3]), (q[0] + q[1]) + (q[2] + q[3])};
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{eigenfield, claim_row, count_mismatch, signed_moments};
  return table;
}

}  // namespace sepwidth::kernels
