#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sepwidth/common/vec3.hpp"

namespace sepwidth::sgnperm {

/// A coordinate permutation composed with coordinate sign flips, acting on
/// R^N by (perm, signs) v = (signs_i * v_{perm_i})_i.
class SignedPermutation {
 public:
  static constexpr int kMaxDim = 32;

  /// `perm` must be a bijection of {0..N-1}; `signs` entries must be +1/-1.
  SignedPermutation(std::span<const int> perm, std::span<const int> signs);
  static SignedPermutation identity(int n);

  int dim() const { return n_; }
  int perm(int i) const { return perm_[static_cast<std::size_t>(i)]; }
  int sign(int i) const { return (sign_mask_ >> i & 1u) ? -1 : 1; }
  std::uint32_t sign_mask() const { return sign_mask_; }

  std::vector<double> apply(std::span<const double> v) const;
  /// N = 3 only.
  Vec3 apply(const Vec3& v) const;
  /// Action on a cell index of an R-periodic grid whose cells are centered at
  /// (c + 1/2)/R: maps the cell containing y to the cell containing s(y).
  void apply_cell(std::span<const int> cell, int resolution, std::span<int> out) const;

  SignedPermutation inverse() const;
  /// (*this)(other(v)).
  SignedPermutation compose(const SignedPermutation& other) const;

  friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
    return a.n_ == b.n_ && a.sign_mask_ == b.sign_mask_ && a.perm_ == b.perm_;
  }

 private:
  SignedPermutation() = default;

  int n_ = 0;
  std::array<std::uint8_t, kMaxDim> perm_{};
  std::uint32_t sign_mask_ = 0;
};

inline constexpr int kMaxEnumerationDim = 8;

/// 2^N * N!.
std::uint64_t group_order(int n);

/// Visits every element once, in lexicographic order of the permutation and,
/// within a permutation, increasing sign bitmask. 1 <= N <= 8.
void for_each_element(int n, const std::function<void(const SignedPermutation&)>& visit);

/// All 2^N N! elements in the same order as for_each_element.
std::vector<SignedPermutation> enumerate_group(int n);

/// I.i.d. uniform group elements; deterministic in `seed`. 1 <= N <= 32.
std::vector<SignedPermutation> sample_group(int n, std::size_t count, std::uint64_t seed);

}  // namespace sepwidth::sgnperm
