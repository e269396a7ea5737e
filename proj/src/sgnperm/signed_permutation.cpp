#include "sepwidth/sgnperm/signed_permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/rng.hpp"

namespace sepwidth::sgnperm {

namespace {

void check_dim(int n, int max) {
  if (n < 1 || n > max) {
    throw PreconditionError("signed permutation dimension " + std::to_string(n) +
                            " outside [1, " + std::to_string(max) + "]");
  }
}

}  // namespace

SignedPermutation::SignedPermutation(std::span<const int> perm, std::span<const int> signs) {
  const int n = static_cast<int>(perm.size());
  check_dim(n, kMaxDim);
  if (signs.size() != perm.size()) throw PreconditionError("perm/signs length mismatch");
  std::uint32_t seen = 0;
  for (int i = 0; i < n; ++i) {
    const int p = perm[static_cast<std::size_t>(i)];
    if (p < 0 || p >= n || (seen >> p & 1u)) throw PreconditionError("perm is not a bijection");
    seen |= 1u << p;
    perm_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(p);
    const int s = signs[static_cast<std::size_t>(i)];
    if (s != 1 && s != -1) throw PreconditionError("signs must be +1 or -1");
    if (s < 0) sign_mask_ |= 1u << i;
  }
  n_ = n;
}

SignedPermutation SignedPermutation::identity(int n) {
  check_dim(n, kMaxDim);
  SignedPermutation s;
  s.n_ = n;
  for (int i = 0; i < n; ++i) s.perm_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return s;
}

std::vector<double> SignedPermutation::apply(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != n_) {
    throw PreconditionError("vector of dimension " + std::to_string(v.size()) +
                            " given to signed permutation of dimension " + std::to_string(n_));
  }
  std::vector<double> out(v.size());
  for (int i = 0; i < n_; ++i) {
    const double x = v[perm_[static_cast<std::size_t>(i)]];
    out[static_cast<std::size_t>(i)] = (sign_mask_ >> i & 1u) ? -x : x;
  }
  return out;
}

Vec3 SignedPermutation::apply(const Vec3& v) const {
  if (n_ != 3) throw PreconditionError("Vec3 action needs a 3-dimensional signed permutation");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const double x = v[perm_[static_cast<std::size_t>(i)]];
    out[i] = (sign_mask_ >> i & 1u) ? -x : x;
  }
  return out;
}

void SignedPermutation::apply_cell(std::span<const int> cell, int resolution,
                                   std::span<int> out) const {
  for (int i = 0; i < n_; ++i) {
    const int c = cell[perm_[static_cast<std::size_t>(i)]];
    out[static_cast<std::size_t>(i)] = (sign_mask_ >> i & 1u) ? resolution - 1 - c : c;
  }
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation inv;
  inv.n_ = n_;
  for (int i = 0; i < n_; ++i) {
    const int p = perm_[static_cast<std::size_t>(i)];
    inv.perm_[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(i);
    if (sign_mask_ >> i & 1u) inv.sign_mask_ |= 1u << p;
  }
  return inv;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& other) const {
  if (other.n_ != n_) throw PreconditionError("composing signed permutations of different dimension");
  SignedPermutation out;
  out.n_ = n_;
  for (int i = 0; i < n_; ++i) {
    const int p = perm_[static_cast<std::size_t>(i)];
    out.perm_[static_cast<std::size_t>(i)] = other.perm_[static_cast<std::size_t>(p)];
    const bool neg = ((sign_mask_ >> i) ^ (other.sign_mask_ >> p)) & 1u;
    if (neg) out.sign_mask_ |= 1u << i;
  }
  return out;
}

std::uint64_t group_order(int n) {
  check_dim(n, 20);
  std::uint64_t order = 1;
  for (int k = 1; k <= n; ++k) order *= 2ULL * static_cast<std::uint64_t>(k);
  return order;
}

void for_each_element(int n, const std::function<void(const SignedPermutation&)>& visit) {
  check_dim(n, kMaxEnumerationDim);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> signs(static_cast<std::size_t>(n));
  do {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i) signs[static_cast<std::size_t>(i)] = (mask >> i & 1u) ? -1 : 1;
      visit(SignedPermutation(perm, signs));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<SignedPermutation> enumerate_group(int n) {
  check_dim(n, kMaxEnumerationDim);
  std::vector<SignedPermutation> out;
  out.reserve(group_order(n));
  for_each_element(n, [&](const SignedPermutation& s) { out.push_back(s); });
  return out;
}

std::vector<SignedPermutation> sample_group(int n, std::size_t count, std::uint64_t seed) {
  check_dim(n, SignedPermutation::kMaxDim);
  Rng rng(seed, 0x5157);
  std::vector<SignedPermutation> out;
  out.reserve(count);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < count; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
    }
    const std::uint64_t bits = rng.next();
    for (int i = 0; i < n; ++i) signs[static_cast<std::size_t>(i)] = (bits >> i & 1u) ? -1 : 1;
    out.emplace_back(perm, signs);
  }
  return out;
}

}  // namespace sepwidth::sgnperm
