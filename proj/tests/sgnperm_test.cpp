#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/sgnperm/averages.hpp"
#include "sepwidth/sgnperm/signed_permutation.hpp"
#include "test_support.hpp"

namespace sepwidth::sgnperm {
namespace {

using testing::act;
using testing::brute_force_group;

TEST(SignedPermutation, GroupOrders) {
  EXPECT_EQ(enumerate_group(1).size(), 2u);
  EXPECT_EQ(enumerate_group(2).size(), 8u);
  EXPECT_EQ(enumerate_group(3).size(), 48u);
  EXPECT_EQ(group_order(8), 10321920u);
}

TEST(SignedPermutation, EnumerationIsDistinctAndDeterministic) {
  const auto first = enumerate_group(4);
  const auto second = enumerate_group(4);
  ASSERT_EQ(first.size(), 384u);
  EXPECT_EQ(first, second);
  std::set<std::pair<std::vector<int>, std::uint32_t>> seen;
  for (const auto& g : first) {
    std::vector<int> p;
    for (int i = 0; i < 4; ++i) p.push_back(g.perm(i));
    seen.insert({p, g.sign_mask()});
  }
  EXPECT_EQ(seen.size(), first.size());
}

TEST(SignedPermutation, EnumerationOrderIsLexicographic) {
  const auto g = enumerate_group(2);
  // (id,++), (id,-+), (id,+-), (id,--), then the swap.
  EXPECT_EQ(g[0].perm(0), 0);
  EXPECT_EQ(g[0].sign_mask(), 0u);
  EXPECT_EQ(g[1].sign_mask(), 1u);
  EXPECT_EQ(g[3].sign_mask(), 3u);
  EXPECT_EQ(g[4].perm(0), 1);
}

TEST(SignedPermutation, OutOfRangeDimensionsAreRejected) {
  EXPECT_THROW(enumerate_group(0), PreconditionError);
  EXPECT_THROW(enumerate_group(9), PreconditionError);
  EXPECT_THROW(for_each_element(9, [](const SignedPermutation&) {}), PreconditionError);
}

TEST(SignedPermutation, ApplyMatchesDefinition) {
  const auto id = SignedPermutation::identity(2);
  EXPECT_EQ(id.apply(std::vector<double>{1.0, 2.0}), (std::vector<double>{1.0, 2.0}));
  const SignedPermutation s(std::vector<int>{1, 0}, std::vector<int>{1, -1});
  EXPECT_EQ(s.apply(std::vector<double>{3.0, 4.0}), (std::vector<double>{4.0, -3.0}));
  EXPECT_THROW(s.apply(std::vector<double>{1.0, 2.0, 3.0}), PreconditionError);
}

TEST(SignedPermutation, RejectsNonBijections) {
  EXPECT_THROW(SignedPermutation(std::vector<int>{0, 0}, std::vector<int>{1, 1}),
               PreconditionError);
  EXPECT_THROW(SignedPermutation(std::vector<int>{0, 1}, std::vector<int>{1, 2}),
               PreconditionError);
}

TEST(SignedPermutation, IsometryAndInverse) {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : sample_group(n, 50, 3 + static_cast<std::uint64_t>(n))) {
      const auto v = random_unit_vector(n, rng);
      const auto w = g.apply(v);
      EXPECT_NEAR(std::sqrt(testing::dot(w, w)), 1.0, 1e-14);
      EXPECT_EQ(g.inverse().apply(w), v);
    }
  }
}

TEST(SignedPermutation, ClosureUnderComposition) {
  const auto group = enumerate_group(4);
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& g = group[rng.below(group.size())];
    const auto& h = group[rng.below(group.size())];
    const auto gh = g.compose(h);
    EXPECT_NE(std::find(group.begin(), group.end(), gh), group.end());
    const std::vector<double> v{0.1, -0.7, 0.3, 1.9};
    EXPECT_EQ(gh.apply(v), g.apply(h.apply(v)));
  }
}

TEST(SignedPermutation, SamplingIsDeterministic) {
  EXPECT_EQ(sample_group(7, 100, 5), sample_group(7, 100, 5));
  EXPECT_NE(sample_group(7, 100, 5), sample_group(7, 100, 6));
  for (const auto& g : sample_group(1, 64, 9)) EXPECT_EQ(g.perm(0), 0);
}

TEST(SignedPermutation, CellActionAgreesWithPointAction) {
  const int r = 10;
  for (const auto& g : enumerate_group(3)) {
    for (int c0 : {0, 3, 9}) {
      const std::vector<int> cell{c0, 5, 1};
      std::vector<int> out(3);
      g.apply_cell(cell, r, out);
      const Vec3 center{(c0 + 0.5) / r, 5.5 / r, 1.5 / r};
      Vec3 moved = g.apply(center);
      for (int k = 0; k < 3; ++k) {
        const double wrapped = moved[k] - std::floor(moved[k]);
        EXPECT_EQ(static_cast<int>(std::floor(wrapped * r)), out[static_cast<std::size_t>(k)]);
      }
    }
  }
}

// Independent oracle: brute-force enumeration by recursion.
double oracle_abs_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  int count = 0;
  brute_force_group(static_cast<int>(a.size()),
                    [&](const std::vector<int>& p, const std::vector<int>& s) {
                      sum += std::abs(testing::dot(a, act(p, s, b)));
                      ++count;
                    });
  return sum / count;
}

TEST(GroupAverages, FrozenSmallCases) {
  EXPECT_DOUBLE_EQ(avg_abs_dot(std::vector<double>{1.0}, std::vector<double>{1.0}), 1.0);
  EXPECT_DOUBLE_EQ(avg_sq_dot(std::vector<double>{1.0}, std::vector<double>{-1.0}), 1.0);
  // Enumerated offline over the 8 elements.
  EXPECT_NEAR(avg_abs_dot(std::vector<double>{1.0, 0.0}, std::vector<double>{1.0, 0.0}), 0.5,
              1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(avg_abs_dot(std::vector<double>{r, r}, std::vector<double>{r, r}), 0.5, 1e-15);
  EXPECT_NEAR(avg_sq_dot(std::vector<double>{1, 0, 0}, std::vector<double>{0, 1, 0}),
              1.0 / 3.0, 1e-15);
  EXPECT_NEAR(avg_abs_dot(std::vector<double>{1, 0, 0}, std::vector<double>{0, 1, 0}),
              1.0 / 3.0, 1e-15);
}

TEST(GroupAverages, MatchesBruteForceOracle) {
  Rng rng(77);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_unit_vector(n, rng);
      const auto b = random_unit_vector(n, rng);
      EXPECT_NEAR(avg_abs_dot(a, b), oracle_abs_dot(a, b), 1e-13);
    }
  }
}

TEST(GroupAverages, NonUnitInputsRejected) {
  EXPECT_THROW(avg_abs_dot(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0}),
               PreconditionError);
  EXPECT_THROW(avg_sq_dot(std::vector<double>{1.0, 0.0}, std::vector<double>{1.0}),
               PreconditionError);
}

TEST(GroupAverages, SquaredDotIdentityAndBound) {
  Rng rng(1);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_unit_vector(n, rng);
      const auto b = random_unit_vector(n, rng);
      const auto avg = dot_averages(a, b);
      EXPECT_NEAR(avg.sq_dot, 1.0 / n, tol::kExactIdentity);
      EXPECT_LE(avg.abs_dot, std::sqrt(avg.sq_dot) + 1e-15);
      EXPECT_LE(avg.abs_dot, 1.0 / std::sqrt(n) + tol::kBound);
    }
  }
}

TEST(GroupAverages, ProjectionExamples) {
  const auto full = Subspace::coordinate(3, std::vector<int>{0, 1, 2});
  Rng rng(4);
  const auto b = random_unit_vector(3, rng);
  EXPECT_NEAR(avg_projection_length(b, full), 1.0, 1e-15);

  const auto a = random_unit_vector(4, rng);
  const auto b4 = random_unit_vector(4, rng);
  const Subspace line(4, {a});
  EXPECT_NEAR(avg_projection_length(b4, line), avg_abs_dot(a, b4), 1e-15);

  const auto axis = Subspace::coordinate(2, std::vector<int>{0});
  EXPECT_NEAR(avg_projection_length(std::vector<double>{1.0, 0.0}, axis), 0.5, 1e-15);
}

TEST(GroupAverages, ProjectionIdentityAndBound) {
  Rng rng(2);
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto subspace = random_subspace(n, m, rng);
        const auto b = random_unit_vector(n, rng);
        const auto avg = projection_averages(b, subspace);
        EXPECT_NEAR(avg.sq_length, static_cast<double>(m) / n, tol::kExactIdentity);
        EXPECT_LE(avg.length, std::sqrt(static_cast<double>(m) / n) + tol::kBound);
      }
    }
  }
}

TEST(GroupAverages, JacobianExamples) {
  Rng rng(8);
  const auto l = random_subspace(3, 3, rng);
  EXPECT_NEAR(avg_projection_jacobian(l, l), 1.0, 1e-14);

  const auto e0 = Subspace::coordinate(2, std::vector<int>{0});
  EXPECT_NEAR(avg_projection_jacobian(e0, e0), 0.5, 1e-15);

  const auto plane = Subspace::coordinate(3, std::vector<int>{0, 1});
  const auto avg = jacobian_averages(plane, plane);
  EXPECT_NEAR(avg.sq_det, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(avg.abs_det, 1.0 / 3.0, 1e-15);
}

TEST(GroupAverages, JacobianIdentityAndBound) {
  Rng rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto l1 = random_subspace(n, m, rng);
        const auto l2 = random_subspace(n, m, rng);
        const auto avg = jacobian_averages(l1, l2);
        EXPECT_NEAR(avg.sq_det, 1.0 / binomial(n, m), tol::kExactIdentity);
        EXPECT_LE(avg.abs_det, 1.0 / std::sqrt(binomial(n, m)) + tol::kBound);
      }
    }
  }
  EXPECT_THROW(jacobian_averages(random_subspace(3, 1, rng), random_subspace(3, 2, rng)),
               PreconditionError);
}

TEST(GroupAverages, SubspaceRejectsNonOrthonormalBasis) {
  EXPECT_THROW(Subspace(2, {{1.0, 0.0}, {1.0, 1e-3}}), PreconditionError);
  EXPECT_THROW(Subspace(2, {{1.0 + 1e-9, 0.0}}), PreconditionError);
}

TEST(GroupAverages, SampledMomentsBeyondEnumeration) {
  Rng rng(7);
  const auto a = random_unit_vector(20, rng);
  const auto b = random_unit_vector(20, rng);
  const auto m = sampled_dot_moments(a, b, 100000, 7);
  EXPECT_LT(std::abs(m.sq_dot - 1.0 / 20.0), 3.0 * m.sq_dot_se);
}

TEST(Determinant, MatchesCofactorExpansion) {
  const std::vector<double> a{2, -1, 0, 1, 3, 4, 0, 5, -2};
  const double cofactor = 2 * (3 * -2 - 4 * 5) - (-1) * (1 * -2 - 4 * 0) + 0;
  EXPECT_NEAR(determinant(a, 3), cofactor, 1e-12);
  EXPECT_EQ(determinant({0, 0, 0, 0}, 2), 0.0);
}

}  // namespace
}  // namespace sepwidth::sgnperm
