#include "sepwidth/foam/eigenfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/kernels/kernels.hpp"

namespace sepwidth::foam {

namespace {
constexpr double kPi = std::numbers::pi;

double value_at(std::span<const double> x) {
  double f = 1.0;
  for (double v : x) f *= std::sin(kPi * v);
  return f;
}
}  // namespace

geom::ScalarField eigenfield(int n) {
  if (n < 1) throw PreconditionError("eigenfield dimension must be positive");
  geom::ScalarField f;
  f.dim = n;
  f.min_value = 0.0;
  f.max_value = 1.0;
  f.value = value_at;
  f.gradient = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t d = 0; d < x.size(); ++d) {
      double p = kPi * std::cos(kPi * x[d]);
      for (std::size_t e = 0; e < x.size(); ++e)
        if (e != d) p *= std::sin(kPi * x[e]);
      g[d] = p;
    }
  };
  if (n <= kernels::kMaxEigenDim) {
    f.batch = [n](std::size_t count, const double* coords, double* value, double* grad_norm) {
      kernels::active().eigenfield(n, count, coords, value, grad_norm);
    };
  }
  return f;
}

double eigenvalue_check(int n, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const double h = 1e-3;
  std::vector<double> x(static_cast<std::size_t>(n));
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = rng.uniform();
    const double f0 = value_at(x);
    double lap = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      auto at = [&](double off) {
        auto y = x;
        y[d] += off;
        return value_at(y);
      };
      lap += (-at(2 * h) + 16 * at(h) - 30 * f0 + 16 * at(-h) - at(-2 * h)) / (12 * h * h);
    }
    const double expect = n * kPi * kPi * f0;
    const double err = std::abs(-lap - expect) / (n * kPi * kPi * std::max(std::abs(f0), 1e-3));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace sepwidth::foam
