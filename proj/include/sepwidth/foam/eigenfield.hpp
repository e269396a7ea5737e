#pragma once

#include <cstdint>

#include "sepwidth/geom/field.hpp"

namespace sepwidth::foam {

/// f(x) = prod_i sin(pi x_i) on [0,1]^N with its analytic gradient. Range
/// [0, 1]. Batch evaluation goes through the active kernel backend for
/// N <= 8.
geom::ScalarField eigenfield(int n);

/// Largest relative deviation of -Laplacian(f) from N pi^2 f at `samples`
/// uniform points, the Laplacian taken by a fourth-order difference stencil.
/// Points with f < 1e-3 are measured against 1e-3.
double eigenvalue_check(int n, std::size_t samples, std::uint64_t seed);

}  // namespace sepwidth::foam
