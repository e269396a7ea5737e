#pragma once

namespace sepwidth::tol {

// Exact algebraic identities evaluated in floating point.
inline constexpr double kExactIdentity = 1e-9;
// Geometric predicates (orientation, on-plane, barycentric).
inline constexpr double kGeometric = 1e-12;
// Slack on the averaging bounds for exact group averages.
inline constexpr double kBound = 1e-12;
// Unit-norm check on inputs to the group averages.
inline constexpr double kUnitNorm = 1e-10;
// Orthonormality check on subspace bases.
inline constexpr double kOrthonormal = 1e-12;
// Monte Carlo acceptance, in standard errors.
inline constexpr double kMcSigmas = 4.0;
// Magnitude of the translation jitter applied on degenerate poses.
inline constexpr double kJitter = 1e-6;
// Number of jitter retries before giving up.
inline constexpr int kJitterRetries = 5;

}  // namespace sepwidth::tol
