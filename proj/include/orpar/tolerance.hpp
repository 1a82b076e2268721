#pragma once

// Numerical thresholds shared by every geometric predicate.
namespace orpar::tol {

inline constexpr double kOrthonormal = 1e-12;
// Zero-eigenvalue threshold for signatures, relative to the largest |eigenvalue|.
inline constexpr double kSignatureRel = 1e-9;
inline constexpr double kRank = 1e-9;
inline constexpr double kPrincipalAngle = 1e-9;
inline constexpr double kCanonicalSign = 1e-12;
inline constexpr double kFrameDet = 1e-12;
inline constexpr double kDependent = 1e-12;
inline constexpr double kNullInput = 1e-8;
inline constexpr double kDerivativeRank = 1e-8;
inline constexpr double kParallelAngle = 1e-6;

}  // namespace orpar::tol
