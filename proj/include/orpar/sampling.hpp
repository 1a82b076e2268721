#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orpar/forms.hpp"

namespace orpar {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);
/// Seed for (global seed, stratum, index); independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stratum, std::uint64_t index);

Vec4 random_unit4(Rng& rng);
Vec3 random_unit3(Rng& rng);
Vec random_gaussian(Rng& rng, int n);
double uniform01(Rng& rng);

/// Radical inverse of i in the given prime base.
double radical_inverse(std::uint64_t i, unsigned base);

/// Low-discrepancy points of S^3 (Halton in bases 2,3,5 through the uniform
/// quaternion map), shifted by a seed-dependent rotation mod 1. The first n
/// points of a longer sequence equal the shorter one.
std::vector<Vec4> halton_sphere3(int n, std::uint64_t seed);

/// Equiangular latitude/longitude grid on S^2 with cell-centred rows.
struct SphereGrid {
  int n_lat = 0;
  int n_lon = 0;
  std::vector<Vec3> points;  // row-major: index = i * n_lon + j

  static SphereGrid make(int n_lat, int n_lon);
  const Vec3& at(int i, int j) const { return points[static_cast<std::size_t>(i * n_lon + j)]; }
};

Vec3 spherical_point(double polar, double azimuth);

}  // namespace orpar
