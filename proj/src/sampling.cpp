#include "orpar/sampling.hpp"

#include <cmath>
#include <numbers>

namespace orpar {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stratum, std::uint64_t index) {
  return mix_seed(mix_seed(mix_seed(seed) ^ stratum) ^ index);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Box-Muller on our own uniform draws so streams are identical across standard libraries.
double gaussian(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Vec random_gaussian(Rng& rng, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = gaussian(rng);
  return v;
}

Vec4 random_unit4(Rng& rng) {
  Vec4 v;
  do {
    for (int i = 0; i < 4; ++i) v[i] = gaussian(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Vec3 random_unit3(Rng& rng) {
  Vec3 v;
  do {
    for (int i = 0; i < 3; ++i) v[i] = gaussian(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

std::vector<Vec4> halton_sphere3(int n, std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  const double shift[3] = {uniform01(rng), uniform01(rng), uniform01(rng)};
  std::vector<Vec4> out;
  out.reserve(static_cast<std::size_t>(n));
  const unsigned bases[3] = {2, 3, 5};
  for (int k = 0; k < n; ++k) {
    double u[3];
    for (int d = 0; d < 3; ++d) {
      u[d] = radical_inverse(static_cast<std::uint64_t>(k) + 1, bases[d]) + shift[d];
      u[d] -= std::floor(u[d]);
    }
    const double a = std::sqrt(1.0 - u[0]);
    const double b = std::sqrt(u[0]);
    const double t1 = 2.0 * std::numbers::pi * u[1];
    const double t2 = 2.0 * std::numbers::pi * u[2];
    out.emplace_back(a * std::sin(t1), a * std::cos(t1), b * std::sin(t2), b * std::cos(t2));
  }
  return out;
}

Vec3 spherical_point(double polar, double azimuth) {
  const double s = std::sin(polar);
  return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

SphereGrid SphereGrid::make(int n_lat, int n_lon) {
  SphereGrid g;
  g.n_lat = n_lat;
  g.n_lon = n_lon;
  g.points.reserve(static_cast<std::size_t>(n_lat * n_lon));
  for (int i = 0; i < n_lat; ++i) {
    const double polar = (i + 0.5) * std::numbers::pi / n_lat;
    for (int j = 0; j < n_lon; ++j) {
      g.points.push_back(spherical_point(polar, 2.0 * std::numbers::pi * j / n_lon));
    }
  }
  return g;
}

}  // namespace orpar
