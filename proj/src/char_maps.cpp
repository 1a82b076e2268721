#include "orpar/char_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "orpar/sampling.hpp"

namespace orpar {

namespace {

// Orthonormal tangent pair at a unit vector.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& x) {
  const Vec3 seed = std::abs(x[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t1 = (seed - seed.dot(x) * x).normalized();
  return {t1, x.cross(t1)};
}

Vec3 rotational_rho(double beta, const Vec3& x) {
  const double z = std::clamp(x[2], -1.0, 1.0);
  const double g = rotational_g(beta, z);
  const double rh = std::hypot(x[0], x[1]);
  if (rh < 1e-15) return Vec3(0.0, 0.0, g);
  const double s = std::sqrt(std::max(0.0, 1.0 - g * g)) / rh;
  return Vec3(-x[0] * s, -x[1] * s, g);
}

void check_beta(double beta) {
  if (!(std::abs(beta) < std::numbers::ln2)) {
    throw GeometryError(ErrorCode::InvalidParameter, "beta must satisfy |beta| < ln 2");
  }
}

}  // namespace

double CharacteristicMap::min_displacement(int n_lat, int n_lon) const {
  const SphereGrid grid = SphereGrid::make(n_lat, n_lon);
  auto displacement = [&](const Vec3& x) { return ((*this)(x) - x).norm(); };
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(grid.points.size());
  for (std::size_t i = 0; i < grid.points.size(); ++i) ranked.emplace_back(displacement(grid.points[i]), i);
  const std::size_t seeds = std::min<std::size_t>(16, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(seeds), ranked.end());
  // Grid minima miss fixed points between grid rows; refine the best cells by
  // a pattern search on the sphere down from the grid spacing.
  double best = std::numeric_limits<double>::infinity();
  const double spacing = std::acos(-1.0) / std::max(n_lat, 1);
  for (std::size_t s = 0; s < seeds; ++s) {
    Vec3 x = grid.points[ranked[s].second];
    double value = ranked[s].first;
    int budget = 4000;
    for (double h = spacing; h > 1e-9 && value > 0.0 && budget-- > 0;) {
      const auto [a, b] = tangent_basis(x);
      bool moved = false;
      for (const Vec3& dir : {a, Vec3(-a), b, Vec3(-b)}) {
        const Vec3 y = (x + h * dir).normalized();
        const double v = displacement(y);
        if (v < value) {
          x = y;
          value = v;
          moved = true;
          break;
        }
      }
      if (!moved) h *= 0.5;
    }
    best = std::min(best, value);
  }
  return best;
}

bool CharacteristicMap::injective_on_grid(int n_lat, int n_lon, double separation,
                                          double collapse) const {
  const SphereGrid grid = SphereGrid::make(n_lat, n_lon);
  std::vector<Vec3> image;
  image.reserve(grid.points.size());
  for (const Vec3& x : grid.points) image.push_back((*this)(x));
  for (std::size_t i = 0; i < image.size(); ++i) {
    for (std::size_t j = i + 1; j < image.size(); ++j) {
      if ((image[i] - image[j]).norm() < collapse &&
          (grid.points[i] - grid.points[j]).norm() > separation) {
        return false;
      }
    }
  }
  return true;
}

Vec3 CharacteristicMap::inverse(const Vec3& y) const {
  const SphereGrid grid = SphereGrid::make(64, 128);
  Vec3 x = grid.points.front();
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : grid.points) {
    const double d = ((*this)(p) - y).norm();
    if (d < best) {
      best = d;
      x = p;
    }
  }
  const double h = 1e-7;
  for (int it = 0; it < 60 && best > 1e-14; ++it) {
    const auto [t1, t2] = tangent_basis(x);
    Eigen::Matrix<double, 3, 2> jac;
    jac.col(0) = ((*this)((x + h * t1).normalized()) - (*this)((x - h * t1).normalized())) / (2 * h);
    jac.col(1) = ((*this)((x + h * t2).normalized()) - (*this)((x - h * t2).normalized())) / (2 * h);
    const Vec3 r = (*this)(x) - y;
    const Eigen::Vector2d step = jac.colPivHouseholderQr().solve(-r);
    // Halve the step until the residual decreases.
    double scale = 1.0;
    for (int k = 0; k < 30; ++k, scale *= 0.5) {
      const Vec3 cand = (x + scale * (step[0] * t1 + step[1] * t2)).normalized();
      const double d = ((*this)(cand) - y).norm();
      if (d < best) {
        best = d;
        x = cand;
        break;
      }
    }
    if (scale < 1e-8) break;
  }
  return x;
}

CharacteristicMap antipodal_map() {
  return CharacteristicMap("antipodal", [](const Vec3& x) { return Vec3(-x); }, true, true);
}

double rotational_g(double beta, double z) {
  if (std::abs(beta) < 1e-12) return -z;
  // h is normalized separately on each half so that h(+-1) = +-1.
  auto h = [beta](double t) {
    return t >= 0 ? std::expm1(beta * t) / std::expm1(beta) : std::expm1(beta * t) / -std::expm1(-beta);
  };
  const double y = -h(z);
  const double g = y >= 0 ? std::log1p(y * std::expm1(beta)) / beta
                          : std::log1p(-y * std::expm1(-beta)) / beta;
  return std::clamp(g, -1.0, 1.0);
}

CharacteristicMap rotational_involution_map(double beta) {
  check_beta(beta);
  return CharacteristicMap(
      "rotational", [beta](const Vec3& x) { return rotational_rho(beta, x); }, true, true);
}

CharacteristicMap glued_map(double beta1, double beta2) {
  check_beta(beta1);
  check_beta(beta2);
  return CharacteristicMap(
      "glued",
      [beta1, beta2](const Vec3& x) { return rotational_rho(x[2] >= 0 ? beta1 : beta2, x); },
      beta1 == beta2, true);
}

CharacteristicMap pinched_band_map(double alpha) {
  return CharacteristicMap(
      "pinched_band",
      [alpha](const Vec3& x) { return Vec3(-rotate_z(x, alpha * (1.0 - x[2] * x[2]))); }, false,
      true);
}

CharacteristicMap grid_map(int n_lat, int n_lon, std::vector<Vec3> values) {
  if (n_lat < 2 || n_lon < 3 || values.size() != static_cast<std::size_t>(n_lat * n_lon)) {
    throw GeometryError(ErrorCode::InvalidParameter, "grid map needs n_lat*n_lon sample values");
  }
  for (Vec3& v : values) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw GeometryError(ErrorCode::InvalidParameter, "grid map values must be nonzero and finite");
    }
    v /= n;
  }
  auto rho = [n_lat, n_lon, values = std::move(values)](const Vec3& x) {
    const double polar = std::acos(std::clamp(x[2], -1.0, 1.0));
    double az = std::atan2(x[1], x[0]);
    if (az < 0) az += 2 * std::numbers::pi;
    const double fi = polar / std::numbers::pi * (n_lat - 1);
    const double fj = az / (2 * std::numbers::pi) * n_lon;
    const int i0 = std::min(static_cast<int>(fi), n_lat - 2);
    const int j0 = static_cast<int>(fj) % n_lon;
    const int j1 = (j0 + 1) % n_lon;
    const double u = fi - i0;
    const double v = fj - std::floor(fj);
    auto at = [&](int i, int j) -> const Vec3& { return values[static_cast<std::size_t>(i * n_lon + j)]; };
    const Vec3 mix = (1 - u) * ((1 - v) * at(i0, j0) + v * at(i0, j1)) +
                     u * ((1 - v) * at(i0 + 1, j0) + v * at(i0 + 1, j1));
    return Vec3(mix.normalized());
  };
  CharacteristicMap map("custom", std::move(rho));
  if (map.min_displacement() <= 1e-3) {
    throw GeometryError(ErrorCode::FixedPointDetected, "custom map has a fixed point");
  }
  if (!map.injective_on_grid()) {
    throw GeometryError(ErrorCode::InvalidParameter, "custom map is not injective on the grid");
  }
  return map;
}

Vec3 rotate_z(const Vec3& x, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Vec3(c * x[0] - s * x[1], s * x[0] + c * x[1], x[2]);
}

}  // namespace orpar
