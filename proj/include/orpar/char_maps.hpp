#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orpar/forms.hpp"

namespace orpar {

/// Continuous self-map of the unit sphere sending the entry point of each star
/// line to its leave point.
class CharacteristicMap {
 public:
  using Fn = std::function<Vec3(const Vec3&)>;

  CharacteristicMap(std::string name, Fn rho, bool claims_involution = false,
                    bool claims_rotational = false)
      : name_(std::move(name)),
        rho_(std::move(rho)),
        claims_involution_(claims_involution),
        claims_rotational_(claims_rotational) {}

  Vec3 operator()(const Vec3& x) const { return rho_(x); }
  const std::string& name() const { return name_; }
  bool claims_involution() const { return claims_involution_; }
  bool claims_rotational() const { return claims_rotational_; }

  /// min |rho(x) - x| over a lat/long grid of about n_lat * n_lon points.
  double min_displacement(int n_lat = 100, int n_lon = 100) const;
  /// Grid proxy for injectivity: no two grid points further apart than
  /// `separation` are mapped within `collapse` of each other.
  bool injective_on_grid(int n_lat = 40, int n_lon = 80, double separation = 1e-3,
                         double collapse = 1e-6) const;
  /// Numeric inverse: grid seeding and Gauss-Newton on the sphere.
  Vec3 inverse(const Vec3& y) const;

 private:
  std::string name_;
  Fn rho_;
  bool claims_involution_;
  bool claims_rotational_;
};

/// rho = -id.
CharacteristicMap antipodal_map();

/// The decreasing involution g of [-1, 1] of the rotational family with
/// parameter beta (|beta| < ln 2); beta = 0 is z -> -z.
double rotational_g(double beta, double z);

/// rho(phi, z) = (phi + pi, g(z)). Throws InvalidParameter unless |beta| < ln 2.
CharacteristicMap rotational_involution_map(double beta);
/// sigma_1 on z >= 0 and sigma_2 on z <= 0.
CharacteristicMap glued_map(double beta1, double beta2);
/// rho(x) = -R(alpha (1 - z^2)) x, R a rotation about the z-axis. For alpha near pi
/// the chords near the equator are short and twisted; alpha = 3 breaks the
/// two-lines axiom (negative control for the verifier).
CharacteristicMap pinched_band_map(double alpha);

/// Map given by samples on the grid polar = i pi / (n_lat - 1), azimuth = 2 pi j / n_lon,
/// bilinearly interpolated in (polar, azimuth) and renormalized. Throws
/// FixedPointDetected or InvalidParameter when the interpolant fails the checks.
CharacteristicMap grid_map(int n_lat, int n_lon, std::vector<Vec3> values);

/// Rotation by theta about the chart z-axis.
Vec3 rotate_z(const Vec3& x, double theta);

}  // namespace orpar
