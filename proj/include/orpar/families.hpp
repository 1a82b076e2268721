#pragma once

#include <functional>
#include <memory>

#include "orpar/candidate.hpp"

namespace orpar {

/// Orientation recipe for a family of lines: non-horizontal lines point up or
/// down, horizontal lines are taken with both orientations.
enum class Tilt { Up, Down };

/// Apex position g: [0, 1/2] -> [0, 1) given by samples at equally spaced nodes
/// and linear interpolation.
class ApexProfile {
 public:
  /// Throws InvalidParameter unless the table has >= 2 finite values in [0, 1)
  /// that are strictly monotone on a 10^3 grid.
  explicit ApexProfile(std::vector<double> table);
  /// g(t) = sqrt(3) t.
  static ApexProfile standard();

  double operator()(double t) const;
  const std::vector<double>& table() const { return table_; }

 private:
  std::vector<double> table_;
};

/// G1: for t in [0, 1/2], the line L_t through p_t = (sqrt(1-t^2), 0, t) and
/// q_t = (g(t), 0, 0), rotated about the vertical axis through q_t.
class ConeFamily final : public LineFamily {
 public:
  ConeFamily(ApexProfile g, Tilt tilt) : g_(std::move(g)), tilt_(tilt) {}

  std::string name() const override { return "cone_family_G1"; }
  std::vector<GlLine> lines_through(const Vec4& p) const override;

  /// All t in [0, 1/2] for which C_t passes through the chart point p.
  std::vector<double> cone_parameters(const Vec4& p) const;
  const ApexProfile& profile() const { return g_; }
  /// Horizontal distance from the apex to the sphere point p_t.
  double run(double t) const;

 private:
  ApexProfile g_;
  Tilt tilt_;
};

/// G2: the ordinary star of lines through the chart origin.
class OriginStar final : public LineFamily {
 public:
  explicit OriginStar(Tilt tilt) : tilt_(tilt) {}

  std::string name() const override { return "origin_star_G2"; }
  std::vector<GlLine> lines_through(const Vec4& p) const override;

 private:
  Tilt tilt_;
};

std::shared_ptr<const ConeFamily> cone_family_G1(ApexProfile g = ApexProfile::standard(),
                                                 Tilt tilt = Tilt::Up);
std::shared_ptr<const OriginStar> origin_star_G2(Tilt tilt);

/// G1 upward, G2 downward, horizontal lines through o both ways.
GlCandidate combine_case1(const Ruler& ruler, ApexProfile g = ApexProfile::standard());
/// Everything upward, horizontal lines both ways.
GlCandidate combine_case2(const Ruler& ruler, ApexProfile g = ApexProfile::standard());

}  // namespace orpar
