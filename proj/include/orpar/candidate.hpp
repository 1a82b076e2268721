#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orpar/char_maps.hpp"
#include "orpar/klein.hpp"
#include "orpar/ruler.hpp"

namespace orpar {

/// Oriented 2-secant of Q, given by its entry and leave points on the unit
/// sphere of the chart. `klein` is the Klein vector of the oriented 2-plane
/// span((1,entry), (1,leave)) of the chart R^4 and carries the line metric.
struct GlLine {
  Vec3 entry;
  Vec3 leave;
  OrientedLine klein;
};

/// Throws InvalidParameter if the points coincide.
GlLine gl_line(const Vec3& entry, const Vec3& leave);
/// Oriented secant through the affine point q with direction d (the traversal
/// direction). Throws InvalidParameter if the line misses the open ball.
GlLine secant_through(const Vec3& q, const Vec3& d);

/// Oriented 2-plane of the chart R^4 carried by a star line.
OrientedSubspace chart_plane(const GlLine& line);
/// f(X, JX) for the unit chart lift X of a point of the line, J the positive
/// quarter rotation of the line's plane: > 0 where the traversal enters the ball.
double traversal_value(const GlLine& line, const Vec4& point);

/// One parametrized family of oriented lines with an analytic incidence solver.
class LineFamily {
 public:
  virtual ~LineFamily() = default;
  virtual std::string name() const = 0;
  /// All oriented lines of the family through the non-interior chart point p.
  virtual std::vector<GlLine> lines_through(const Vec4& p) const = 0;
};

struct IncidenceOptions {
  double tol = 1e-9;
  double merge_radius = 1e-6;
  int grid_lat = 128;
  int grid_lon = 256;
  /// Number of grid minima refined per query.
  int max_seeds = 10;
};

/// Candidate gl+ star over a ruler: either the lines x -> rho(x) of a
/// characteristic map or a finite union of parametrized families.
class GlCandidate {
 public:
  /// Throws FixedPointDetected if rho moves some grid point by at most 1e-3.
  static GlCandidate char_map_form(std::string name, Ruler ruler, CharacteristicMap rho,
                                   std::vector<double> seams = {},
                                   const IncidenceOptions& options = {});
  static GlCandidate family_union(std::string name, Ruler ruler,
                                  std::vector<std::shared_ptr<const LineFamily>> families,
                                  std::vector<double> seams = {});

  const std::string& name() const { return name_; }
  const Ruler& ruler() const { return ruler_; }
  bool is_char_map_form() const { return rho_.has_value(); }
  /// Throws NotCharMapForm for family unions.
  const CharacteristicMap& char_map() const;
  /// Horizontal planes z = c where discontinuities are suspected.
  const std::vector<double>& seams() const { return seams_; }

  /// rho(x) for char-map form; for family unions the leave point of the unique
  /// entering line at x (NotCharMapForm when that is not unique).
  Vec3 characteristic(const Vec3& x) const;
  /// The line entering the ball at the sphere point x.
  GlLine entering_line(const Vec3& x) const;

  /// All candidate lines through the non-interior chart point p (homogeneous
  /// (w, a, b, c), ideal points allowed). Throws InteriorPoint otherwise.
  std::vector<GlLine> lines_through_point(const Vec4& p) const;
  /// Same, with explicit tolerances (char-map form only uses them).
  std::vector<GlLine> lines_through_point(const Vec4& p, const IncidenceOptions& options) const;

  /// Precomputed line planes on the seeding grid.
  struct GridCache;

 private:
  GlCandidate() = default;
  std::vector<GlLine> char_map_lines(const Vec4& p, const IncidenceOptions& options) const;

  std::string name_;
  Ruler ruler_ = Ruler::standard();
  std::optional<CharacteristicMap> rho_;
  std::vector<std::shared_ptr<const LineFamily>> families_;
  std::vector<double> seams_;
  IncidenceOptions options_;
  std::shared_ptr<const GridCache> grid_;
};

/// Merges lines closer than `radius` in the line metric, keeping the first.
std::vector<GlLine> merge_lines(std::vector<GlLine> lines, double radius);

// Built-in stars.
GlCandidate clifford_star(const Ruler& ruler);
GlCandidate rotational_involution_star(const Ruler& ruler, double beta);
GlCandidate glued_star(const Ruler& ruler, double beta1, double beta2);
GlCandidate pinched_band_star(const Ruler& ruler, double alpha);
GlCandidate custom_star(const Ruler& ruler, int n_lat, int n_lon, std::vector<Vec3> values);

}  // namespace orpar
