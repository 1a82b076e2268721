#include "orpar/candidate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orpar/sampling.hpp"

namespace orpar {

struct GlCandidate::GridCache {
  int n_lat = 0;
  int n_lon = 0;
  std::vector<Vec3> points;
  // Orthonormal bases of the chart planes of the grid lines, as rows of 4.
  std::vector<double> e1;
  std::vector<double> e2;
};

namespace {

std::pair<Vec4, Vec4> orthonormal_pair(const Vec4& a, const Vec4& b) {
  const Vec4 u = a.normalized();
  const Vec4 v = (b - b.dot(u) * u).normalized();
  return {u, v};
}

std::pair<Vec3, Vec3> tangent_pair(const Vec3& x) {
  const Vec3 seed = std::abs(x[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t1 = (seed - seed.dot(x) * x).normalized();
  return {t1, x.cross(t1)};
}

// Distance vector from the unit chart point p to the plane of the line x -> rho(x).
Vec4 incidence_residual(const CharacteristicMap& rho, const Vec3& x, const Vec4& p) {
  const auto [u, v] = orthonormal_pair(affine_point(x), affine_point(rho(x)));
  return p - u.dot(p) * u - v.dot(p) * v;
}

// Levenberg-Marquardt on the sphere in tangent coordinates.
std::pair<Vec3, double> refine_root(const CharacteristicMap& rho, Vec3 x, const Vec4& p) {
  Vec4 r = incidence_residual(rho, x, p);
  double cost = r.norm();
  double lambda = 1e-3;
  const double h = 1e-7;
  for (int it = 0; it < 100 && cost > 1e-14; ++it) {
    const auto [t1, t2] = tangent_pair(x);
    Eigen::Matrix<double, 4, 2> jac;
    jac.col(0) = (incidence_residual(rho, (x + h * t1).normalized(), p) -
                  incidence_residual(rho, (x - h * t1).normalized(), p)) / (2 * h);
    jac.col(1) = (incidence_residual(rho, (x + h * t2).normalized(), p) -
                  incidence_residual(rho, (x - h * t2).normalized(), p)) / (2 * h);
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d grad = jac.transpose() * r;
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::Matrix2d a = jtj;
      a.diagonal() += lambda * jtj.diagonal() + Eigen::Vector2d::Constant(1e-300);
      const Eigen::Vector2d step = a.ldlt().solve(-grad);
      const Vec3 cand = (x + step[0] * t1 + step[1] * t2).normalized();
      const Vec4 rc = incidence_residual(rho, cand, p);
      if (rc.norm() < cost) {
        x = cand;
        r = rc;
        cost = rc.norm();
        lambda = std::max(lambda * 0.1, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return {x, cost};
}

std::shared_ptr<GlCandidate::GridCache> build_grid(const CharacteristicMap& rho, int n_lat,
                                                   int n_lon) {
  auto cache = std::make_shared<GlCandidate::GridCache>();
  const SphereGrid grid = SphereGrid::make(n_lat, n_lon);
  cache->n_lat = n_lat;
  cache->n_lon = n_lon;
  cache->points = grid.points;
  cache->e1.resize(grid.points.size() * 4);
  cache->e2.resize(grid.points.size() * 4);
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    const Vec3& x = grid.points[k];
    const auto [u, v] = orthonormal_pair(affine_point(x), affine_point(rho(x)));
    for (int c = 0; c < 4; ++c) {
      cache->e1[4 * k + c] = u[c];
      cache->e2[4 * k + c] = v[c];
    }
  }
  return cache;
}

}  // namespace

GlLine gl_line(const Vec3& entry, const Vec3& leave) {
  if ((entry - leave).norm() < 1e-12) {
    throw GeometryError(ErrorCode::InvalidParameter, "entry and leave points coincide");
  }
  return {entry, leave, oriented_line_to_klein(affine_point(entry), affine_point(leave))};
}

GlLine secant_through(const Vec3& q, const Vec3& d) {
  const double a = d.squaredNorm();
  const double b = q.dot(d);
  const double c = q.squaredNorm() - 1.0;
  const double disc = b * b - a * c;
  if (a == 0.0 || disc <= 0.0) {
    throw GeometryError(ErrorCode::InvalidParameter, "line is not a secant of the sphere");
  }
  const double root = std::sqrt(disc);
  // Stable quadratic roots.
  const double qq = -(b + std::copysign(root, b));
  double s1 = qq / a;
  double s2 = qq != 0.0 ? c / qq : -s1;
  if (s1 > s2) std::swap(s1, s2);
  Vec3 entry = q + s1 * d;
  Vec3 leave = q + s2 * d;
  return gl_line(entry.normalized(), leave.normalized());
}

OrientedSubspace chart_plane(const GlLine& line) {
  Mat b(4, 2);
  b << affine_point(line.entry), affine_point(line.leave);
  return OrientedSubspace::from_basis(b);
}

double traversal_value(const GlLine& line, const Vec4& point) {
  const OrientedSubspace plane = chart_plane(line);
  const Vec4 u1 = plane.basis().col(0);
  const Vec4 u2 = plane.basis().col(1);
  const Eigen::Vector2d c(u1.dot(point), u2.dot(point));
  const Vec4 x = (c[0] * u1 + c[1] * u2) / c.norm();
  const Vec4 jx = (c[0] * u2 - c[1] * u1) / c.norm();
  return Ruler::chart_form(x, jx);
}

std::vector<GlLine> merge_lines(std::vector<GlLine> lines, double radius) {
  std::vector<GlLine> out;
  for (GlLine& l : lines) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const GlLine& m) {
      return OrientedLine::distance(l.klein, m.klein) < radius;
    });
    if (!dup) out.push_back(std::move(l));
  }
  return out;
}

GlCandidate GlCandidate::char_map_form(std::string name, Ruler ruler, CharacteristicMap rho,
                                       std::vector<double> seams, const IncidenceOptions& options) {
  if (rho.min_displacement() <= 1e-3) {
    throw GeometryError(ErrorCode::FixedPointDetected, "characteristic map has a fixed point");
  }
  GlCandidate c;
  c.name_ = std::move(name);
  c.ruler_ = std::move(ruler);
  c.grid_ = build_grid(rho, options.grid_lat, options.grid_lon);
  c.rho_ = std::move(rho);
  c.seams_ = std::move(seams);
  c.options_ = options;
  return c;
}

GlCandidate GlCandidate::family_union(std::string name, Ruler ruler,
                                      std::vector<std::shared_ptr<const LineFamily>> families,
                                      std::vector<double> seams) {
  if (families.empty()) throw GeometryError(ErrorCode::EmptySet, "family union needs a family");
  GlCandidate c;
  c.name_ = std::move(name);
  c.ruler_ = std::move(ruler);
  c.families_ = std::move(families);
  c.seams_ = std::move(seams);
  return c;
}

const CharacteristicMap& GlCandidate::char_map() const {
  if (!rho_) throw GeometryError(ErrorCode::NotCharMapForm, name_ + " is a family union");
  return *rho_;
}

GlLine GlCandidate::entering_line(const Vec3& x) const {
  if (rho_) return gl_line(x, (*rho_)(x));
  std::vector<GlLine> entering;
  for (GlLine& l : lines_through_point(affine_point(x))) {
    if ((l.entry - x).norm() < 1e-6) entering.push_back(std::move(l));
  }
  if (entering.size() != 1) {
    throw GeometryError(ErrorCode::NotCharMapForm,
                        name_ + ": " + std::to_string(entering.size()) + " lines enter at a point");
  }
  return entering.front();
}

Vec3 GlCandidate::characteristic(const Vec3& x) const {
  if (rho_) return (*rho_)(x);
  return entering_line(x).leave;
}

std::vector<GlLine> GlCandidate::lines_through_point(const Vec4& p) const {
  return lines_through_point(p, options_);
}

std::vector<GlLine> GlCandidate::lines_through_point(const Vec4& p,
                                                     const IncidenceOptions& options) const {
  if (is_interior(p)) throw GeometryError(ErrorCode::InteriorPoint, "point lies inside the quadric");
  if (rho_) return char_map_lines(p, options);
  std::vector<GlLine> all;
  for (const auto& fam : families_) {
    auto some = fam->lines_through(p);
    all.insert(all.end(), std::make_move_iterator(some.begin()), std::make_move_iterator(some.end()));
  }
  return merge_lines(std::move(all), options.merge_radius);
}

std::vector<GlLine> GlCandidate::char_map_lines(const Vec4& p, const IncidenceOptions& options) const {
  std::shared_ptr<const GridCache> grid = grid_;
  if (grid->n_lat != options.grid_lat || grid->n_lon != options.grid_lon) {
    grid = build_grid(*rho_, options.grid_lat, options.grid_lon);
  }
  const Vec4 ph = p.normalized();
  const int n_lat = grid->n_lat;
  const int n_lon = grid->n_lon;
  const std::size_t n = grid->points.size();
  std::vector<double> res(n);
  const double* e1 = grid->e1.data();
  const double* e2 = grid->e2.data();
  for (std::size_t k = 0; k < n; ++k) {
    const double a = e1[4 * k] * ph[0] + e1[4 * k + 1] * ph[1] + e1[4 * k + 2] * ph[2] + e1[4 * k + 3] * ph[3];
    const double b = e2[4 * k] * ph[0] + e2[4 * k + 1] * ph[1] + e2[4 * k + 2] * ph[2] + e2[4 * k + 3] * ph[3];
    res[k] = 1.0 - a * a - b * b;
  }

  std::vector<std::size_t> minima;
  for (int i = 0; i < n_lat; ++i) {
    for (int j = 0; j < n_lon; ++j) {
      const std::size_t k = static_cast<std::size_t>(i * n_lon + j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        const int ii = i + di;
        if (ii < 0 || ii >= n_lat) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int jj = (j + dj + n_lon) % n_lon;
          const std::size_t kk = static_cast<std::size_t>(ii * n_lon + jj);
          if (res[kk] < res[k] || (res[kk] == res[k] && kk < k)) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) minima.push_back(k);
    }
  }
  std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
    return res[a] < res[b] || (res[a] == res[b] && a < b);
  });
  if (minima.size() > static_cast<std::size_t>(options.max_seeds)) {
    minima.resize(static_cast<std::size_t>(options.max_seeds));
  }

  std::vector<GlLine> found;
  for (std::size_t k : minima) {
    const auto [x, residual] = refine_root(*rho_, grid->points[k], ph);
    if (residual < options.tol) found.push_back(gl_line(x, (*rho_)(x)));
  }
  return merge_lines(std::move(found), options.merge_radius);
}

GlCandidate clifford_star(const Ruler& ruler) {
  return GlCandidate::char_map_form("clifford", ruler, antipodal_map());
}

GlCandidate rotational_involution_star(const Ruler& ruler, double beta) {
  return GlCandidate::char_map_form("rotational", ruler, rotational_involution_map(beta));
}

GlCandidate glued_star(const Ruler& ruler, double beta1, double beta2) {
  return GlCandidate::char_map_form("glued", ruler, glued_map(beta1, beta2), {0.0});
}

GlCandidate pinched_band_star(const Ruler& ruler, double alpha) {
  return GlCandidate::char_map_form("pinched_band", ruler, pinched_band_map(alpha), {0.0});
}

GlCandidate custom_star(const Ruler& ruler, int n_lat, int n_lon, std::vector<Vec3> values) {
  return GlCandidate::char_map_form("custom", ruler, grid_map(n_lat, n_lon, std::move(values)));
}

}  // namespace orpar
