#pragma once

// Independent reference computations for the tests. They use only Eigen and
// elementary geometry, never the library's solvers.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace orpar::oracle {

using V3 = Eigen::Vector3d;
using V4 = Eigen::Vector4d;
using V6 = Eigen::Matrix<double, 6, 1>;
using M = Eigen::MatrixXd;

/// 2x2 minors of the 4x2 matrix [u v], order (12, 13, 14, 23, 24, 34).
inline V6 pluecker_minors(const V4& u, const V4& v) {
  V6 p;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) p[k++] = u[i] * v[j] - u[j] * v[i];
  }
  return p;
}

/// Two lines of P_3 meet iff [u1 v1 u2 v2] has rank < 4; decided from the
/// smallest singular value of the stacked orthonormal bases.
inline bool lines_meet_by_rank(const V4& u1, const V4& v1, const V4& u2, const V4& v2, double tol = 1e-8) {
  auto ortho = [](const V4& a, const V4& b) {
    M m(4, 2);
    m << a, b;
    return M(Eigen::HouseholderQR<M>(m).householderQ() * M::Identity(4, 2));
  };
  M all(4, 4);
  all << ortho(u1, v1), ortho(u2, v2);
  return Eigen::JacobiSVD<M>(all).singularValues()[3] < tol;
}

/// Distance of [p] to the projective line span(u, v) as the smallest singular
/// value of the orthonormalized triple.
inline double point_line_residual(const V4& p, const V4& u, const V4& v) {
  M m(4, 3);
  m << u.normalized(), v.normalized(), p.normalized();
  return Eigen::JacobiSVD<M>(m).singularValues()[2];
}

/// Oriented chord of the unit ball, entry then leave.
struct Chord {
  V3 entry;
  V3 leave;
};

inline double chord_distance(const Chord& a, const Chord& b) {
  return std::max((a.entry - b.entry).norm(), (a.leave - b.leave).norm());
}

/// Brute-force solutions of rho(entry) = leave among chords through a chart
/// point: exterior affine points (w = 1) or ideal points (w = 0, a direction).
/// A dense n x n grid over the chords through the point is scanned in both
/// traversal directions; grid local minima below `accept` are clustered within
/// `cluster` and each cluster reports its best chord.
inline std::vector<Chord> brute_chords_through(const std::function<V3(const V3&)>& rho, const V4& p, int n = 1000,
                                               double accept = 0.02, double cluster = 0.05) {
  const double pi = std::acos(-1.0);
  V3 axis;
  bool ideal = std::abs(p[0]) < 1e-12;
  V3 q = ideal ? V3(p.tail<3>().normalized()) : V3(p.tail<3>() / p[0]);
  axis = ideal ? q : V3(-q.normalized());
  // Orthonormal frame around axis.
  V3 e1 = std::abs(axis[0]) < 0.9 ? V3::UnitX() : V3::UnitY();
  e1 = (e1 - e1.dot(axis) * axis).normalized();
  const V3 e2 = axis.cross(e1);
  const double cap = ideal ? 1.0 : std::asin(std::min(1.0, 1.0 / q.norm()));

  // Grid cell (i, j): radial parameter s in (0, cap), azimuth phi.
  auto chord_at = [&](int i, int j, bool reverse) {
    const double s = cap * (i + 0.5) / n;
    const double phi = 2.0 * pi * j / n;
    V3 entry, leave;
    if (ideal) {
      const V3 off = s * (std::cos(phi) * e1 + std::sin(phi) * e2);
      const double h = std::sqrt(std::max(0.0, 1.0 - s * s));
      entry = off - h * axis;
      leave = off + h * axis;
    } else {
      const V3 d = std::cos(s) * axis + std::sin(s) * (std::cos(phi) * e1 + std::sin(phi) * e2);
      const double b = q.dot(d);
      const double disc = std::sqrt(std::max(0.0, b * b - q.squaredNorm() + 1.0));
      entry = q + (-b - disc) * d;
      leave = q + (-b + disc) * d;
    }
    if (reverse) std::swap(entry, leave);
    return Chord{entry, leave};
  };

  std::vector<Chord> found;
  std::vector<double> best;
  std::vector<double> r(static_cast<std::size_t>(n) * n);
  for (int dir = 0; dir < 2; ++dir) {
    const bool reverse = dir == 1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Chord c = chord_at(i, j, reverse);
        r[static_cast<std::size_t>(i) * n + j] = (rho(c.entry) - c.leave).norm();
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = r[static_cast<std::size_t>(i) * n + j];
        if (v > accept) continue;
        bool minimum = true;
        for (int di = -1; di <= 1 && minimum; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const int ii = i + di;
            if (ii < 0 || ii >= n) continue;
            const int jj = (j + dj + n) % n;
            if (r[static_cast<std::size_t>(ii) * n + jj] < v) {
              minimum = false;
              break;
            }
          }
        }
        if (!minimum) continue;
        const Chord c = chord_at(i, j, reverse);
        bool merged = false;
        for (std::size_t k = 0; k < found.size(); ++k) {
          if (chord_distance(found[k], c) < cluster) {
            if (v < best[k]) {
              found[k] = c;
              best[k] = v;
            }
            merged = true;
            break;
          }
        }
        if (!merged) {
          found.push_back(c);
          best.push_back(v);
        }
      }
    }
  }
  return found;
}

/// Diagonal Klein form diag(1, 1, 1, -1, -1, -1).
inline double klein_form(const V6& x, const V6& y) {
  return x.head<3>().dot(y.head<3>()) - x.tail<3>().dot(y.tail<3>());
}

/// Basis of a random negative definite 2-plane of R^{3,3}: negative parts are
/// orthonormal, positive parts scaled below 1/2.
inline M random_negative_plane(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  M neg(3, 2);
  for (int i = 0; i < 6; ++i) neg(i % 3, i / 3) = g(rng);
  neg = Eigen::HouseholderQR<M>(neg).householderQ() * M::Identity(3, 2);
  M pos(3, 2);
  for (int i = 0; i < 6; ++i) pos(i % 3, i / 3) = g(rng);
  pos *= 0.4 / pos.norm();
  M b(6, 2);
  b << pos, neg;
  return b;
}

/// f-orthogonal complement of a 2-plane: a (3,1)-space when the plane is
/// negative definite. Returns an orthonormal 6 x 4 basis.
inline M klein_complement(const M& plane) {
  M fb = plane;
  fb.bottomRows(3) *= -1.0;
  Eigen::JacobiSVD<M> svd(fb.transpose(), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(4);
}

}  // namespace orpar::oracle
