#include "orpar/families.hpp"

#include <cmath>

namespace orpar {

namespace {

constexpr double kHorizontal = 1e-13;
constexpr int kScanSteps = 256;

// Appends the oriented versions of the secant through q with direction d.
void push_oriented(std::vector<GlLine>& out, const Vec3& q, Vec3 d, Tilt tilt) {
  d.normalize();
  if (std::abs(d[2]) < kHorizontal) {
    d[2] = 0.0;
    out.push_back(secant_through(q, d));
    out.push_back(secant_through(q, -d));
    return;
  }
  const bool up = d[2] > 0;
  if (up != (tilt == Tilt::Up)) d = -d;
  out.push_back(secant_through(q, d));
}

bool is_ideal(const Vec4& p) { return std::abs(p[0]) < 1e-12 * p.norm(); }

}  // namespace

ApexProfile::ApexProfile(std::vector<double> table) : table_(std::move(table)) {
  if (table_.size() < 2) throw GeometryError(ErrorCode::InvalidParameter, "apex table needs >= 2 values");
  for (double v : table_) {
    if (!std::isfinite(v) || v < 0.0 || v >= 1.0) {
      throw GeometryError(ErrorCode::InvalidParameter, "apex values must lie in [0, 1)");
    }
  }
  constexpr int kCheck = 1000;
  int sign = 0;
  double prev = (*this)(0.0);
  for (int i = 1; i <= kCheck; ++i) {
    const double cur = (*this)(0.5 * i / kCheck);
    const int s = cur > prev ? 1 : (cur < prev ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      throw GeometryError(ErrorCode::InvalidParameter, "apex profile is not strictly monotone");
    }
    sign = s;
    prev = cur;
  }
}

ApexProfile ApexProfile::standard() { return ApexProfile({0.0, std::sqrt(3.0) / 2.0}); }

double ApexProfile::operator()(double t) const {
  const double u = std::clamp(t / 0.5, 0.0, 1.0) * static_cast<double>(table_.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(u), table_.size() - 2);
  const double frac = u - static_cast<double>(i);
  return (1.0 - frac) * table_[i] + frac * table_[i + 1];
}

double ConeFamily::run(double t) const { return std::sqrt(1.0 - t * t) - g_(t); }

std::vector<double> ConeFamily::cone_parameters(const Vec4& p) const {
  // F(t) = t * (horizontal distance to the apex) - |height| * |run(t)|
  // vanishes iff p lies on the cone C_t.
  std::function<double(double)> f;
  double height = 0.0;
  if (is_ideal(p)) {
    const double dh = std::hypot(p[1], p[2]);
    height = std::abs(p[3]);
    f = [this, dh, height](double t) { return t * dh - height * std::abs(run(t)); };
  } else {
    const Vec3 x = p.tail<3>() / p[0];
    height = std::abs(x[2]);
    f = [this, x, height](double t) {
      return t * std::hypot(x[0] - g_(t), x[1]) - height * std::abs(run(t));
    };
  }
  if (height < kHorizontal * p.norm()) return {0.0};

  std::vector<double> roots;
  double t0 = 0.0;
  double f0 = f(t0);
  for (int i = 1; i <= kScanSteps; ++i) {
    const double t1 = 0.5 * i / kScanSteps;
    const double f1 = f(t1);
    if (i == kScanSteps && std::abs(f1) < 1e-14) {
      roots.push_back(t1);
    } else if ((f0 < 0) != (f1 < 0)) {
      double lo = t0;
      double hi = t1;
      for (int k = 0; k < 100 && hi - lo > 1e-17; ++k) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0) == (f0 < 0) ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    t0 = t1;
    f0 = f1;
  }
  return roots;
}

std::vector<GlLine> ConeFamily::lines_through(const Vec4& p) const {
  std::vector<GlLine> out;
  for (double t : cone_parameters(p)) {
    const Vec3 apex(g_(t), 0.0, 0.0);
    Vec3 d = is_ideal(p) ? Vec3(p.tail<3>()) : Vec3(p.tail<3>() / p[0] - apex);
    if (t == 0.0) d[2] = 0.0;
    if (d.norm() < 1e-14) continue;
    if (t >= 0.5 && std::abs(run(t)) < 1e-12) d = Vec3::UnitZ();
    push_oriented(out, apex, d, tilt_);
  }
  return out;
}

std::vector<GlLine> OriginStar::lines_through(const Vec4& p) const {
  std::vector<GlLine> out;
  const Vec3 d = is_ideal(p) ? Vec3(p.tail<3>()) : Vec3(p.tail<3>() / p[0]);
  if (d.norm() < 1e-14) throw GeometryError(ErrorCode::InteriorPoint, "the origin is interior");
  Vec3 dn = d.normalized();
  if (std::abs(dn[2]) < kHorizontal) dn[2] = 0.0;
  push_oriented(out, Vec3::Zero(), dn, tilt_);
  return out;
}

std::shared_ptr<const ConeFamily> cone_family_G1(ApexProfile g, Tilt tilt) {
  return std::make_shared<const ConeFamily>(std::move(g), tilt);
}

std::shared_ptr<const OriginStar> origin_star_G2(Tilt tilt) {
  return std::make_shared<const OriginStar>(tilt);
}

GlCandidate combine_case1(const Ruler& ruler, ApexProfile g) {
  return GlCandidate::family_union("cones_case1", ruler,
                                   {cone_family_G1(std::move(g), Tilt::Up), origin_star_G2(Tilt::Down)},
                                   {0.0});
}

GlCandidate combine_case2(const Ruler& ruler, ApexProfile g) {
  return GlCandidate::family_union("cones_case2", ruler,
                                   {cone_family_G1(std::move(g), Tilt::Up), origin_star_G2(Tilt::Up)},
                                   {0.0});
}

}  // namespace orpar
