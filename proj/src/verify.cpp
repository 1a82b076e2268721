#include "orpar/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>

#include "orpar/spreads.hpp"

namespace orpar {

namespace {

std::string shortest(double x) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
}

enum Stratum : std::uint64_t {
  kExterior = 0,
  kQuadric = 1,
  kIdeal = 2,
  kEntryLeave = 3,
  kFold = 4,
  kSymmetry = 5,
  kContinuityBase = 100,
};

constexpr double kStableTraversal = 1e-6;

Vec3 perturb_on_sphere(const Vec3& u, double angle, Rng& rng) {
  Vec3 t = random_unit3(rng);
  t = (t - t.dot(u) * u).normalized();
  return std::cos(angle) * u + std::sin(angle) * t;
}

void sort_violations(std::vector<Violation>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    return a.deviation > b.deviation;
  });
}

// Near pairs of non-interior points; kind 0 quadric, 1 ideal, 2 exterior, 3 seam.
std::optional<std::pair<Vec4, Vec4>> near_pair(int kind, double seam, double delta, Rng& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    Vec4 p;
    Vec4 q;
    const Vec3 u = random_unit3(rng);
    switch (kind) {
      case 0: {
        const double mode = uniform01(rng);
        if (mode < 1.0 / 3.0) {
          p = affine_point(u);
          q = affine_point(perturb_on_sphere(u, 0.5 * delta * uniform01(rng), rng));
        } else if (mode < 2.0 / 3.0) {
          p = affine_point(u);
          q = affine_point((1.0 + 0.5 * delta * uniform01(rng)) * u);
        } else {
          p = affine_point((1.0 + 0.5 * delta * uniform01(rng)) * u);
          q = affine_point((1.0 + 0.5 * delta * uniform01(rng)) *
                           perturb_on_sphere(u, 0.5 * delta * uniform01(rng), rng));
        }
        break;
      }
      case 1: {
        const Vec3 v = perturb_on_sphere(u, 0.5 * delta * uniform01(rng), rng);
        p = ideal_point(u);
        if (uniform01(rng) < 0.5) {
          q = ideal_point(v);
        } else {
          q = Vec4(0.5 * delta * (2.0 * uniform01(rng) - 1.0), v[0], v[1], v[2]);
        }
        break;
      }
      case 2: {
        const double r = 1.0 / (0.02 + 0.98 * uniform01(rng));
        p = affine_point(r * u).normalized();
        q = p + 0.5 * delta * random_unit4(rng);
        break;
      }
      default: {
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        Vec4 base;
        if (uniform01(rng) < 0.25) {
          base = Vec4(0.0, std::cos(phi), std::sin(phi), 0.0);
        } else {
          const double r = 1.2 + 2.8 * uniform01(rng);
          const double h = std::sqrt(std::max(r * r - seam * seam, 0.0));
          base = Vec4(1.0, h * std::cos(phi), h * std::sin(phi), seam).normalized();
        }
        const double s = delta / 3.0 * (0.5 + 0.5 * uniform01(rng));
        p = base + s * Vec4::Unit(3);
        q = base - s * Vec4::Unit(3);
        break;
      }
    }
    p.normalize();
    q.normalize();
    if (is_interior(p) || is_interior(q)) continue;
    if (chart_distance(p, q) >= delta) continue;
    return std::make_pair(p, q);
  }
  return std::nullopt;
}

}  // namespace

void for_each_index(std::size_t n, ExecPolicy policy, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4) if (policy == ExecPolicy::Parallel)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double chart_distance(const Vec4& p, const Vec4& q) {
  return ProjPoint::distance(ProjPoint(p), ProjPoint(q));
}

double line_set_gap(const std::vector<GlLine>& a, const std::vector<GlLine>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 2.0;
  std::vector<OrientedLine> la;
  std::vector<OrientedLine> lb;
  for (const auto& l : a) la.push_back(l.klein);
  for (const auto& l : b) lb.push_back(l.klein);
  return hausdorff_distance<OrientedLine>(la, lb, &OrientedLine::distance);
}

Vec4 sample_exterior(std::uint64_t seed) {
  Rng rng(seed);
  const Vec3 u = random_unit3(rng);
  const double r = 1.0 / (0.02 + 0.98 * uniform01(rng));
  return affine_point(r * u);
}

Vec4 sample_quadric(std::uint64_t seed) {
  Rng rng(seed);
  return affine_point(random_unit3(rng));
}

Vec4 sample_ideal(std::uint64_t seed) {
  Rng rng(seed);
  return ideal_point(random_unit3(rng));
}

VerificationReport verify_incidence(const GlCandidate& cand, const SamplerSpec& spec,
                                    ExecPolicy policy) {
  struct Item {
    const char* stratum;
    Stratum code;
    std::size_t index;
  };
  std::vector<Item> items;
  auto add = [&](const char* name, Stratum code, int count) {
    for (int i = 0; i < count; ++i) items.push_back({name, code, static_cast<std::size_t>(i)});
  };
  add("exterior", kExterior, spec.n_exterior);
  add("quadric", kQuadric, spec.n_quadric);
  add("ideal", kIdeal, spec.n_ideal);

  std::vector<int> counts(items.size(), 0);
  std::vector<Vec4> points(items.size());
  std::vector<std::string> failures(items.size());
  for_each_index(items.size(), policy, [&](std::size_t k) {
    const Item& it = items[k];
    const std::uint64_t s = derive_seed(spec.seed, it.code, it.index);
    points[k] = it.code == kExterior ? sample_exterior(s)
                : it.code == kQuadric ? sample_quadric(s)
                                      : sample_ideal(s);
    try {
      counts[k] = static_cast<int>(cand.lines_through_point(points[k]).size());
    } catch (const GeometryError& e) {
      counts[k] = -1;
      failures[k] = e.what();
    }
  });

  VerificationReport report;
  report.check = "incidence";
  report.n = static_cast<int>(items.size());
  int relaxed = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (counts[k] == 2) continue;
    if (counts[k] > 2) ++relaxed;
    Violation v;
    v.stratum = items[k].stratum;
    v.index = items[k].index;
    v.witness = points[k];
    v.deviation = counts[k] < 0 ? 2.0 : std::abs(counts[k] - 2.0);
    v.detail = counts[k] < 0 ? failures[k] : "lines=" + std::to_string(counts[k]);
    report.violations.push_back(std::move(v));
  }
  if (cand.is_char_map_form()) report.relaxed_violations = relaxed;
  sort_violations(report.violations);
  report.pass = report.violations.empty();
  return report;
}

VerificationReport verify_entry_leave(const GlCandidate& cand, int n, std::uint64_t seed,
                                      ExecPolicy policy) {
  const std::size_t count = static_cast<std::size_t>(std::max(n, 0));
  std::vector<Vec4> points(count);
  std::vector<std::array<int, 3>> classes(count, {0, 0, 0});
  std::vector<std::string> failures(count);
  for_each_index(count, policy, [&](std::size_t i) {
    points[i] = sample_quadric(derive_seed(seed, kEntryLeave, i));
    try {
      for (const GlLine& l : cand.lines_through_point(points[i])) {
        const double t = traversal_value(l, points[i]);
        ++classes[i][t > kStableTraversal ? 0 : (t < -kStableTraversal ? 1 : 2)];
      }
    } catch (const GeometryError& e) {
      failures[i] = e.what();
      classes[i] = {0, 0, 1};
    }
  });
  VerificationReport report;
  report.check = "entry_leave";
  report.n = static_cast<int>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& c = classes[i];
    if (c[0] == 1 && c[1] == 1 && c[2] == 0) continue;
    Violation v;
    v.stratum = "quadric";
    v.index = i;
    v.witness = points[i];
    v.deviation = std::abs(c[0] - 1) + std::abs(c[1] - 1) + c[2];
    v.detail = failures[i].empty() ? "enter=" + std::to_string(c[0]) + " leave=" + std::to_string(c[1]) +
                                         " unstable=" + std::to_string(c[2])
                                   : failures[i];
    report.violations.push_back(std::move(v));
  }
  sort_violations(report.violations);
  report.pass = report.violations.empty();
  return report;
}

bool modulus_passes(const std::vector<ModulusEntry>& modulus, double threshold) {
  if (modulus.empty()) return false;
  const ModulusEntry* smallest = &modulus.front();
  for (const auto& m : modulus) {
    if (m.delta < smallest->delta) smallest = &m;
    if (m.pairs == 0) return false;
  }
  if (!(smallest->max_gap < threshold)) return false;
  std::vector<std::pair<double, double>> pts;
  for (const auto& m : modulus) {
    if (m.max_gap > 1e-14) pts.emplace_back(std::log(m.delta), std::log(m.max_gap));
  }
  if (pts.size() < 2) return true;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx > 0.0 && sxy / sxx > 0.0;
}

VerificationReport continuity_ladder(std::string check, const std::vector<std::string>& strata,
                                     const ContinuitySpec& spec, const PairSampler& sampler,
                                     ExecPolicy policy) {
  const std::size_t n_pairs = static_cast<std::size_t>(std::max(spec.n_pairs, 0));
  const std::size_t n_ladder = spec.ladder.size();
  const std::size_t per_step = strata.size() * n_pairs;
  const std::size_t total = n_ladder * per_step;
  std::vector<std::optional<PairGap>> gaps(total);
  for_each_index(total, policy, [&](std::size_t k) {
    const std::size_t step = k / per_step;
    const std::size_t stratum = (k % per_step) / n_pairs;
    const std::size_t index = k % n_pairs;
    const std::uint64_t s =
        derive_seed(spec.seed, kContinuityBase + 16 * step + stratum, index);
    gaps[k] = sampler(stratum, spec.ladder[step], s);
  });

  VerificationReport report;
  report.check = std::move(check);
  report.n = static_cast<int>(total);
  std::size_t smallest = 0;
  for (std::size_t step = 0; step < n_ladder; ++step) {
    if (spec.ladder[step] < spec.ladder[smallest]) smallest = step;
  }
  for (std::size_t step = 0; step < n_ladder; ++step) {
    ModulusEntry entry;
    entry.delta = spec.ladder[step];
    for (std::size_t j = 0; j < per_step; ++j) {
      const std::size_t k = step * per_step + j;
      if (!gaps[k]) continue;
      ++entry.pairs;
      entry.max_gap = std::max(entry.max_gap, gaps[k]->gap);
      if (step == smallest && gaps[k]->gap >= spec.threshold) {
        Violation v;
        v.stratum = strata[j / n_pairs];
        v.index = j % n_pairs;
        v.witness = gaps[k]->witness;
        v.deviation = gaps[k]->gap;
        v.detail = "delta=" + std::to_string(entry.delta);
        report.violations.push_back(std::move(v));
      }
    }
    report.modulus.push_back(entry);
  }
  sort_violations(report.violations);
  report.pass = report.violations.empty() && modulus_passes(report.modulus, spec.threshold);
  return report;
}

VerificationReport verify_continuity(const GlCandidate& cand, const ContinuitySpec& spec,
                                     ExecPolicy policy) {
  std::vector<std::string> strata = {"quadric", "ideal", "exterior"};
  for (double c : cand.seams()) strata.push_back("seam z=" + shortest(c));
  PairSampler sampler = [&](std::size_t stratum, double delta,
                            std::uint64_t seed) -> std::optional<PairGap> {
    Rng rng(seed);
    const int kind = stratum < 3 ? static_cast<int>(stratum) : 3;
    const double seam = stratum < 3 ? 0.0 : cand.seams()[stratum - 3];
    const auto pair = near_pair(kind, seam, delta, rng);
    if (!pair) return std::nullopt;
    try {
      const auto a = cand.lines_through_point(pair->first);
      const auto b = cand.lines_through_point(pair->second);
      return PairGap{line_set_gap(a, b), (pair->first + pair->second).normalized()};
    } catch (const GeometryError&) {
      return PairGap{2.0, pair->first};
    }
  };
  return continuity_ladder("continuity", strata, spec, sampler, policy);
}

FoldCheck is_foldable(const GlCandidate& cand, int n, std::uint64_t seed, ExecPolicy policy) {
  const std::size_t count = static_cast<std::size_t>(std::max(n, 0));
  std::vector<double> dev(count, 0.0);
  for_each_index(count, policy, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kFold, i));
    const Vec3 x = random_unit3(rng);
    dev[i] = (cand.characteristic(cand.characteristic(x)) - x).norm();
  });
  FoldCheck out;
  for (double d : dev) out.deviation = std::max(out.deviation, d);
  out.foldable = out.deviation < 1e-9;
  return out;
}

SymmetryCheck rotational_symmetry_check(const GlCandidate& cand, int n, std::uint64_t seed,
                                        ExecPolicy policy) {
  constexpr int kAngles = 16;
  const std::size_t count = static_cast<std::size_t>(std::max(n, 0));
  std::vector<double> dev(count, 0.0);
  for_each_index(count, policy, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kSymmetry, i));
    const Vec3 x = random_unit3(rng);
    const Vec3 rx = cand.characteristic(x);
    for (int k = 1; k <= kAngles; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / (kAngles + 1);
      const Vec3 lhs = cand.characteristic(rotate_z(x, theta));
      dev[i] = std::max(dev[i], (lhs - rotate_z(rx, theta)).norm());
    }
  });
  SymmetryCheck out;
  for (double d : dev) out.deviation = std::max(out.deviation, d);
  out.symmetric = out.deviation < 1e-9;
  return out;
}

}  // namespace orpar
