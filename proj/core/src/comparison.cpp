#include "hypermetric/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hypermetric/error.hpp"
#include "hypermetric/scaling.hpp"

namespace hypermetric {

namespace {

double configuration_scale(std::span<const Disk> disks) {
  double scale = 0.0;
  for (const auto& d : disks) {
    scale = std::max({scale, std::abs(d.center.x), std::abs(d.center.y), d.radius});
  }
  return scale > 0.0 ? scale : 1.0;
}

bool inside_all(Point2 p, std::span<const Disk> disks, double eps) {
  return std::all_of(disks.begin(), disks.end(),
                     [&](const Disk& d) { return distance(p, d.center) <= d.radius + eps; });
}

// Up to two boundary intersection points of two circles; tangencies that
// miss by less than eps are snapped to the tangent point.
void circle_intersections(const Disk& a, const Disk& b, double eps, std::vector<Point2>& out) {
  const double dx = b.center.x - a.center.x;
  const double dy = b.center.y - a.center.y;
  const double d = std::hypot(dx, dy);
  if (d == 0.0) return;
  if (d > a.radius + b.radius + eps) return;
  if (d < std::abs(a.radius - b.radius) - eps) return;
  const double along = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  const Point2 base{a.center.x + along * dx / d, a.center.y + along * dy / d};
  out.push_back({base.x - h * dy / d, base.y + h * dx / d});
  if (h > 0.0) out.push_back({base.x + h * dy / d, base.y - h * dx / d});
}

double excess(Point2 p, std::span<const Disk> disks) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& d : disks) worst = std::max(worst, distance(p, d.center) - d.radius);
  return worst;
}

// Golden-section search of a unimodal function on [lo, hi].
template <class F>
double golden_min(F f, double lo, double hi, double width) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > width; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double distance(Point2 a, Point2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

ComparisonTriangle embed_comparison_triangle(double d12, double d13, double d23) {
  // Validates the side lengths.
  (void)gromov_radii(d12, d13, d23);
  ComparisonTriangle tri;
  tri.p2 = {d12, 0.0};
  if (d12 == 0.0) {
    tri.p3 = {d13, 0.0};
    return tri;
  }
  const double x = (d12 * d12 + d13 * d13 - d23 * d23) / (2.0 * d12);
  tri.p3 = {x, std::sqrt(std::max(0.0, d13 * d13 - x * x))};
  return tri;
}

std::optional<Point2> disks_feasible(std::span<const Disk> disks, double tau_feas) {
  if (disks.empty()) throw Error(Errc::InvalidArgument, "need at least one disk");
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (!(disks[i].radius >= 0.0)) throw Error(Errc::NonpositiveRadius, {i}, "disk radius must be >= 0");
  }
  const double scale = configuration_scale(disks);

  if (disks.size() <= 3) {
    const double eps = 1e-12 * scale;
    std::vector<Point2> candidates;
    for (const auto& d : disks) candidates.push_back(d.center);
    for (std::size_t i = 0; i < disks.size(); ++i) {
      for (std::size_t j = i + 1; j < disks.size(); ++j) circle_intersections(disks[i], disks[j], eps, candidates);
    }
    for (const auto& p : candidates) {
      if (inside_all(p, disks, eps)) return p;
    }
    return std::nullopt;
  }

  // The minimiser of a max of distances lies in the bounding box of the centers.
  double xmin = disks[0].center.x, xmax = xmin, ymin = disks[0].center.y, ymax = ymin;
  for (const auto& d : disks) {
    xmin = std::min(xmin, d.center.x);
    xmax = std::max(xmax, d.center.x);
    ymin = std::min(ymin, d.center.y);
    ymax = std::max(ymax, d.center.y);
  }
  const double width = 1e-13 * scale;
  auto best_y = [&](double x) {
    return golden_min([&](double y) { return excess({x, y}, disks); }, ymin, ymax, width);
  };
  const double x = golden_min([&](double xx) { return excess({xx, best_y(xx)}, disks); }, xmin, xmax, width);
  const Point2 p{x, best_y(x)};
  if (excess(p, disks) <= tau_feas * scale) return p;
  return std::nullopt;
}

EuclideanRho euclidean_rho(const ComparisonTriangle& tri, const std::array<double, 3>& radii, double tau_bis) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(radii[i] > 0.0)) throw Error(Errc::NonpositiveRadius, {i});
  }
  const std::array<Point2, 3> p{tri.p1, tri.p2, tri.p3};
  const double max_side = std::max({distance(p[0], p[1]), distance(p[0], p[2]), distance(p[1], p[2])});
  double hi = 0.0;
  for (double r : radii) hi = std::max(hi, 2.0 * max_side / r);
  double lo = 0.0;

  auto feasible_at = [&](double rho) {
    const std::array<Disk, 3> disks{Disk{p[0], rho * radii[0]}, Disk{p[1], rho * radii[1]},
                                    Disk{p[2], rho * radii[2]}};
    return disks_feasible(disks);
  };

  auto witness = feasible_at(hi);
  if (!witness) throw Error(Errc::InvalidArgument, "bisection bracket is not feasible");
  if (max_side == 0.0) return {0.0, p[0]};
  while (hi - lo > tau_bis * hi) {
    const double mid = 0.5 * (lo + hi);
    if (auto w = feasible_at(mid)) {
      hi = mid;
      witness = w;
    } else {
      lo = mid;
    }
  }
  return {hi, *witness};
}

CurvatureVerdict curvature_verdict(const FiniteMetricSpace& space, const std::array<PointId, 3>& triple,
                                   std::span<const PointId> witnesses, double tau_curv, ComparisonModel model,
                                   DegeneratePolicy policy) {
  (void)model;
  const auto [i, j, k] = triple;
  const auto rho = rho_triple(space, i, j, k, witnesses, policy);
  const auto radii = gromov_radii(space(i, j), space(i, k), space(j, k));
  const auto tri = embed_comparison_triangle(space(i, j), space(i, k), space(j, k));
  EuclideanRho bar;
  if (rho.degenerate) {
    // Collinear comparison triangle: the other two disks touch exactly at the
    // zero-radius vertex.
    const std::array<Point2, 3> corners{tri.p1, tri.p2, tri.p3};
    const auto zero = static_cast<std::size_t>(std::min_element(radii.begin(), radii.end()) - radii.begin());
    bar = {1.0, corners[zero]};
  } else {
    bar = euclidean_rho(tri, radii);
  }

  CurvatureVerdict v;
  v.triple = triple;
  v.rho = rho.value;
  v.rho_bar = bar.value;
  v.margin = rho.value - bar.value;
  v.nonpositive = v.margin <= tau_curv;
  v.witness = rho.witness;
  v.degenerate = rho.degenerate;
  v.optimizer = bar.optimizer;
  return v;
}

}  // namespace hypermetric
