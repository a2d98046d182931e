#pragma once

#include <array>
#include <optional>
#include <span>

#include "hypermetric/metric_space.hpp"
#include "hypermetric/scaling.hpp"

namespace hypermetric {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point2 a, Point2 b) noexcept;

/// Planar triangle with prescribed side lengths: p1 at the origin, p2 on the
/// positive x-axis, p3 in the closed upper half-plane.
struct ComparisonTriangle {
  Point2 p1;
  Point2 p2;
  Point2 p3;
};

ComparisonTriangle embed_comparison_triangle(double d12, double d13, double d23);

struct Disk {
  Point2 center;
  double radius = 0.0;
};

/// A point common to all closed disks, if any. Up to three disks are decided
/// exactly by testing the centers and pairwise boundary intersections; larger
/// families minimise max_i (|x - c_i| - r_i) and accept a minimum within
/// `tau_feas` (relative to the configuration's scale).
std::optional<Point2> disks_feasible(std::span<const Disk> disks, double tau_feas = 1e-9);

struct EuclideanRho {
  double value = 0.0;
  Point2 optimizer;
};

/// Smallest rho for which the disks B(p_i, rho * r_i) meet, by bisection to
/// relative tolerance `tau_bis`. Throws NonpositiveRadius.
EuclideanRho euclidean_rho(const ComparisonTriangle& tri, const std::array<double, 3>& radii, double tau_bis = 1e-9);

/// Model plane for the comparison. Sphere and hyperbolic-plane comparisons
/// (upper curvature bounds other than 0) would slot in here; only the
/// Euclidean plane is implemented.
enum class ComparisonModel { Euclidean };

struct CurvatureVerdict {
  std::array<PointId, 3> triple{};
  double rho = 0.0;
  double rho_bar = 0.0;
  double margin = 0.0;
  bool nonpositive = false;
  bool degenerate = false;
  PointId witness = 0;
  Point2 optimizer;
};

/// rho of the triple (over `witnesses`) against rho of its comparison
/// triangle, both at the triple's Gromov radii. Non-positive curvature at the
/// triple means margin = rho - rho_bar <= tau_curv. Collinear triples throw
/// DegenerateTriple under Refuse; under ExactHit they compare against
/// rho_bar = 1, the value for a collinear comparison triangle.
CurvatureVerdict curvature_verdict(const FiniteMetricSpace& space, const std::array<PointId, 3>& triple,
                                   std::span<const PointId> witnesses, double tau_curv = 1e-9,
                                   ComparisonModel model = ComparisonModel::Euclidean,
                                   DegeneratePolicy policy = DegeneratePolicy::Refuse);

}  // namespace hypermetric
