#include <gtest/gtest.h>

#include <cmath>

#include "hypermetric/comparison.hpp"
#include "hypermetric/error.hpp"
#include "support/oracles.hpp"

using namespace hypermetric;

namespace {

constexpr double kEquilateral = 1.1547005383792517;  // 2 / sqrt(3)

void expect_point(Point2 p, double x, double y, double tol = 1e-12) {
  EXPECT_NEAR(p.x, x, tol);
  EXPECT_NEAR(p.y, y, tol);
}

bool feasible_at(const ComparisonTriangle& tri, const std::array<double, 3>& r, double rho) {
  const std::vector<Disk> disks{{tri.p1, rho * r[0]}, {tri.p2, rho * r[1]}, {tri.p3, rho * r[2]}};
  return disks_feasible(disks).has_value();
}

// Planar point cloud on a square grid of the given step.
FiniteMetricSpace grid_cloud(std::size_t side, double step) {
  return point_cloud_metric(grid_points(side, side, step), Norm::Euclidean);
}

}  // namespace

TEST(EmbedComparisonTriangle, Examples) {
  const auto t = embed_comparison_triangle(3, 4, 5);
  expect_point(t.p1, 0, 0);
  expect_point(t.p2, 3, 0);
  expect_point(t.p3, 0, 4);
  const double a = 2.5;
  const auto e = embed_comparison_triangle(a, a, a);
  expect_point(e.p2, a, 0);
  expect_point(e.p3, a / 2, a * std::sqrt(3.0) / 2);
  const auto c = embed_comparison_triangle(2, 1, 1);
  expect_point(c.p3, 1, 0);
  EXPECT_THROW(embed_comparison_triangle(1, 1, 3), Error);
}

TEST(EmbedComparisonTriangleProperty, ReproducesSides) {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const auto s = random_metric(3, t);
    const auto tri = embed_comparison_triangle(s(0, 1), s(0, 2), s(1, 2));
    EXPECT_NEAR(distance(tri.p1, tri.p2), s(0, 1), 1e-12);
    EXPECT_NEAR(distance(tri.p1, tri.p3), s(0, 2), 1e-12);
    EXPECT_NEAR(distance(tri.p2, tri.p3), s(1, 2), 1e-12);
    EXPECT_GE(tri.p3.y, 0.0);
  }
}

TEST(DisksFeasible, Examples) {
  const std::vector<Disk> touching{{{0, 0}, 1}, {{2, 0}, 1}};
  const auto p = disks_feasible(touching);
  ASSERT_TRUE(p.has_value());
  expect_point(*p, 1, 0);

  const std::vector<Disk> apart{{{0, 0}, 1}, {{3, 0}, 1}};
  EXPECT_FALSE(disks_feasible(apart).has_value());

  const double h = std::sqrt(3.0);
  const std::vector<Disk> tri{{{0, 0}, 1}, {{2, 0}, 1}, {{1, h}, 1}};
  EXPECT_FALSE(disks_feasible(tri).has_value());
  const std::vector<Disk> tri_big{{{0, 0}, 1.155}, {{2, 0}, 1.155}, {{1, h}, 1.155}};
  EXPECT_TRUE(disks_feasible(tri_big).has_value());
}

TEST(DisksFeasible, ManyDisks) {
  const std::vector<Disk> ring{{{1, 0}, 1.01}, {{0, 1}, 1.01}, {{-1, 0}, 1.01}, {{0, -1}, 1.01}, {{0.5, 0.5}, 1}};
  const auto p = disks_feasible(ring);
  ASSERT_TRUE(p.has_value());
  for (const auto& d : ring) EXPECT_LE(distance(*p, d.center), d.radius + 1e-8);
  const std::vector<Disk> split{{{1, 0}, 0.9}, {{0, 1}, 0.9}, {{-1, 0}, 0.9}, {{0, -1}, 0.9}};
  EXPECT_FALSE(disks_feasible(split).has_value());
}

TEST(DisksFeasibleProperty, WitnessLiesInEveryDisk) {
  Rng rng(21);
  for (int t = 0; t < 500; ++t) {
    std::vector<Disk> disks(1 + rng.index(3));
    for (auto& d : disks) d = {{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0, 1.2)};
    const auto p = disks_feasible(disks);
    if (!p) continue;
    for (const auto& d : disks) EXPECT_LE(distance(*p, d.center), d.radius + 1e-9);
  }
}

TEST(EuclideanRho, EquilateralAtCircumcenter) {
  const double a = 3.0;
  const auto tri = embed_comparison_triangle(a, a, a);
  const auto r = euclidean_rho(tri, {a / 2, a / 2, a / 2});
  EXPECT_NEAR(r.value, kEquilateral, 1e-8);
  expect_point(r.optimizer, a / 2, a / (2 * std::sqrt(3.0)), 1e-6);
}

TEST(EuclideanRho, CollinearWithTinyRadius) {
  const auto tri = embed_comparison_triangle(2, 1, 1);
  for (double tau : {1e-2, 1e-4, 1e-6}) {
    const auto r = euclidean_rho(tri, {1, 1, tau});
    EXPECT_GE(r.value, 1.0 - 1e-9);
    EXPECT_LE(r.value, 1.0 + 1e-8);
  }
}

TEST(EuclideanRho, RightTriangleGoldenValue) {
  // Frozen from an independent Nelder-Mead minimisation before the build.
  const auto tri = embed_comparison_triangle(3, 4, 5);
  const auto r = euclidean_rho(tri, {1, 2, 3});
  EXPECT_NEAR(r.value, 1.1284281474059317, 1e-8);
  const double step = 1e-3;
  EXPECT_NEAR(oracle::rho_bar_grid(tri, {1, 2, 3}, step), r.value, step);
}

TEST(EuclideanRho, RejectsNonpositiveRadius) {
  const auto tri = embed_comparison_triangle(3, 4, 5);
  try {
    euclidean_rho(tri, {1, 0, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonpositiveRadius);
  }
}

TEST(EuclideanRhoProperty, AgreesWithGridOracle) {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_metric(3, rng.index(1u << 20));
    const auto g = gromov_radii(s(0, 1), s(0, 2), s(1, 2));
    if (*std::min_element(g.begin(), g.end()) < 0.05) continue;
    const auto tri = embed_comparison_triangle(s(0, 1), s(0, 2), s(1, 2));
    const double step = 2e-3;
    const double grid = oracle::rho_bar_grid(tri, g, step);
    const double bound = step * std::sqrt(0.5) / *std::min_element(g.begin(), g.end()) + 1e-6;
    const double v = euclidean_rho(tri, g).value;
    EXPECT_LE(v, grid + 1e-6);
    EXPECT_GE(v, grid - bound);
  }
}

TEST(EuclideanRhoProperty, AgreesWithFeasibilityAndPairBound) {
  Rng rng(4);
  int tight = 0;
  for (int t = 0; t < 200; ++t) {
    const auto s = random_metric(3, t);
    const auto tri = embed_comparison_triangle(s(0, 1), s(0, 2), s(1, 2));
    std::array<double, 3> r{};
    for (auto& x : r) x = rng.uniform(0.05, 0.8);
    // Raise radii until each pair is compatible.
    const double d[3][3] = {{0, s(0, 1), s(0, 2)}, {s(0, 1), 0, s(1, 2)}, {s(0, 2), s(1, 2), 0}};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) r[i] = std::max(r[i], d[i][j] - r[j]);
      }
    }
    const auto v = euclidean_rho(tri, r).value;
    if (feasible_at(tri, r, 1.0)) {
      EXPECT_LE(v, 1.0 + 1e-8);
    } else {
      EXPECT_GE(v, 1.0 - 1e-8);
    }
    double pair_bound = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) pair_bound = std::max(pair_bound, d[i][j] / (r[i] + r[j]));
    }
    EXPECT_GE(v, pair_bound * (1 - 1e-9));
    // At the Gromov radii every pair is tight, so no point beats lambda = 1.
    const auto g = gromov_radii(s(0, 1), s(0, 2), s(1, 2));
    if (*std::min_element(g.begin(), g.end()) <= 0.0) continue;
    ++tight;
    EXPECT_GE(euclidean_rho(tri, g).value, 1.0 - 1e-9);
  }
  EXPECT_GT(tight, 50);
}

TEST(EuclideanRhoProperty, ScaleInvariant) {
  for (int t = 0; t < 50; ++t) {
    const auto s = random_metric(3, 500 + t);
    const auto g = gromov_radii(s(0, 1), s(0, 2), s(1, 2));
    if (*std::min_element(g.begin(), g.end()) <= 0.0) continue;
    const auto base = euclidean_rho(embed_comparison_triangle(s(0, 1), s(0, 2), s(1, 2)), g).value;
    const double c = 7.5;
    const auto big = euclidean_rho(embed_comparison_triangle(c * s(0, 1), c * s(0, 2), c * s(1, 2)),
                                   {c * g[0], c * g[1], c * g[2]})
                         .value;
    EXPECT_NEAR(big, base, 2e-9 * base);
  }
}

TEST(EuclideanRhoProperty, BisectionCertificate) {
  for (int t = 0; t < 100; ++t) {
    const auto s = random_metric(3, 900 + t);
    const auto g = gromov_radii(s(0, 1), s(0, 2), s(1, 2));
    if (*std::min_element(g.begin(), g.end()) < 1e-3) continue;
    const auto tri = embed_comparison_triangle(s(0, 1), s(0, 2), s(1, 2));
    const double v = euclidean_rho(tri, g).value;
    EXPECT_TRUE(feasible_at(tri, g, v * (1 + 1e-9)));
    EXPECT_FALSE(feasible_at(tri, g, v * (1 - 2e-9)));
  }
}

TEST(CurvatureVerdict, TreeTripleIsNonpositive) {
  const std::vector<WeightedEdge> edges{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  const auto s = graph_metric(4, edges);
  const auto v = curvature_verdict(s, {1, 2, 3}, all_points(s));
  EXPECT_EQ(v.rho, 1.0);
  EXPECT_NEAR(v.rho_bar, kEquilateral, 1e-8);
  EXPECT_TRUE(v.nonpositive);
  EXPECT_EQ(v.margin, v.rho - v.rho_bar);
}

TEST(CurvatureVerdict, DenseCircleIsPositive) {
  const auto s = sample_circle(3000, 3.0);
  const auto v = curvature_verdict(s, {0, 1000, 2000}, all_points(s));
  EXPECT_NEAR(v.rho, 2.0, 0.002);
  EXPECT_NEAR(v.rho_bar, kEquilateral, 1e-8);
  EXPECT_FALSE(v.nonpositive);
}

TEST(CurvatureVerdict, GridCloudMarginNearZero) {
  const double step = 0.05;
  const auto s = grid_cloud(21, step);
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    std::array<PointId, 3> tri{};
    for (auto& x : tri) x = rng.index(s.size());
    if (tri[0] == tri[1] || tri[0] == tri[2] || tri[1] == tri[2]) continue;
    const auto g = gromov_radii(s(tri[0], tri[1]), s(tri[0], tri[2]), s(tri[1], tri[2]));
    const double r_min = *std::min_element(g.begin(), g.end());
    if (r_min < 4 * step) continue;
    const auto v = curvature_verdict(s, tri, all_points(s));
    EXPECT_GE(v.margin, -1e-8);
    EXPECT_LE(v.margin, step * std::sqrt(0.5) / r_min + 1e-8);
  }
}

TEST(CurvatureVerdict, DegenerateTriple) {
  const std::vector<WeightedEdge> path{{0, 1, 1}, {1, 2, 1}};
  const auto s = graph_metric(3, path);
  EXPECT_THROW(curvature_verdict(s, {0, 1, 2}, all_points(s)), Error);
  const auto v = curvature_verdict(s, {0, 1, 2}, all_points(s), 1e-9, ComparisonModel::Euclidean,
                                   DegeneratePolicy::ExactHit);
  EXPECT_TRUE(v.degenerate);
  EXPECT_EQ(v.rho, 1.0);
  EXPECT_EQ(v.rho_bar, 1.0);
  EXPECT_TRUE(v.nonpositive);
}

TEST(CurvatureVerdictProperty, VerdictMatchesMargin) {
  for (int t = 0; t < 100; ++t) {
    const auto s = random_metric(6, t);
    const auto v = curvature_verdict(s, {0, 2, 4}, all_points(s), 1e-3, ComparisonModel::Euclidean,
                                     DegeneratePolicy::ExactHit);
    EXPECT_EQ(v.nonpositive, v.margin <= 1e-3);
  }
}

TEST(CurvatureVerdictProperty, GridMarginShrinksWithResolution) {
  // Fixed triangle in the unit square, sampled at three resolutions.
  std::vector<double> margins;
  for (std::size_t side : {11u, 21u, 41u}) {
    const double step = 1.0 / static_cast<double>(side - 1);
    const auto s = grid_cloud(side, step);
    auto at = [&](double x, double y) {
      return static_cast<PointId>(std::lround(y / step)) * side + static_cast<PointId>(std::lround(x / step));
    };
    const auto v = curvature_verdict(s, {at(0, 0), at(1, 0.2), at(0.4, 1)}, all_points(s));
    margins.push_back(v.margin);
  }
  EXPECT_GE(margins[0], margins[2]);
  EXPECT_LT(margins[2], 0.02);
}
