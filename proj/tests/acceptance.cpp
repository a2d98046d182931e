// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hypermetric/comparison.hpp"
#include "hypermetric/complexes.hpp"
#include "hypermetric/error.hpp"
#include "hypermetric/metric_space.hpp"
#include "hypermetric/persistence.hpp"
#include "hypermetric/random.hpp"
#include "hypermetric/scaling.hpp"
#include "hypermetric/tight_span.hpp"
#include "support/oracles.hpp"

using namespace hypermetric;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Criterion 1: Gromov products.
Outcome gromov_products() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double a = rng.uniform(0.01, 10.0);
    const double b = rng.uniform(0.01, 10.0);
    const double c = rng.uniform(std::abs(a - b), a + b);
    const auto r = gromov_radii(a, b, c);
    // Sides are (d12, d13, d23) = (a, b, c).
    worst = std::max({worst, std::abs(r[0] + r[1] - a) / a, std::abs(r[0] + r[2] - b) / b,
                      std::abs(r[1] + r[2] - c) / std::max(c, 1e-300)});
  }
  bool exact = true;
  for (double a : {1.0, 3.0, 0.7, 1e-3, 12345.678}) {
    const auto r = gromov_radii(a, a, a);
    exact = exact && r[0] == a / 2 && r[1] == a / 2 && r[2] == a / 2;
  }
  return {worst <= 1e-12 && exact, fmt("max relative error %.3g, equilateral exact %s", worst, exact ? "yes" : "no")};
}

// Criterion 2: trees have rho = 1 on every triple and non-positive curvature.
Outcome tree_triples() {
  Rng rng(202);
  std::size_t triples = 0, bad_rho = 0, bad_verdict = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4 + rng.index(27);
    const auto s = oracle::random_tree(n, 1000 + static_cast<std::uint64_t>(t));
    const auto w = all_points(s);
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = i + 1; j < n; ++j) {
        for (PointId k = j + 1; k < n; ++k) {
          ++triples;
          const auto rho = rho_triple(s, i, j, k, w, DegeneratePolicy::ExactHit);
          if (rho.value != 1.0) ++bad_rho;
          const auto v = curvature_verdict(s, {i, j, k}, w, 1e-9, ComparisonModel::Euclidean,
                                           DegeneratePolicy::ExactHit);
          if (!v.nonpositive) ++bad_verdict;
        }
      }
    }
  }
  return {bad_rho == 0 && bad_verdict == 0,
          fmt("%zu triples, %zu with rho != 1, %zu positive verdicts", triples, bad_rho, bad_verdict)};
}

// Criterion 3: the circle reaches the deviation bound 2.
Outcome circle_deviation() {
  const auto s = sample_circle(3000, 3.0);
  const auto w = all_points(s);
  const double rho = rho_triple(s, 0, 1000, 2000, w).value;
  const std::vector<PointId> landmarks{0, 1000, 2000};
  const auto gap = vr_cech_gap(s, landmarks, w, GapRadii::gromov());
  const double lambda = gap.max_lambda.value_or(0.0);
  return {std::abs(rho - 2.0) <= 0.01 && std::abs(lambda - 2.0) <= 0.01,
          fmt("rho_triple %.6f, gap max lambda %.6f", rho, lambda)};
}

// Criterion 4: Euclidean comparison value and agreement with a grid search.
Outcome euclidean_comparison() {
  const double eq = euclidean_rho(embed_comparison_triangle(1, 1, 1), gromov_radii(1, 1, 1)).value;
  const double expected = 2.0 / std::sqrt(3.0);
  // The grid search over-estimates by at most (step / sqrt 2) / min radius, so
  // each triangle is scaled to min radius 1 and the bound stays below `step`.
  const double step = 0.02;
  Rng rng(404);
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    std::array<double, 3> r{rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)};
    const double lo = std::min({r[0], r[1], r[2]});
    for (auto& x : r) x /= lo;
    const auto tri = embed_comparison_triangle(r[0] + r[1], r[0] + r[2], r[1] + r[2]);
    const double v = euclidean_rho(tri, r).value;
    const double g = oracle::rho_bar_grid(tri, r, step);
    worst = std::max(worst, std::abs(v - g));
    ++done;
  }
  const bool ok = std::abs(eq - expected) <= 1e-6 && worst <= step + 1e-6;
  return {ok, fmt("equilateral %.10f (expected %.10f), worst grid gap %.4g over 50 triangles", eq, expected, worst)};
}

// Criterion 5: a planar grid stays within the comparison margin, a sphere does not.
Outcome nonpositivity_separation() {
  constexpr std::size_t side = 60;
  constexpr double step = 1.0;
  constexpr double margin_bound = 0.05;
  // The continuous minimiser lies in the triangle's hull, within step / sqrt 2
  // of a grid point, so a triple whose Gromov radii are all at least this
  // value has grid margin at most margin_bound.
  const double min_radius = step / std::sqrt(2.0) / margin_bound;

  auto sample = [&](const FiniteMetricSpace& s, std::uint64_t seed, double& worst, double& best,
                    std::size_t& over) {
    Rng rng(seed);
    const auto w = all_points(s);
    std::size_t accepted = 0;
    worst = -1e300;
    best = 1e300;
    over = 0;
    for (std::size_t attempt = 0; accepted < 200 && attempt < 200'000; ++attempt) {
      std::array<PointId, 3> t{rng.index(s.size()), rng.index(s.size()), rng.index(s.size())};
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2]) continue;
      const auto r = gromov_radii(s(t[0], t[1]), s(t[0], t[2]), s(t[1], t[2]));
      if (std::min({r[0], r[1], r[2]}) < min_radius) continue;
      const auto v = curvature_verdict(s, t, w);
      worst = std::max(worst, v.margin);
      best = std::min(best, v.margin);
      if (v.margin > margin_bound) ++over;
      ++accepted;
    }
    return accepted;
  };

  const auto grid = point_cloud_metric(grid_points(side, side, step), Norm::Euclidean);
  double grid_worst, grid_best, sphere_worst, sphere_best;
  std::size_t grid_over, sphere_over;
  const auto grid_n = sample(grid, 505, grid_worst, grid_best, grid_over);
  // Same point count on a sphere whose area per point is step^2.
  const double radius = step * std::sqrt(static_cast<double>(side * side) / (4.0 * M_PI));
  const auto sphere = sample_sphere(side * side, radius);
  const auto sphere_n = sample(sphere, 506, sphere_worst, sphere_best, sphere_over);
  const bool ok = grid_n == 200 && sphere_n == 200 && grid_over == 0 && sphere_over >= 1;
  return {ok, fmt("grid: %zu triples, max margin %.4f; sphere: %zu triples, max margin %.4f, %zu above %.2f "
                  "(min Gromov radius %.3f)",
                  grid_n, grid_worst, sphere_n, sphere_worst, sphere_over, margin_bound, min_radius)};
}

// Criterion 6: tight span shapes for 2, 3 and 4 points.
Outcome tight_span_shapes() {
  const auto two = enumerate_faces(oracle::space({{0, 2}, {2, 0}}));
  const bool two_ok = two.faces.size() == 1 && two.faces[0].dimension == 1 && two.combinatorial_dimension == 1;

  const auto s3 = oracle::space({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}});
  const auto three = enumerate_faces(s3);
  const auto g = gromov_radii(3, 4, 5);
  bool three_ok = three.faces.size() == 3 && three.combinatorial_dimension == 1;
  // The Gromov point is the one vertex shared by all three segments.
  std::vector<int> uses(three.vertices.size(), 0);
  for (const auto& f : three.faces) {
    three_ok = three_ok && f.dimension == 1;
    for (auto v : f.vertex_ids) ++uses[v];
  }
  double center_err = 1e300;
  for (std::size_t v = 0; v < uses.size(); ++v) {
    if (uses[v] != 3) continue;
    center_err = 0;
    for (int i = 0; i < 3; ++i) center_err = std::max(center_err, std::abs(three.vertices[v][i] - g[i]));
  }
  three_ok = three_ok && center_err <= 1e-9;

  const auto s4 = oracle::space({{0, 5, 6, 7}, {5, 0, 7, 6}, {6, 7, 0, 5.5}, {7, 6, 5.5, 0}});
  // The exhaustive four-point rule: dimension 2 iff the largest of the three
  // matching sums is attained once.
  std::array<double, 3> sums{s4(0, 1) + s4(2, 3), s4(0, 2) + s4(1, 3), s4(0, 3) + s4(1, 2)};
  std::sort(sums.begin(), sums.end());
  const std::size_t expected = sums[2] > sums[1] ? 2 : 1;
  const auto four = enumerate_faces(s4);
  const bool four_ok = four.combinatorial_dimension == expected && expected == 2;
  return {two_ok && three_ok && four_ok,
          fmt("2-point faces %zu, 3-point faces %zu with centre error %.3g, 4-point dimension %zu (oracle %zu)",
              two.faces.size(), three.faces.size(), center_err, four.combinatorial_dimension, expected)};
}

// Criteria 7 and 8 share their inputs.
struct HullResult {
  std::size_t spaces = 0, simplices = 0, set_mismatch = 0, bad_certificates = 0, flag_failures = 0;
};

HullResult hull_runs() {
  HullResult out;
  Rng rng(707);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(9);
    const auto s = random_metric(n, 7000 + static_cast<std::uint64_t>(t));
    const auto ids = all_points(s);
    const auto radii = oracle::admissible_radii(s, ids, rng);
    const auto hull = cech_in_hull(s, ids, radii);
    const auto vr = vr_complex(s, ids, radii);
    ++out.spaces;
    out.simplices += hull.complex.simplices.size();
    if (oracle::simplex_set(hull.complex) != oracle::simplex_set(vr)) ++out.set_mismatch;
    for (std::size_t k = 0; k < hull.complex.simplices.size(); ++k) {
      const auto& p = hull.certificates[k];
      bool ok = is_admissible(s, p, 1e-9).admissible;
      for (std::size_t idx = 0; idx < n && ok; ++idx) ok = p[idx] >= -1e-9;
      for (PointId v : hull.complex.simplices[k].vertices) {
        const auto center = kuratowski_row(s, v);
        ok = ok && sup_distance(p, center) <= radii[v] + 1e-9;
      }
      if (!ok) ++out.bad_certificates;
    }
    if (!flag_check(hull.complex).empty()) ++out.flag_failures;
  }
  return out;
}

const HullResult& hull_results() {
  static const HullResult r = hull_runs();
  return r;
}

Outcome hull_equivalence() {
  const auto& r = hull_results();
  return {r.set_mismatch == 0 && r.bad_certificates == 0,
          fmt("%zu spaces, %zu simplices, %zu set mismatches, %zu failing certificates", r.spaces, r.simplices,
              r.set_mismatch, r.bad_certificates)};
}

Outcome flag_property() {
  const auto& r = hull_results();
  return {r.flag_failures == 0, fmt("%zu of %zu complexes not flag", r.flag_failures, r.spaces)};
}

// Criterion 9: max-norm balls are hyperconvex.
Outcome linf_hyperconvexity() {
  Rng rng(909);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + rng.index(5);
    const std::size_t dim = 1 + rng.index(4);
    std::vector<std::vector<double>> pts(m, std::vector<double>(dim));
    for (auto& p : pts)
      for (auto& x : p) x = rng.uniform(-1.0, 1.0);
    std::vector<double> r(m);
    for (auto& x : r) x = rng.uniform(0.01, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        double d = 0;
        for (std::size_t c = 0; c < dim; ++c) d = std::max(d, std::abs(pts[i][c] - pts[j][c]));
        r[i] = std::max(r[i], d - r[j]);
      }
    }
    worst = std::max(worst, linf_lambda_exact(pts, r));
  }
  return {worst <= 1.0 + 1e-12, fmt("max lambda %.17g over 1000 families", worst)};
}

// Criterion 10: persistence of a 4-cycle and Betti curves of random filtrations.
Outcome persistence_sanity() {
  const auto c4 = sample_circle(4, 4.0);
  const auto pairs = persistence(vr_filtration(c4, all_points(c4), 3)).pairs;
  std::size_t h1 = 0;
  bool bar_ok = false;
  for (const auto& p : pairs) {
    if (p.dimension != 1) continue;
    ++h1;
    bar_ok = p.birth == 0.5 && p.death == 1.0;
  }
  std::size_t mismatches = 0, checks = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_metric(8, 10'000 + seed);
    const auto f = cech_filtration(s, all_points(s), all_points(s), 3);
    const auto bars = persistence(f).pairs;
    const double top = f.simplices.back().filtration_value;
    for (int k = 0; k < 5; ++k) {
      const double scale = top * (0.1 + 0.2 * k);
      ++checks;
      if (betti_from_pairs(bars, scale, 3) != betti_numbers(f.truncated(scale), 3)) ++mismatches;
    }
  }
  return {h1 == 1 && bar_ok && mismatches == 0,
          fmt("circle H1 bars %zu (0.5, 1.0 %s), Betti mismatches %zu of %zu", h1, bar_ok ? "yes" : "no",
              mismatches, checks)};
}

struct Criterion {
  int id;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 1, gromov_products},           {2, 10, tree_triples},        {3, 10, circle_deviation},
      {4, 60, euclidean_comparison},     {5, 60, nonpositivity_separation}, {6, 5, tight_span_shapes},
      {7, 30, hull_equivalence},         {8, 30, flag_property},       {9, 1, linf_hyperconvexity},
      {10, 20, persistence_sanity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s of %.0f s)\n", pass ? "PASS" : "FAIL", c.id, o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
