#include "hypermetric/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "combinations.hpp"
#include "hypermetric/error.hpp"
#include "hypermetric/parallel.hpp"

namespace hypermetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_witnesses(const FiniteMetricSpace& space, std::span<const PointId> witnesses) {
  if (witnesses.empty()) throw Error(Errc::EmptyWitnessSet, "witness set is empty");
  for (PointId w : witnesses) {
    if (w >= space.size()) throw Error(Errc::InvalidArgument, {w}, "witness index out of range");
  }
}

template <class Objective>
ScalingResult minmax_over_witnesses(const BallFamily& family, std::span<const PointId> witnesses, Quantity quantity,
                                    Objective objective) {
  const auto& space = family.space();
  check_witnesses(space, witnesses);
  const auto& centers = family.centers();
  const auto& radii = family.radii();

  double best = kInf;
  PointId best_w = *std::min_element(witnesses.begin(), witnesses.end());
  for (PointId w : witnesses) {
    double worst = -kInf;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      worst = std::max(worst, objective(space(centers[i], w), radii[i]));
      if (worst > best) break;
    }
    if (worst < best || (worst == best && w < best_w)) {
      best = worst;
      best_w = w;
    }
  }
  ScalingResult out;
  out.quantity = quantity;
  out.value = best;
  out.witness = best_w;
  out.admissible = family.pairwise_admissible(closed_ball_tolerance(space));
  return out;
}

bool lex_less(const std::array<PointId, 3>& a, const std::array<PointId, 3>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

BallFamily::BallFamily(const FiniteMetricSpace& space, std::vector<PointId> centers, std::vector<double> radii)
    : space_(&space), centers_(std::move(centers)), radii_(std::move(radii)) {
  if (centers_.size() != radii_.size()) throw Error(Errc::LengthMismatch, "centers and radii differ in length");
  if (centers_.empty()) throw Error(Errc::InvalidArgument, "ball family is empty");
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (centers_[i] >= space.size()) throw Error(Errc::InvalidArgument, {centers_[i]}, "center out of range");
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) throw Error(Errc::NonpositiveRadius, {i});
    for (std::size_t j = 0; j < i; ++j) {
      if (centers_[i] == centers_[j]) throw Error(Errc::InvalidArgument, {j, i}, "centers must be distinct");
    }
  }
}

bool BallFamily::pairwise_admissible(double tau) const noexcept {
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    for (std::size_t j = i + 1; j < centers_.size(); ++j) {
      if (radii_[i] + radii_[j] < (*space_)(centers_[i], centers_[j]) - tau) return false;
    }
  }
  return true;
}

const char* to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Lambda: return "lambda";
    case Quantity::Delta: return "delta";
    case Quantity::Rho2: return "rho2";
    case Quantity::Rho3: return "rho3";
  }
  return "lambda";
}

double closed_ball_tolerance(const FiniteMetricSpace& space) noexcept { return 1e-12 * space.diameter(); }

std::array<double, 3> gromov_radii(double d12, double d13, double d23) {
  if (d12 < 0.0 || d13 < 0.0 || d23 < 0.0) throw Error(Errc::TriangleViolation, "negative side length");
  std::array<double, 3> r{0.5 * (d12 + d13 - d23), 0.5 * (d12 + d23 - d13), 0.5 * (d13 + d23 - d12)};
  const double slack = 1e-12 * std::max({d12, d13, d23});
  for (std::size_t i = 0; i < 3; ++i) {
    if (r[i] < -slack) throw Error(Errc::TriangleViolation, {i}, "side lengths violate the triangle inequality");
    r[i] = std::max(r[i], 0.0);
  }
  return r;
}

ScalingResult lambda_scaling(const BallFamily& family, std::span<const PointId> witnesses) {
  return minmax_over_witnesses(family, witnesses, Quantity::Lambda, [](double d, double r) { return d / r; });
}

ScalingResult delta_scaling(const BallFamily& family, std::span<const PointId> witnesses) {
  return minmax_over_witnesses(family, witnesses, Quantity::Delta, [](double d, double r) { return d - r; });
}

ScalingResult rho_pair(const FiniteMetricSpace& space, PointId i, PointId j, std::span<const PointId> witnesses) {
  if (i == j) throw Error(Errc::InvalidArgument, {i, j}, "rho_pair needs two distinct points");
  if (i >= space.size() || j >= space.size()) throw Error(Errc::InvalidArgument, {i, j}, "index out of range");
  const double half = 0.5 * space(i, j);
  auto result = lambda_scaling(BallFamily(space, {i, j}, {half, half}), witnesses);
  result.quantity = Quantity::Rho2;
  return result;
}

ScalingResult rho_triple(const FiniteMetricSpace& space, PointId i, PointId j, PointId k,
                         std::span<const PointId> witnesses, DegeneratePolicy policy) {
  if (i == j || i == k || j == k) throw Error(Errc::InvalidArgument, {i, j, k}, "triple must be distinct");
  if (std::max({i, j, k}) >= space.size()) throw Error(Errc::InvalidArgument, {i, j, k}, "index out of range");
  const std::array<PointId, 3> ids{i, j, k};
  const auto radii = gromov_radii(space(i, j), space(i, k), space(j, k));
  const double deg = 1e-12 * std::max({space(i, j), space(i, k), space(j, k)});

  std::size_t zero = 3;
  for (std::size_t m = 0; m < 3; ++m) {
    if (radii[m] <= deg) zero = m;
  }
  if (zero == 3) {
    auto result = lambda_scaling(BallFamily(space, {i, j, k}, {radii[0], radii[1], radii[2]}), witnesses);
    result.quantity = Quantity::Rho3;
    return result;
  }
  if (policy == DegeneratePolicy::Refuse) {
    throw Error(Errc::DegenerateTriple, {i, j, k}, "a Gromov radius vanishes (collinear triple)");
  }

  // Only a witness at the zero-radius point can lie in its ball.
  check_witnesses(space, witnesses);
  const double tol = closed_ball_tolerance(space);
  ScalingResult out;
  out.quantity = Quantity::Rho3;
  out.value = kInf;
  out.witness = *std::min_element(witnesses.begin(), witnesses.end());
  out.admissible = true;
  out.degenerate = true;
  for (PointId w : witnesses) {
    if (space(ids[zero], w) > tol) continue;
    double worst = 0.0;
    for (std::size_t m = 0; m < 3; ++m) {
      if (m != zero) worst = std::max(worst, space(ids[m], w) / radii[m]);
    }
    if (worst < out.value || (worst == out.value && w < out.witness)) {
      out.value = worst;
      out.witness = w;
    }
  }
  return out;
}

double linf_lambda_exact(const std::vector<std::vector<double>>& points, std::span<const double> radii) {
  if (points.size() != radii.size()) throw Error(Errc::LengthMismatch, "points and radii differ in length");
  if (points.empty()) throw Error(Errc::InvalidArgument, "empty family");
  const std::size_t dim = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw Error(Errc::DimensionMismatch, {i});
    if (!(radii[i] > 0.0)) throw Error(Errc::NonpositiveRadius, {i});
  }
  double value = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      for (std::size_t c = 0; c < dim; ++c) {
        value = std::max(value, std::abs(points[i][c] - points[j][c]) / (radii[i] + radii[j]));
      }
    }
  }
  return value;
}

TripleDeviation max_triple_deviation(const FiniteMetricSpace& space, std::span<const PointId> witnesses,
                                     const ScanOptions& options) {
  const std::size_t n = space.size();
  if (n < 3) throw Error(Errc::InvalidArgument, "need at least three points");
  check_witnesses(space, witnesses);

  struct Partial {
    double value = -kInf;
    std::array<PointId, 3> triple{};
    PointId witness = 0;
    std::size_t scanned = 0;
    std::size_t degenerate = 0;
    bool found = false;

    void offer(const std::array<PointId, 3>& t, const ScalingResult& r) {
      if (!found || r.value > value || (r.value == value && lex_less(t, triple))) {
        value = r.value;
        triple = t;
        witness = r.witness;
        found = true;
      }
    }
    void visit(const FiniteMetricSpace& s, std::span<const PointId> w, const std::array<PointId, 3>& t) {
      ++scanned;
      try {
        offer(t, rho_triple(s, t[0], t[1], t[2], w));
      } catch (const Error& e) {
        if (e.code() != Errc::DegenerateTriple) throw;
        ++degenerate;
      }
    }
  };

  const bool sampled = detail::binomial(n, 3) > options.cap;
  std::vector<std::array<PointId, 3>> draws;
  if (sampled) {
    Rng rng(options.seed);
    draws.reserve(options.cap);
    for (std::size_t s = 0; s < options.cap; ++s) {
      const auto c = detail::random_combination(rng, n, 3);
      draws.push_back({c[0], c[1], c[2]});
    }
  }

  const std::size_t work = sampled ? draws.size() : n - 2;
  std::vector<Partial> partials(chunk_count(work));
  parallel_for(work, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Partial& p = partials[chunk];
    for (std::size_t u = begin; u < end; ++u) {
      if (sampled) {
        p.visit(space, witnesses, draws[u]);
        continue;
      }
      for (PointId j = u + 1; j < n; ++j) {
        for (PointId k = j + 1; k < n; ++k) p.visit(space, witnesses, {u, j, k});
      }
    }
  });

  Partial total;
  for (const auto& p : partials) {
    total.scanned += p.scanned;
    total.degenerate += p.degenerate;
    if (!p.found) continue;
    if (!total.found || p.value > total.value || (p.value == total.value && lex_less(p.triple, total.triple))) {
      total.value = p.value;
      total.triple = p.triple;
      total.witness = p.witness;
      total.found = true;
    }
  }
  if (!total.found) throw Error(Errc::NoValidTriple, "every triple is degenerate");

  TripleDeviation out;
  out.value = total.value;
  out.triple = total.triple;
  out.witness = total.witness;
  out.triples_scanned = total.scanned;
  out.degenerate_skipped = total.degenerate;
  out.sampled = sampled;
  out.seed = options.seed;
  return out;
}

HellyReport helly_defect(const FiniteMetricSpace& space, std::size_t n_size, std::size_t k_size,
                         std::span<const PointId> witnesses, HellyRadiiRule rule, std::span<const double> explicit_radii,
                         const ScanOptions& options, double tau) {
  const std::size_t n = space.size();
  if (!(2 <= k_size && k_size < n_size && n_size <= n)) {
    throw Error(Errc::InvalidArgument, {n_size, k_size}, "need 2 <= k_size < n_size <= n");
  }
  check_witnesses(space, witnesses);
  if (rule == HellyRadiiRule::Explicit) {
    if (explicit_radii.size() != n) throw Error(Errc::LengthMismatch, "explicit radii must cover every point");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(explicit_radii[i] > 0.0)) throw Error(Errc::NonpositiveRadius, {i});
    }
  } else if (n_size != 3) {
    throw Error(Errc::InvalidArgument, {n_size}, "Gromov radii are only canonical for three-point families");
  }

  const double tol = closed_ball_tolerance(space);
  HellyReport report;
  report.n_size = n_size;
  report.k_size = k_size;
  report.seed = options.seed;
  report.sampled = detail::binomial(n, n_size) > options.cap;
  bool found = false;

  auto examine = [&](const std::vector<std::size_t>& subset) {
    ++report.families_scanned;
    std::vector<double> radii(n_size);
    if (rule == HellyRadiiRule::Explicit) {
      for (std::size_t m = 0; m < n_size; ++m) radii[m] = explicit_radii[subset[m]];
    } else {
      const auto g = gromov_radii(space(subset[0], subset[1]), space(subset[0], subset[2]), space(subset[1], subset[2]));
      const double deg = 1e-12 * std::max({space(subset[0], subset[1]), space(subset[0], subset[2]),
                                           space(subset[1], subset[2])});
      if (std::min({g[0], g[1], g[2]}) <= deg) return;
      radii.assign(g.begin(), g.end());
    }

    auto sub = detail::first_combination(k_size);
    do {
      if (k_size == 2) {
        const std::size_t a = sub[0], b = sub[1];
        if (radii[a] + radii[b] < space(subset[a], subset[b]) - tol) return;
      } else {
        std::vector<PointId> centers;
        std::vector<double> r;
        for (std::size_t m : sub) {
          centers.push_back(subset[m]);
          r.push_back(radii[m]);
        }
        if (lambda_scaling(BallFamily(space, std::move(centers), std::move(r)), witnesses).value > 1.0 + tau) return;
      }
    } while (detail::next_combination(sub, n_size));

    ++report.families_qualifying;
    const auto full = lambda_scaling(BallFamily(space, {subset.begin(), subset.end()}, radii), witnesses);
    if (!found || full.value > report.max_lambda) {
      found = true;
      report.max_lambda = full.value;
      report.worst_subset.assign(subset.begin(), subset.end());
      report.worst_radii = radii;
      report.witness = full.witness;
    }
  };

  if (report.sampled) {
    Rng rng(options.seed);
    for (std::size_t s = 0; s < options.cap; ++s) examine(detail::random_combination(rng, n, n_size));
  } else {
    auto subset = detail::first_combination(n_size);
    do {
      examine(subset);
    } while (detail::next_combination(subset, n));
  }
  if (!found) throw Error(Errc::NoQualifyingFamily, "no family passes the subfamily filter");
  return report;
}

}  // namespace hypermetric
