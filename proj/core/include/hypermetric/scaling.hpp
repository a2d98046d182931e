#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hypermetric/metric_space.hpp"

namespace hypermetric {

/// Closed balls B(center_i, radius_i) around distinct points of one space.
class BallFamily {
 public:
  /// Throws NonpositiveRadius, LengthMismatch or InvalidArgument (duplicate
  /// or out-of-range centers).
  BallFamily(const FiniteMetricSpace& space, std::vector<PointId> centers, std::vector<double> radii);

  const FiniteMetricSpace& space() const noexcept { return *space_; }
  const std::vector<PointId>& centers() const noexcept { return centers_; }
  const std::vector<double>& radii() const noexcept { return radii_; }
  std::size_t size() const noexcept { return centers_.size(); }

  /// r_i + r_j >= d(x_i, x_j) - tau for every pair of members.
  bool pairwise_admissible(double tau) const noexcept;

 private:
  const FiniteMetricSpace* space_;
  std::vector<PointId> centers_;
  std::vector<double> radii_;
};

enum class Quantity { Lambda, Delta, Rho2, Rho3 };

const char* to_string(Quantity q) noexcept;

struct ScalingResult {
  Quantity quantity = Quantity::Lambda;
  /// Multiplicative factor (lambda, rho) or additive enlargement (delta).
  double value = 0.0;
  PointId witness = 0;
  /// Whether r_i + r_j >= d_ij held for all pairs of the family.
  bool admissible = false;
  /// Set by rho_triple when a Gromov radius vanished (collinear triple).
  bool degenerate = false;
};

/// Slack used for closed-ball and admissibility comparisons in a space.
double closed_ball_tolerance(const FiniteMetricSpace& space) noexcept;

/// The unique radii with r_i + r_j = d_ij. Throws TriangleViolation when the
/// three lengths are not a metric triangle.
std::array<double, 3> gromov_radii(double d12, double d13, double d23);

/// min over witnesses w of max_i d(x_i, w) / r_i; ties go to the lowest id.
ScalingResult lambda_scaling(const BallFamily& family, std::span<const PointId> witnesses);

/// min over witnesses w of max_i (d(x_i, w) - r_i). Negative when a witness
/// lies strictly inside every ball.
ScalingResult delta_scaling(const BallFamily& family, std::span<const PointId> witnesses);

/// lambda with radii d(i,j)/2 on both points.
ScalingResult rho_pair(const FiniteMetricSpace& space, PointId i, PointId j, std::span<const PointId> witnesses);

enum class DegeneratePolicy {
  /// Throw DegenerateTriple.
  Refuse,
  /// Require the witness to coincide with the zero-radius point and scale
  /// the remaining two balls.
  ExactHit,
};

/// lambda of the triple at its Gromov radii. A Gromov radius at or below
/// 1e-12 times the triple's diameter marks the triple as degenerate.
ScalingResult rho_triple(const FiniteMetricSpace& space, PointId i, PointId j, PointId k,
                         std::span<const PointId> witnesses, DegeneratePolicy policy = DegeneratePolicy::Refuse);

/// Smallest lambda for which the max-norm balls B(x_i, lambda r_i) in R^k
/// share a point: max over pairs and coordinates of |x_ic - x_jc| / (r_i + r_j).
double linf_lambda_exact(const std::vector<std::vector<double>>& points, std::span<const double> radii);

/// Exhaustive subset scans stop enumerating above `cap` subsets and draw
/// `cap` seeded random subsets instead.
struct ScanOptions {
  std::size_t cap = 2'000'000;
  std::uint64_t seed = 0;
};

struct TripleDeviation {
  double value = 0.0;
  std::array<PointId, 3> triple{};
  PointId witness = 0;
  std::size_t triples_scanned = 0;
  std::size_t degenerate_skipped = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
};

/// Maximum rho_triple over non-degenerate triples; ties resolve to the
/// lexicographically smallest triple. Throws NoValidTriple.
TripleDeviation max_triple_deviation(const FiniteMetricSpace& space, std::span<const PointId> witnesses,
                                     const ScanOptions& options = {});

enum class HellyRadiiRule {
  /// Gromov radii of each 3-point family (the only size with canonical radii).
  GromovPairwise,
  /// One caller-supplied radius per point of the space.
  Explicit,
};

struct HellyReport {
  std::size_t n_size = 0;
  std::size_t k_size = 0;
  double max_lambda = 0.0;
  std::vector<PointId> worst_subset;
  std::vector<double> worst_radii;
  PointId witness = 0;
  std::size_t families_scanned = 0;
  std::size_t families_qualifying = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
};

/// Scans every `n_size`-subset whose `k_size`-subfamilies all intersect and
/// reports the largest full-family lambda. For k_size = 2 a subfamily
/// "intersects" when its radii are compatible (r_i + r_j >= d_ij); for larger
/// k it must have lambda <= 1 + tau over the witnesses.
HellyReport helly_defect(const FiniteMetricSpace& space, std::size_t n_size, std::size_t k_size,
                         std::span<const PointId> witnesses, HellyRadiiRule rule,
                         std::span<const double> explicit_radii = {}, const ScanOptions& options = {},
                         double tau = 1e-9);

}  // namespace hypermetric
