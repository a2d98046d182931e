#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypermetric {

/// Index of a point in its owning FiniteMetricSpace.
using PointId = std::size_t;

using DistanceMatrix = std::vector<std::vector<double>>;

/// A finite set of labelled points with a validated, dense distance matrix.
///
/// Instances are immutable once built. The only ways to obtain one are
/// `validate_metric` (checks every metric axiom) and the generators below,
/// which produce metrics by construction.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return n_; }

  double operator()(PointId i, PointId j) const noexcept { return dist_[i * n_ + j]; }
  double dist(PointId i, PointId j) const noexcept { return dist_[i * n_ + j]; }

  /// Row `i` of the distance matrix (the Kuratowski image of point i).
  std::span<const double> row(PointId i) const noexcept { return {dist_.data() + i * n_, n_}; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PointId i) const { return labels_.at(i); }

  double diameter() const noexcept { return diameter_; }

  /// Copy of the matrix as nested rows.
  DistanceMatrix matrix() const;

  /// Builds a space from a row-major matrix that is already known to be a
  /// metric (generators, internal transforms). Only the shape is checked.
  static FiniteMetricSpace from_trusted(std::vector<std::string> labels, std::vector<double> row_major);

 private:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> row_major);

  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  double diameter_ = 0.0;
};

/// Default labels "p0", "p1", ...
std::vector<std::string> default_labels(std::size_t n);

/// Validates the four metric axioms. The slack `tau` applies to symmetry,
/// the diagonal and the triangle inequality; it defaults to 1e-9 times the
/// largest entry. Throws hypermetric::Error naming the first violated axiom.
FiniteMetricSpace validate_metric(const DistanceMatrix& matrix, std::optional<double> tau = std::nullopt,
                                  std::vector<std::string> labels = {});

/// Every point id of the space, in order. The default witness set.
std::vector<PointId> all_points(const FiniteMetricSpace& space);

// ---------------------------------------------------------------------------
// Generators

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

enum class Norm { Euclidean, Max, Sum };

/// All-pairs shortest-path metric of a connected, positively weighted graph.
FiniteMetricSpace graph_metric(std::size_t vertices, std::span<const WeightedEdge> edges);

/// `m` equally spaced samples on a circle of circumference `circumference`
/// with the arc-length metric.
FiniteMetricSpace sample_circle(std::size_t m, double circumference);

FiniteMetricSpace point_cloud_metric(const std::vector<std::vector<double>>& points, Norm norm);

/// Random symmetric entries closed under shortest paths. Deterministic in
/// (n, seed) across platforms.
FiniteMetricSpace random_metric(std::size_t n, std::uint64_t seed);

/// Random recursive tree on `vertices` vertices with integer edge weights in
/// [1, max_weight]. Every branch point is a vertex.
std::vector<WeightedEdge> random_tree_edges(std::size_t vertices, std::uint64_t seed, int max_weight = 3);

/// `count` points of a Fibonacci lattice on the sphere of the given radius,
/// with the great-circle (geodesic) metric.
FiniteMetricSpace sample_sphere(std::size_t count, double radius);

/// Row-major `rows` x `cols` planar lattice with spacing `step`.
std::vector<std::vector<double>> grid_points(std::size_t rows, std::size_t cols, double step);

}  // namespace hypermetric
