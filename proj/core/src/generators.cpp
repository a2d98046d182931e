#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypermetric/error.hpp"
#include "hypermetric/metric_space.hpp"
#include "hypermetric/random.hpp"

namespace hypermetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// In-place Floyd-Warshall on a row-major n x n matrix.
void shortest_path_closure(std::vector<double>& d, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
}

void reject_duplicates(const std::vector<double>& d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] <= 0.0) throw Error(Errc::DuplicatePoints, {i, j});
    }
  }
}

}  // namespace

FiniteMetricSpace graph_metric(std::size_t vertices, std::span<const WeightedEdge> edges) {
  if (vertices == 0) throw Error(Errc::InvalidArgument, "graph needs at least one vertex");
  const std::size_t n = vertices;
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error(Errc::InvalidArgument, {e.u, e.v}, "edge endpoint out of range");
    if (e.u == e.v) throw Error(Errc::InvalidArgument, {e.u, e.v}, "self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(Errc::InvalidArgument, {e.u, e.v}, "edge weight must be positive and finite");
    }
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.weight);
    d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.weight);
  }
  shortest_path_closure(d, n);
  for (std::size_t j = 1; j < n; ++j) {
    if (d[j] == kInf) throw Error(Errc::DisconnectedGraph, {std::size_t{0}, j});
  }
  return FiniteMetricSpace::from_trusted(default_labels(n), std::move(d));
}

FiniteMetricSpace sample_circle(std::size_t m, double circumference) {
  if (m < 2) throw Error(Errc::InvalidArgument, "circle sample needs m >= 2");
  if (!(circumference > 0.0)) throw Error(Errc::InvalidArgument, "circumference must be positive");
  const double step = circumference / static_cast<double>(m);
  std::vector<double> d(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      d[i * m + j] = step * static_cast<double>(std::min(gap, m - gap));
    }
  }
  return FiniteMetricSpace::from_trusted(default_labels(m), std::move(d));
}

FiniteMetricSpace point_cloud_metric(const std::vector<std::vector<double>>& points, Norm norm) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "point cloud is empty");
  const std::size_t dim = points.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != dim) throw Error(Errc::DimensionMismatch, {i});
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double gap = std::abs(points[i][c] - points[j][c]);
        switch (norm) {
          case Norm::Euclidean: acc += gap * gap; break;
          case Norm::Max: acc = std::max(acc, gap); break;
          case Norm::Sum: acc += gap; break;
        }
      }
      if (norm == Norm::Euclidean) acc = std::sqrt(acc);
      d[i * n + j] = acc;
      d[j * n + i] = acc;
    }
  }
  reject_duplicates(d, n);
  return FiniteMetricSpace::from_trusted(default_labels(n), std::move(d));
}

FiniteMetricSpace random_metric(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::InvalidArgument, "random metric needs n >= 1");
  Rng rng(seed);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Weights on a 2^-20 grid in [0.1, 1] keep every path sum exact, so the
      // closure is a metric with no rounding slack.
      const double w = std::ldexp(static_cast<double>(104858 + rng.index(943718)), -20);
      d[i * n + j] = w;
      d[j * n + i] = w;
    }
  }
  shortest_path_closure(d, n);
  return FiniteMetricSpace::from_trusted(default_labels(n), std::move(d));
}

std::vector<WeightedEdge> random_tree_edges(std::size_t vertices, std::uint64_t seed, int max_weight) {
  if (max_weight < 1) throw Error(Errc::InvalidArgument, "max_weight must be >= 1");
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  for (std::size_t v = 1; v < vertices; ++v) {
    const auto parent = static_cast<std::size_t>(rng.index(v));
    const auto w = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(max_weight)));
    edges.push_back({parent, v, static_cast<double>(w)});
  }
  return edges;
}

FiniteMetricSpace sample_sphere(std::size_t count, double radius) {
  if (count < 2) throw Error(Errc::InvalidArgument, "sphere sample needs at least two points");
  if (!(radius > 0.0)) throw Error(Errc::InvalidArgument, "radius must be positive");
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<std::array<double, 3>> xyz(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    xyz[i] = {rho * std::cos(phi), rho * std::sin(phi), z};
  }
  std::vector<double> d(count * count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double dot = xyz[i][0] * xyz[j][0] + xyz[i][1] * xyz[j][1] + xyz[i][2] * xyz[j][2];
      // atan2 form keeps precision for nearby points where acos loses it.
      const double cx = xyz[i][1] * xyz[j][2] - xyz[i][2] * xyz[j][1];
      const double cy = xyz[i][2] * xyz[j][0] - xyz[i][0] * xyz[j][2];
      const double cz = xyz[i][0] * xyz[j][1] - xyz[i][1] * xyz[j][0];
      const double angle = std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
      d[i * count + j] = radius * angle;
      d[j * count + i] = radius * angle;
    }
  }
  reject_duplicates(d, count);
  return FiniteMetricSpace::from_trusted(default_labels(count), std::move(d));
}

std::vector<std::vector<double>> grid_points(std::size_t rows, std::size_t cols, double step) {
  std::vector<std::vector<double>> pts;
  pts.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      pts.push_back({step * static_cast<double>(c), step * static_cast<double>(r)});
    }
  }
  return pts;
}

}  // namespace hypermetric
