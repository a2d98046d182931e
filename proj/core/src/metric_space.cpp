#include "hypermetric/metric_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "hypermetric/error.hpp"
#include "hypermetric/parallel.hpp"

namespace hypermetric {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> row_major)
    : n_(labels.size()), labels_(std::move(labels)), dist_(std::move(row_major)) {
  for (double d : dist_) diameter_ = std::max(diameter_, d);
}

FiniteMetricSpace FiniteMetricSpace::from_trusted(std::vector<std::string> labels, std::vector<double> row_major) {
  if (labels.empty()) throw Error(Errc::InvalidArgument, "a metric space needs at least one point");
  if (row_major.size() != labels.size() * labels.size()) {
    throw Error(Errc::NotSquare, "matrix size does not match label count");
  }
  return FiniteMetricSpace(std::move(labels), std::move(row_major));
}

DistanceMatrix FiniteMetricSpace::matrix() const {
  DistanceMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

std::vector<PointId> all_points(const FiniteMetricSpace& space) {
  std::vector<PointId> ids(space.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return ids;
}

FiniteMetricSpace validate_metric(const DistanceMatrix& matrix, std::optional<double> tau,
                                  std::vector<std::string> labels) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "a metric space needs at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw Error(Errc::NotSquare, {i}, "row length differs from row count");
  }
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) throw Error(Errc::LengthMismatch, "label count differs from matrix size");

  double max_entry = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d)) throw Error(Errc::InvalidArgument, {i, j}, "non-finite entry");
      max_entry = std::max(max_entry, std::abs(d));
    }
  }
  const double slack = tau.value_or(1e-9 * max_entry);

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(matrix[i][i]) > slack) throw Error(Errc::NonzeroDiagonal, {i});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] < 0.0) throw Error(Errc::NegativeEntry, {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(matrix[i][j] - matrix[j][i]) > slack) throw Error(Errc::Asymmetric, {i, j});
    }
  }

  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = 0.5 * (matrix[i][j] + matrix[j][i]);
      if (d <= 0.0) throw Error(Errc::DuplicatePoints, {i, j});
      flat[i * n + j] = d;
      flat[j * n + i] = d;
    }
  }
  // d_ij <= d_ik + d_jk + slack; both rows are contiguous thanks to symmetry.
  std::vector<std::optional<std::array<std::size_t, 3>>> first_bad(chunk_count(n));
  parallel_for(n, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* ri = flat.data() + i * n;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double* rj = flat.data() + j * n;
        const double bound = ri[j] - slack;
        bool bad = false;
        for (std::size_t k = 0; k < n; ++k) bad |= bound > ri[k] + rj[k];
        if (!bad) continue;
        std::size_t k = 0;
        while (!(bound > ri[k] + rj[k])) ++k;
        first_bad[chunk] = {i, j, k};
        return;
      }
    }
  });
  for (const auto& bad : first_bad) {
    if (bad) throw Error(Errc::TriangleViolation, {(*bad)[0], (*bad)[1], (*bad)[2]});
  }
  return FiniteMetricSpace::from_trusted(std::move(labels), std::move(flat));
}

}  // namespace hypermetric
