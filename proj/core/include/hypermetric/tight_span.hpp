#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypermetric/metric_space.hpp"

namespace hypermetric {

class BallFamily;

/// A real function on the points of a space, i.e. a point of R^n. Admissible
/// functions satisfy f_i + f_j >= d_ij for all i, j (including i = j, so
/// f >= 0); extremal ones are additionally pointwise minimal, and together
/// they form the tight span E(X).
struct RadiusFunction {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Pair (i, j) with i <= j. A loop (i, i) records f_i = 0.
using IndexPair = std::pair<PointId, PointId>;

double sup_distance(const RadiusFunction& a, const RadiusFunction& b);

/// Default comparison slack for radius functions: 1e-9 times the diameter.
double radius_tolerance(const FiniteMetricSpace& space) noexcept;

/// Row i of the distance matrix; always extremal.
RadiusFunction kuratowski_row(const FiniteMetricSpace& space, PointId i);

struct AdmissibilityCheck {
  bool admissible = true;
  std::optional<IndexPair> violation;  // first violating pair in row-major order
};

AdmissibilityCheck is_admissible(const FiniteMetricSpace& space, const RadiusFunction& f,
                                 std::optional<double> tau = std::nullopt);

struct ExtremalityCheck {
  bool extremal = true;
  /// f_i - max_j (d_ij - f_j); zero on E(X), positive where f can shrink.
  std::vector<double> slack;
};

/// Throws NotAdmissible or LengthMismatch.
ExtremalityCheck is_extremal(const FiniteMetricSpace& space, const RadiusFunction& f,
                             std::optional<double> tau = std::nullopt);

/// The pairs with |f_i + f_j - d_ij| <= tau (the graph G(S) of the face
/// containing f in its relative interior). Throws NotAdmissible.
std::vector<IndexPair> equality_graph(const FiniteMetricSpace& space, const RadiusFunction& f,
                                      std::optional<double> tau = std::nullopt);

struct FaceDescriptor {
  std::vector<IndexPair> equality_edges;
  std::size_t dimension = 0;
  /// Barycenter of the face's vertices; lies in the relative interior.
  RadiusFunction sample_point;
  std::vector<std::size_t> vertex_ids;  // indices into TightSpanComplex::vertices
};

struct TightSpanComplex {
  std::size_t points = 0;
  std::vector<RadiusFunction> vertices;
  /// Maximal compact faces.
  std::vector<FaceDescriptor> faces;
  /// Every compact face, maximal or not.
  std::vector<FaceDescriptor> all_faces;
  std::size_t combinatorial_dimension = 0;
};

struct FaceOptions {
  std::size_t n_cap = 7;
  /// Relative slack (times the diameter) for vertex feasibility and tightness.
  double tau_face = 1e-9;
};

/// Enumerates the compact faces of the admissible polyhedron, which make up
/// E(X). Throws SizeCapExceeded when the space has more than n_cap points.
TightSpanComplex enumerate_faces(const FiniteMetricSpace& space, const FaceOptions& options = {});

/// Iterates f <- (f + f^)/2 with f^_i = max_j (d_ij - f_j) until the sup-norm
/// step is at most tau_conv. Inputs already extremal to tau_conv are returned
/// unchanged. Throws NotAdmissible, or NonConvergence when the
/// result is not extremal to 10 * tau_conv.
RadiusFunction retract_to_hull(const FiniteMetricSpace& space, const RadiusFunction& f,
                               std::optional<double> tau_conv = std::nullopt, std::size_t max_iter = 10'000);

/// A common point of the balls B(d_{x_i}, r_i) in the admissible polyhedron:
/// p_y = max(0, max_j (d(y, x_j) - r_j)), raised to max(p, p^) so it is
/// admissible. With `extremal`, additionally retracted onto E(X). Radii may be
/// zero. Throws NotPairwiseAdmissible.
RadiusFunction hull_witness(const FiniteMetricSpace& space, std::span<const PointId> centers,
                            std::span<const double> radii, bool extremal = false);
RadiusFunction hull_witness(const BallFamily& family, bool extremal = false);

/// OFF polygon soup of the 0-, 1- and 2-dimensional faces, vertices placed at
/// their first three coordinates.
std::string to_off(const TightSpanComplex& complex);

}  // namespace hypermetric
