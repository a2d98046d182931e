#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hypermetric/metric_space.hpp"
#include "hypermetric/tight_span.hpp"

namespace hypermetric {

struct Simplex {
  /// Strictly increasing point ids of the landmarks spanning the simplex.
  std::vector<PointId> vertices;
  double filtration_value = 0.0;

  std::size_t dimension() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Simplices ordered by (filtration value, dimension, vertices). Unfiltered
/// complexes carry value 0 on every simplex.
struct FilteredComplex {
  std::vector<Simplex> simplices;
  std::size_t max_dim = 0;

  void sort_canonical();
  std::size_t count(std::size_t dim) const;
  bool contains(std::span<const PointId> vertices) const;
  /// Subcomplex of simplices with value <= scale.
  FilteredComplex truncated(double scale) const;
  /// Throws NotDownwardClosed naming the first simplex with a missing facet.
  void check_downward_closed() const;
};

/// Vietoris-Rips complex: a simplex for every landmark set whose pairs satisfy
/// d_ij <= r_i + r_j (closed balls, slack 1e-12 x diameter). `radii` is
/// aligned with `landmarks`.
FilteredComplex vr_complex(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                           std::span<const double> radii, std::size_t max_dim = 3);

/// Strict variant for sparse witness sets: an edge needs a witness lying in
/// both balls; higher simplices are the cliques of those edges.
FilteredComplex vr_complex_witnessed(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                                     std::span<const PointId> witnesses, std::span<const double> radii,
                                     std::size_t max_dim = 3);

/// Čech complex: a simplex whenever one witness lies in all of its balls.
FilteredComplex cech_complex(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                             std::span<const PointId> witnesses, std::span<const double> radii,
                             std::size_t max_dim = 3);

struct HullCechComplex {
  FilteredComplex complex;
  /// certificates[s] is a common point, in the admissible polyhedron, of the
  /// balls B(d_{x_i}, r_i) of complex.simplices[s].
  std::vector<RadiusFunction> certificates;
};

/// Čech complex with the tight span as witness set. Membership follows the
/// pairwise criterion; each simplex carries a hull_witness certificate.
HullCechComplex cech_in_hull(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                             std::span<const double> radii, std::size_t max_dim = 3);

/// Uniform-radius sweep: a simplex enters at max_{i,j} d_ij / 2.
FilteredComplex vr_filtration(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                              std::size_t max_dim = 3);

/// Uniform-radius sweep: a simplex enters at min_w max_i d(x_i, w).
FilteredComplex cech_filtration(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                                std::span<const PointId> witnesses, std::size_t max_dim = 3);

/// Uniform-radius sweep of the hull-witnessed Čech complex: each simplex
/// enters at the smallest radius whose hull certificate exists.
FilteredComplex cech_hull_filtration(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                                     std::size_t max_dim = 3);

/// Betti numbers over Z/2 for dimensions 0..max_dim. Throws NotDownwardClosed.
std::vector<std::size_t> betti_numbers(const FilteredComplex& complex, std::size_t max_dim);

/// Vertex sets (up to complex.max_dim + 1 vertices) whose edges are all
/// present but which are not simplices. Empty iff the complex is flag.
std::vector<std::vector<PointId>> flag_check(const FilteredComplex& complex);

struct GapRadii {
  enum class Rule {
    /// d/2 on edges, Gromov radii on triangles; no canonical radii above dim 2.
    Gromov,
    /// One radius per landmark.
    Explicit,
  };
  Rule rule = Rule::Gromov;
  std::vector<double> per_landmark;

  static GapRadii gromov() { return {}; }
  static GapRadii explicit_radii(std::vector<double> r) { return {Rule::Explicit, std::move(r)}; }
};

struct GapEntry {
  std::vector<PointId> simplex;
  std::vector<double> radii;
  double lambda = 0.0;
  PointId witness = 0;
};

struct GapReport {
  std::vector<GapEntry> entries;
  std::optional<double> max_lambda;
  std::size_t vr_simplices = 0;
  std::size_t cech_simplices = 0;
};

/// Simplices of the VR complex missing from the Čech complex, each with the
/// multiplicative ball enlargement lambda that brings it in.
GapReport vr_cech_gap(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                      std::span<const PointId> witnesses, const GapRadii& radii, std::size_t max_dim = 2);

}  // namespace hypermetric
