#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hypermetric/complexes.hpp"

namespace hypermetric {

struct PersistencePair {
  std::size_t dimension = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();

  bool essential() const noexcept { return death == std::numeric_limits<double>::infinity(); }
};

struct PersistenceResult {
  std::vector<PersistencePair> pairs;
  std::size_t column_additions = 0;
};

/// Standard Z/2 boundary-matrix column reduction in filtration order. Pairs
/// with birth == death are dropped unless `keep_zero_length`. Throws
/// InvalidFiltration.
PersistenceResult persistence(const FilteredComplex& filtered, bool keep_zero_length = false);

/// Betti numbers at `scale` read off the barcode: pairs with birth <= scale < death.
std::vector<std::size_t> betti_from_pairs(const std::vector<PersistencePair>& pairs, double scale,
                                          std::size_t max_dim);

/// `dimension,birth,death` rows under a header; essential bars print "inf".
std::string barcode_csv(const std::vector<PersistencePair>& pairs);

}  // namespace hypermetric
