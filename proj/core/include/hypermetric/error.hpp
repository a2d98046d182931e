#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypermetric {

enum class Errc {
  NotSquare,
  Asymmetric,
  NegativeEntry,
  NonzeroDiagonal,
  TriangleViolation,
  DuplicatePoints,
  DisconnectedGraph,
  DimensionMismatch,
  InvalidArgument,
  EmptyWitnessSet,
  DegenerateTriple,
  NoValidTriple,
  NoQualifyingFamily,
  NonpositiveRadius,
  LengthMismatch,
  NotAdmissible,
  NotPairwiseAdmissible,
  NonConvergence,
  SizeCapExceeded,
  NotDownwardClosed,
  InvalidFiltration,
  IoError,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Exception carrying a machine-checkable error kind plus the indices that
/// triggered it. `what()` renders as `Kind(i,j,...)` followed by the detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::vector<std::size_t> indices, std::string_view detail = {});
  Error(Errc code, std::string_view detail);

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  /// `Kind(i,j)` without the free-form detail.
  std::string tag() const;

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
};

}  // namespace hypermetric
