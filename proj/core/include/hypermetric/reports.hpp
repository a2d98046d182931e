#pragma once

#include <nlohmann/json.hpp>

#include "hypermetric/comparison.hpp"
#include "hypermetric/complexes.hpp"
#include "hypermetric/persistence.hpp"
#include "hypermetric/scaling.hpp"
#include "hypermetric/tight_span.hpp"

namespace hypermetric::report {

/// Non-finite reals become the strings "inf", "-inf" or "nan".
nlohmann::json real(double value);

nlohmann::json to_json(const ScalingResult& result, const BallFamily& family);
nlohmann::json to_json(const ScalingResult& result, std::span<const PointId> centers, std::span<const double> radii);
nlohmann::json to_json(const CurvatureVerdict& verdict);
nlohmann::json to_json(const TripleDeviation& deviation);
nlohmann::json to_json(const HellyReport& helly);
nlohmann::json to_json(const TightSpanComplex& complex);
nlohmann::json to_json(const FilteredComplex& complex);
nlohmann::json to_json(const GapReport& gap);

/// Inverse of to_json(FilteredComplex); simplices keep file order. Throws ParseError.
FilteredComplex complex_from_json(const nlohmann::json& doc);

}  // namespace hypermetric::report
