#include "hypermetric/reports.hpp"

#include <cmath>

#include "hypermetric/error.hpp"

namespace hypermetric::report {

using nlohmann::json;

json real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

namespace {

json reals(std::span<const double> values) {
  json out = json::array();
  for (double v : values) out.push_back(real(v));
  return out;
}

json edges(const std::vector<IndexPair>& pairs) {
  json out = json::array();
  for (const auto& [i, j] : pairs) out.push_back({i, j});
  return out;
}

}  // namespace

json to_json(const ScalingResult& result, std::span<const PointId> centers, std::span<const double> radii) {
  return {
      {"quantity", to_string(result.quantity)},
      {"value", real(result.value)},
      {"witness", result.witness},
      {"centers", json(std::vector<PointId>(centers.begin(), centers.end()))},
      {"radii", reals(radii)},
      {"admissible", result.admissible},
      {"degenerate", result.degenerate},
  };
}

json to_json(const ScalingResult& result, const BallFamily& family) {
  return to_json(result, family.centers(), family.radii());
}

json to_json(const CurvatureVerdict& verdict) {
  return {
      {"triple", verdict.triple},
      {"rho", real(verdict.rho)},
      {"rho_bar", real(verdict.rho_bar)},
      {"margin", real(verdict.margin)},
      {"nonpositive", verdict.nonpositive},
      {"degenerate", verdict.degenerate},
      {"witness", verdict.witness},
      {"optimizer", {verdict.optimizer.x, verdict.optimizer.y}},
  };
}

json to_json(const TripleDeviation& deviation) {
  return {
      {"value", real(deviation.value)},
      {"triple", deviation.triple},
      {"witness", deviation.witness},
      {"triples_scanned", deviation.triples_scanned},
      {"degenerate_skipped", deviation.degenerate_skipped},
      {"sampled", deviation.sampled},
      {"seed", deviation.seed},
  };
}

json to_json(const HellyReport& helly) {
  return {
      {"n", helly.n_size},
      {"k", helly.k_size},
      {"max_lambda", real(helly.max_lambda)},
      {"worst_subset", helly.worst_subset},
      {"worst_radii", reals(helly.worst_radii)},
      {"witness", helly.witness},
      {"families_scanned", helly.families_scanned},
      {"families_qualifying", helly.families_qualifying},
      {"sampled", helly.sampled},
      {"seed", helly.seed},
  };
}

json to_json(const TightSpanComplex& complex) {
  json faces = json::array();
  for (const auto& f : complex.faces) {
    faces.push_back({
        {"edges", edges(f.equality_edges)},
        {"dim", f.dimension},
        {"sample", reals(f.sample_point.values)},
        {"vertices", f.vertex_ids},
    });
  }
  json vertices = json::array();
  for (const auto& v : complex.vertices) vertices.push_back(reals(v.values));
  return {
      {"points", complex.points},
      {"vertices", vertices},
      {"faces", faces},
      {"comb_dim", complex.combinatorial_dimension},
  };
}

json to_json(const FilteredComplex& complex) {
  json simplices = json::array();
  for (const auto& s : complex.simplices) simplices.push_back({{"v", s.vertices}, {"t", real(s.filtration_value)}});
  return {{"simplices", simplices}, {"max_dim", complex.max_dim}};
}

json to_json(const GapReport& gap) {
  json entries = json::array();
  for (const auto& e : gap.entries) {
    entries.push_back({
        {"simplex", e.simplex},
        {"radii", reals(e.radii)},
        {"lambda", real(e.lambda)},
        {"witness", e.witness},
    });
  }
  return {
      {"entries", entries},
      {"max_lambda", gap.max_lambda ? real(*gap.max_lambda) : json(nullptr)},
      {"vr_simplices", gap.vr_simplices},
      {"cech_simplices", gap.cech_simplices},
  };
}

FilteredComplex complex_from_json(const json& doc) {
  try {
    FilteredComplex out;
    out.max_dim = doc.at("max_dim").get<std::size_t>();
    for (const auto& s : doc.at("simplices")) {
      out.simplices.push_back({s.at("v").get<std::vector<PointId>>(), s.at("t").get<double>()});
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("complex JSON: ") + e.what());
  }
}

}  // namespace hypermetric::report
