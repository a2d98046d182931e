#include <gtest/gtest.h>

#include <cmath>

#include "hypermetric/error.hpp"
#include "hypermetric/persistence.hpp"
#include "hypermetric/reports.hpp"
#include "support/oracles.hpp"

using namespace hypermetric;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<PersistencePair> in_dim(const std::vector<PersistencePair>& pairs, std::size_t dim) {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs) {
    if (p.dimension == dim) out.push_back(p);
  }
  return out;
}

// Random filtration: a VR filtration of a random space with values perturbed
// upward along the canonical order, so ties are broken arbitrarily.
FilteredComplex random_filtration(std::uint64_t seed) {
  const auto s = random_metric(7, seed);
  auto f = vr_filtration(s, all_points(s), 3);
  Rng rng(seed);
  std::map<std::vector<PointId>, double> value;
  for (auto& x : f.simplices) {
    double v = x.filtration_value + rng.uniform(0, 0.05);
    for (std::size_t skip = 0; skip < x.vertices.size() && x.vertices.size() > 1; ++skip) {
      auto facet = x.vertices;
      facet.erase(facet.begin() + static_cast<long>(skip));
      v = std::max(v, value.at(facet));
    }
    x.filtration_value = v;
    value[x.vertices] = v;
  }
  f.sort_canonical();
  return f;
}

}  // namespace

TEST(Persistence, SinglePoint) {
  FilteredComplex f;
  f.simplices.push_back({{0}, 0.0});
  const auto r = persistence(f);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].dimension, 0u);
  EXPECT_EQ(r.pairs[0].birth, 0.0);
  EXPECT_TRUE(r.pairs[0].essential());
}

TEST(Persistence, CircleOfFour) {
  const auto s = sample_circle(4, 4.0);
  const auto r = persistence(vr_filtration(s, all_points(s), 3));
  const auto h1 = in_dim(r.pairs, 1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1[0].birth, 0.5);
  EXPECT_EQ(h1[0].death, 1.0);
  EXPECT_TRUE(in_dim(r.pairs, 2).empty());
  EXPECT_EQ(in_dim(r.pairs, 0).size(), 4u);
}

TEST(Persistence, TwoPoints) {
  const auto s = sample_circle(2, 2.0);
  const auto r = persistence(vr_filtration(s, all_points(s)));
  ASSERT_EQ(r.pairs.size(), 2u);
  EXPECT_EQ(r.pairs[0].birth, 0.0);
  EXPECT_EQ(r.pairs[0].death, 0.5);
  EXPECT_EQ(r.pairs[1].death, kInf);
}

TEST(Persistence, ZeroLengthPairsOnRequest) {
  const auto s = sample_circle(4, 4.0);
  const auto f = vr_filtration(s, all_points(s), 3);
  const auto kept = persistence(f, true);
  const auto dropped = persistence(f);
  EXPECT_GT(kept.pairs.size(), dropped.pairs.size());
  for (const auto& p : kept.pairs) EXPECT_LE(p.birth, p.death);
  // Every simplex is either paired or essential.
  std::size_t essential = 0;
  for (const auto& p : kept.pairs) essential += p.essential() ? 1 : 0;
  EXPECT_EQ(2 * (kept.pairs.size() - essential) + essential, f.simplices.size());
}

TEST(Persistence, InvalidFiltrations) {
  auto expect_invalid = [](const FilteredComplex& f) {
    try {
      persistence(f);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidFiltration);
    }
  };
  FilteredComplex missing;
  missing.simplices = {{{0}, 0.0}, {{0, 1}, 1.0}};
  expect_invalid(missing);
  FilteredComplex late;
  late.simplices = {{{0}, 0.0}, {{0, 1}, 1.0}, {{1}, 2.0}};
  expect_invalid(late);
  FilteredComplex lower;
  lower.simplices = {{{0}, 0.0}, {{1}, 2.0}, {{0, 1}, 1.0}};
  expect_invalid(lower);
  FilteredComplex nan;
  nan.simplices = {{{0}, NAN}};
  expect_invalid(nan);
  FilteredComplex unsorted;
  unsorted.simplices = {{{0}, 0.0}, {{1}, 0.0}, {{1, 0}, 1.0}};
  expect_invalid(unsorted);
  FilteredComplex dup;
  dup.simplices = {{{0}, 0.0}, {{0}, 0.0}};
  expect_invalid(dup);
}

TEST(PersistenceProperty, BettiCurvesMatchSnapshots) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = random_filtration(seed);
    const auto pairs = persistence(f).pairs;
    double top = 0;
    for (const auto& x : f.simplices) top = std::max(top, x.filtration_value);
    for (int k = 0; k < 5; ++k) {
      const double scale = top * (0.1 + 0.2 * k);
      EXPECT_EQ(betti_from_pairs(pairs, scale, 2), betti_numbers(f.truncated(scale), 2)) << seed << " " << k;
    }
  }
}

TEST(PersistenceProperty, CircleHasOneLongBar) {
  for (std::size_t m : {6u, 8u, 12u}) {
    const auto s = sample_circle(m, static_cast<double>(m));
    const auto h1 = in_dim(persistence(vr_filtration(s, all_points(s), 2)).pairs, 1);
    ASSERT_GE(h1.size(), 1u);
    EXPECT_EQ(h1[0].birth, 0.5);
  }
}

TEST(PersistenceProperty, HullAndVrBarcodesCoincide) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_metric(8, seed);
    const auto a = barcode_csv(persistence(vr_filtration(s, all_points(s))).pairs);
    const auto b = barcode_csv(persistence(cech_hull_filtration(s, all_points(s))).pairs);
    EXPECT_EQ(a, b);
  }
}

TEST(BarcodeCsv, Format) {
  const std::vector<PersistencePair> pairs{{0, 0.0, 0.5}, {0, 0.0, kInf}, {1, 0.5, 1.0}};
  EXPECT_EQ(barcode_csv(pairs), "dimension,birth,death\n0,0,0.5\n0,0,inf\n1,0.5,1\n");
}

TEST(ComplexJson, RoundTrip) {
  const auto s = random_metric(5, 1);
  const auto f = vr_filtration(s, all_points(s));
  const auto doc = report::to_json(f);
  EXPECT_TRUE(doc.contains("simplices"));
  EXPECT_EQ(doc["max_dim"], 3);
  const auto back = report::complex_from_json(doc);
  ASSERT_EQ(back.simplices.size(), f.simplices.size());
  for (std::size_t i = 0; i < f.simplices.size(); ++i) {
    EXPECT_EQ(back.simplices[i].vertices, f.simplices[i].vertices);
    EXPECT_EQ(back.simplices[i].filtration_value, f.simplices[i].filtration_value);
  }
  EXPECT_THROW(report::complex_from_json(nlohmann::json::object()), Error);
}
