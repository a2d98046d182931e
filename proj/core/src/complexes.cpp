#include "hypermetric/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "hypermetric/error.hpp"
#include "hypermetric/scaling.hpp"

namespace hypermetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Bits = std::vector<std::uint64_t>;

bool any_bit(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

struct Landmarks {
  std::vector<PointId> ids;
  std::vector<double> radii;
};

// Validates and sorts landmarks by id, carrying the radii along.
Landmarks prepare(const FiniteMetricSpace& space, std::span<const PointId> landmarks, std::span<const double> radii,
                  bool with_radii) {
  if (with_radii && radii.size() != landmarks.size()) {
    throw Error(Errc::LengthMismatch, "radius assignment length differs from landmark count");
  }
  std::vector<std::size_t> order(landmarks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return landmarks[a] < landmarks[b]; });
  Landmarks out;
  for (std::size_t pos : order) {
    const PointId id = landmarks[pos];
    if (id >= space.size()) throw Error(Errc::InvalidArgument, {id}, "landmark out of range");
    if (!out.ids.empty() && out.ids.back() == id) throw Error(Errc::InvalidArgument, {id}, "landmarks must be distinct");
    out.ids.push_back(id);
    if (with_radii) {
      const double r = radii[pos];
      if (!(r >= 0.0) || !std::isfinite(r)) throw Error(Errc::NonpositiveRadius, {pos}, "radius must be >= 0");
      out.radii.push_back(r);
    }
  }
  return out;
}

void check_witness_set(const FiniteMetricSpace& space, std::span<const PointId> witnesses) {
  if (witnesses.empty()) throw Error(Errc::EmptyWitnessSet, "witness set is empty");
  for (PointId w : witnesses) {
    if (w >= space.size()) throw Error(Errc::InvalidArgument, {w}, "witness out of range");
  }
}

// ball[a] = witnesses (by position) within r_a + tol of landmark a.
std::vector<Bits> witness_balls(const FiniteMetricSpace& space, const Landmarks& lm, std::span<const PointId> witnesses,
                                double tol) {
  const std::size_t words = (witnesses.size() + 63) / 64;
  std::vector<Bits> balls(lm.ids.size(), Bits(words, 0));
  for (std::size_t a = 0; a < lm.ids.size(); ++a) {
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      if (space(lm.ids[a], witnesses[w]) <= lm.radii[a] + tol) balls[a][w / 64] |= std::uint64_t{1} << (w % 64);
    }
  }
  return balls;
}

std::vector<PointId> to_ids(const Landmarks& lm, const std::vector<std::size_t>& positions) {
  std::vector<PointId> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(lm.ids[p]);
  return out;
}

// All cliques of `adjacent` with at most max_dim + 1 vertices.
FilteredComplex clique_complex(const Landmarks& lm, const std::function<bool(std::size_t, std::size_t)>& adjacent,
                               std::size_t max_dim) {
  const std::size_t n = lm.ids.size();
  FilteredComplex out;
  out.max_dim = max_dim;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) adj[a][b] = adj[b][a] = adjacent(a, b);
  }
  std::vector<std::size_t> current;
  std::function<void(const std::vector<std::size_t>&)> expand = [&](const std::vector<std::size_t>& candidates) {
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      const std::size_t c = candidates[idx];
      current.push_back(c);
      out.simplices.push_back({to_ids(lm, current), 0.0});
      if (current.size() <= max_dim) {
        std::vector<std::size_t> next;
        for (std::size_t k = idx + 1; k < candidates.size(); ++k) {
          if (adj[c][candidates[k]]) next.push_back(candidates[k]);
        }
        expand(next);
      }
      current.pop_back();
    }
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  expand(all);
  out.sort_canonical();
  return out;
}

// Every vertex subset of size <= max_dim + 1, with a value computed
// incrementally from the parent's state.
template <class State, class Extend, class Value>
FilteredComplex full_filtration(const Landmarks& lm, std::size_t max_dim, const State& root, Extend extend,
                                Value value) {
  const std::size_t n = lm.ids.size();
  FilteredComplex out;
  out.max_dim = max_dim;
  std::vector<std::size_t> current;
  std::function<void(const State&, std::size_t)> expand = [&](const State& state, std::size_t start) {
    for (std::size_t c = start; c < n; ++c) {
      current.push_back(c);
      const State child = extend(state, c);
      out.simplices.push_back({to_ids(lm, current), value(child)});
      if (current.size() <= max_dim) expand(child, c + 1);
      current.pop_back();
    }
  };
  expand(root, 0);
  out.sort_canonical();
  return out;
}

std::vector<std::vector<PointId>> facets(const std::vector<PointId>& vertices) {
  std::vector<std::vector<PointId>> out;
  if (vertices.size() < 2) return out;
  for (std::size_t skip = 0; skip < vertices.size(); ++skip) {
    std::vector<PointId> f;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i != skip) f.push_back(vertices[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Rank over Z/2 of a set of columns, each given as sorted row indices.
std::size_t z2_rank(const std::vector<std::vector<std::size_t>>& columns, std::size_t rows) {
  const std::size_t words = (rows + 63) / 64;
  std::map<std::size_t, Bits> basis;  // pivot (highest set bit) -> reduced vector
  for (const auto& col : columns) {
    Bits v(words, 0);
    for (auto r : col) v[r / 64] ^= std::uint64_t{1} << (r % 64);
    while (true) {
      std::size_t top = rows;
      for (std::size_t w = words; w-- > 0;) {
        if (v[w] != 0) {
          top = w * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(v[w])));
          break;
        }
      }
      if (top == rows) break;
      auto it = basis.find(top);
      if (it == basis.end()) {
        basis.emplace(top, std::move(v));
        break;
      }
      for (std::size_t w = 0; w < words; ++w) v[w] ^= it->second[w];
    }
  }
  return basis.size();
}

}  // namespace

void FilteredComplex::sort_canonical() {
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    if (a.filtration_value != b.filtration_value) return a.filtration_value < b.filtration_value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
}

std::size_t FilteredComplex::count(std::size_t dim) const {
  return static_cast<std::size_t>(std::count_if(simplices.begin(), simplices.end(), [&](const Simplex& s) {
    return !s.vertices.empty() && s.dimension() == dim;
  }));
}

bool FilteredComplex::contains(std::span<const PointId> vertices) const {
  return std::any_of(simplices.begin(), simplices.end(), [&](const Simplex& s) {
    return std::equal(s.vertices.begin(), s.vertices.end(), vertices.begin(), vertices.end());
  });
}

FilteredComplex FilteredComplex::truncated(double scale) const {
  FilteredComplex out;
  out.max_dim = max_dim;
  for (const auto& s : simplices) {
    if (s.filtration_value <= scale) out.simplices.push_back(s);
  }
  return out;
}

void FilteredComplex::check_downward_closed() const {
  std::set<std::vector<PointId>> present;
  for (const auto& s : simplices) present.insert(s.vertices);
  for (const auto& s : simplices) {
    for (const auto& f : facets(s.vertices)) {
      if (!present.count(f)) throw Error(Errc::NotDownwardClosed, s.vertices, "a facet is missing");
    }
  }
}

FilteredComplex vr_complex(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                           std::span<const double> radii, std::size_t max_dim) {
  const auto lm = prepare(space, landmarks, radii, true);
  const double tol = closed_ball_tolerance(space);
  return clique_complex(
      lm, [&](std::size_t a, std::size_t b) { return space(lm.ids[a], lm.ids[b]) <= lm.radii[a] + lm.radii[b] + tol; },
      max_dim);
}

FilteredComplex vr_complex_witnessed(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                                     std::span<const PointId> witnesses, std::span<const double> radii,
                                     std::size_t max_dim) {
  check_witness_set(space, witnesses);
  const auto lm = prepare(space, landmarks, radii, true);
  const auto balls = witness_balls(space, lm, witnesses, closed_ball_tolerance(space));
  auto out = clique_complex(lm, [&](std::size_t a, std::size_t b) { return any_bit(bits_and(balls[a], balls[b])); },
                            max_dim);
  // A vertex needs a witness in its own ball too.
  std::erase_if(out.simplices, [&](const Simplex& s) {
    for (PointId id : s.vertices) {
      const auto pos = static_cast<std::size_t>(std::lower_bound(lm.ids.begin(), lm.ids.end(), id) - lm.ids.begin());
      if (!any_bit(balls[pos])) return true;
    }
    return false;
  });
  return out;
}

FilteredComplex cech_complex(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                             std::span<const PointId> witnesses, std::span<const double> radii, std::size_t max_dim) {
  check_witness_set(space, witnesses);
  const auto lm = prepare(space, landmarks, radii, true);
  const auto balls = witness_balls(space, lm, witnesses, closed_ball_tolerance(space));
  const std::size_t n = lm.ids.size();

  FilteredComplex out;
  out.max_dim = max_dim;
  std::vector<std::size_t> current;
  std::function<void(const Bits&, std::size_t)> expand = [&](const Bits& common, std::size_t start) {
    for (std::size_t c = start; c < n; ++c) {
      Bits next = current.empty() ? balls[c] : bits_and(common, balls[c]);
      if (!any_bit(next)) continue;
      current.push_back(c);
      out.simplices.push_back({to_ids(lm, current), 0.0});
      if (current.size() <= max_dim) expand(next, c + 1);
      current.pop_back();
    }
  };
  expand({}, 0);
  out.sort_canonical();
  return out;
}

HullCechComplex cech_in_hull(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                             std::span<const double> radii, std::size_t max_dim) {
  HullCechComplex out;
  out.complex = vr_complex(space, landmarks, radii, max_dim);
  std::map<PointId, double> radius_of;
  for (std::size_t i = 0; i < landmarks.size(); ++i) radius_of[landmarks[i]] = radii[i];
  out.certificates.reserve(out.complex.simplices.size());
  for (const auto& s : out.complex.simplices) {
    std::vector<double> r;
    for (PointId id : s.vertices) r.push_back(radius_of.at(id));
    out.certificates.push_back(hull_witness(space, s.vertices, r));
  }
  return out;
}

FilteredComplex vr_filtration(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                              std::size_t max_dim) {
  const auto lm = prepare(space, landmarks, {}, false);
  struct State {
    std::vector<std::size_t> members;
    double value = 0.0;
  };
  return full_filtration(
      lm, max_dim, State{},
      [&](const State& s, std::size_t c) {
        State child = s;
        for (auto m : s.members) child.value = std::max(child.value, 0.5 * space(lm.ids[m], lm.ids[c]));
        child.members.push_back(c);
        return child;
      },
      [](const State& s) { return s.value; });
}

FilteredComplex cech_filtration(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                                std::span<const PointId> witnesses, std::size_t max_dim) {
  check_witness_set(space, witnesses);
  const auto lm = prepare(space, landmarks, {}, false);
  using State = std::vector<double>;  // per witness: max distance to the simplex's vertices
  return full_filtration(
      lm, max_dim, State(witnesses.size(), 0.0),
      [&](const State& s, std::size_t c) {
        State child(s.size());
        for (std::size_t w = 0; w < s.size(); ++w) child[w] = std::max(s[w], space(lm.ids[c], witnesses[w]));
        return child;
      },
      [](const State& s) { return *std::min_element(s.begin(), s.end()); });
}

FilteredComplex cech_hull_filtration(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                                     std::size_t max_dim) {
  // Balls of a common radius r around the vertices share a point of E(X)
  // exactly when every pair does, i.e. r >= d_ij / 2.
  const auto lm = prepare(space, landmarks, {}, false);
  struct State {
    std::vector<std::size_t> members;
    double radius = 0.0;
  };
  return full_filtration(
      lm, max_dim, State{},
      [&](const State& s, std::size_t c) {
        State child = s;
        for (auto m : s.members) {
          const double need = space(lm.ids[m], lm.ids[c]) / 2.0;
          if (need > child.radius) child.radius = need;
        }
        child.members.push_back(c);
        return child;
      },
      [](const State& s) { return s.radius; });
}

std::vector<std::size_t> betti_numbers(const FilteredComplex& complex, std::size_t max_dim) {
  complex.check_downward_closed();
  std::vector<std::map<std::vector<PointId>, std::size_t>> index(max_dim + 2);
  for (const auto& s : complex.simplices) {
    const std::size_t d = s.dimension();
    if (d <= max_dim + 1) index[d].emplace(s.vertices, 0);
  }
  for (auto& level : index) {
    std::size_t next = 0;
    for (auto& [v, idx] : level) idx = next++;
  }
  // rank of the boundary map from dimension d to d - 1
  std::vector<std::size_t> rank(max_dim + 2, 0);
  for (std::size_t d = 1; d <= max_dim + 1; ++d) {
    std::vector<std::vector<std::size_t>> columns;
    for (const auto& [v, idx] : index[d]) {
      std::vector<std::size_t> col;
      for (const auto& f : facets(v)) col.push_back(index[d - 1].at(f));
      std::sort(col.begin(), col.end());
      columns.push_back(std::move(col));
    }
    rank[d] = z2_rank(columns, index[d - 1].size());
  }
  std::vector<std::size_t> betti(max_dim + 1);
  for (std::size_t d = 0; d <= max_dim; ++d) betti[d] = index[d].size() - rank[d] - rank[d + 1];
  return betti;
}

std::vector<std::vector<PointId>> flag_check(const FilteredComplex& complex) {
  std::set<std::vector<PointId>> present;
  std::set<PointId> vertex_set;
  for (const auto& s : complex.simplices) {
    present.insert(s.vertices);
    if (s.vertices.size() == 1) vertex_set.insert(s.vertices[0]);
  }
  const std::vector<PointId> vertices(vertex_set.begin(), vertex_set.end());
  auto edge = [&](PointId a, PointId b) { return present.count({std::min(a, b), std::max(a, b)}) > 0; };

  std::vector<std::vector<PointId>> missing;
  std::vector<PointId> current;
  std::function<void(std::size_t)> expand = [&](std::size_t start) {
    for (std::size_t c = start; c < vertices.size(); ++c) {
      const bool joins = std::all_of(current.begin(), current.end(), [&](PointId u) { return edge(u, vertices[c]); });
      if (!joins) continue;
      current.push_back(vertices[c]);
      if (current.size() >= 3 && !present.count(current)) missing.push_back(current);
      if (current.size() <= complex.max_dim) expand(c + 1);
      current.pop_back();
    }
  };
  expand(0);
  return missing;
}

GapReport vr_cech_gap(const FiniteMetricSpace& space, std::span<const PointId> landmarks,
                      std::span<const PointId> witnesses, const GapRadii& radii, std::size_t max_dim) {
  check_witness_set(space, witnesses);
  const double tol = closed_ball_tolerance(space);
  GapReport report;

  auto in_cech = [&](const std::vector<PointId>& ids, const std::vector<double>& r) {
    return std::any_of(witnesses.begin(), witnesses.end(), [&](PointId w) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (space(ids[i], w) > r[i] + tol) return false;
      }
      return true;
    });
  };
  auto record = [&](std::vector<PointId> ids, std::vector<double> r, const ScalingResult& scale) {
    report.entries.push_back({std::move(ids), std::move(r), scale.value, scale.witness});
  };

  if (radii.rule == GapRadii::Rule::Gromov) {
    const auto lm = prepare(space, landmarks, {}, false);
    const std::size_t n = lm.ids.size();
    const std::size_t top = std::min<std::size_t>(max_dim, 2);
    for (std::size_t a = 0; a < n && top >= 1; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::vector<PointId> ids{lm.ids[a], lm.ids[b]};
        const double half = 0.5 * space(ids[0], ids[1]);
        ++report.vr_simplices;
        if (in_cech(ids, {half, half})) {
          ++report.cech_simplices;
        } else {
          record(ids, {half, half}, rho_pair(space, ids[0], ids[1], witnesses));
        }
        for (std::size_t c = b + 1; c < n && top >= 2; ++c) {
          const std::vector<PointId> tri{lm.ids[a], lm.ids[b], lm.ids[c]};
          const auto g = gromov_radii(space(tri[0], tri[1]), space(tri[0], tri[2]), space(tri[1], tri[2]));
          const std::vector<double> r(g.begin(), g.end());
          ++report.vr_simplices;
          if (in_cech(tri, r)) {
            ++report.cech_simplices;
          } else {
            record(tri, r, rho_triple(space, tri[0], tri[1], tri[2], witnesses, DegeneratePolicy::ExactHit));
          }
        }
      }
    }
  } else {
    const auto vr = vr_complex(space, landmarks, radii.per_landmark, max_dim);
    const auto cech = cech_complex(space, landmarks, witnesses, radii.per_landmark, max_dim);
    std::set<std::vector<PointId>> cech_set;
    for (const auto& s : cech.simplices) cech_set.insert(s.vertices);
    std::map<PointId, double> radius_of;
    for (std::size_t i = 0; i < landmarks.size(); ++i) radius_of[landmarks[i]] = radii.per_landmark[i];
    report.vr_simplices = vr.simplices.size();
    report.cech_simplices = cech.simplices.size();
    for (const auto& s : vr.simplices) {
      if (cech_set.count(s.vertices)) continue;
      std::vector<double> r;
      for (PointId id : s.vertices) r.push_back(radius_of.at(id));
      record(s.vertices, r, lambda_scaling(BallFamily(space, s.vertices, r), witnesses));
    }
  }

  for (const auto& e : report.entries) {
    report.max_lambda = std::max(report.max_lambda.value_or(-kInf), e.lambda);
  }
  return report;
}

}  // namespace hypermetric
