#include "hypermetric/tight_span.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "combinations.hpp"
#include "hypermetric/error.hpp"
#include "hypermetric/io.hpp"
#include "hypermetric/parallel.hpp"
#include "hypermetric/scaling.hpp"

namespace hypermetric {

namespace {

void check_length(const FiniteMetricSpace& space, const RadiusFunction& f) {
  if (f.size() != space.size()) throw Error(Errc::LengthMismatch, "radius function length differs from space size");
}

void require_admissible(const FiniteMetricSpace& space, const RadiusFunction& f, double tau) {
  const auto check = is_admissible(space, f, tau);
  if (!check.admissible) {
    throw Error(Errc::NotAdmissible, {check.violation->first, check.violation->second});
  }
}

// f^_i = max_j (d_ij - f_j), j ranging over every point including i.
std::vector<double> lower_conjugate(const FiniteMetricSpace& space, std::span<const double> f) {
  const std::size_t n = space.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = -f[i];
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, space(i, j) - f[j]);
    out[i] = best;
  }
  return out;
}

// Constraint rows f_i + f_j >= d_ij for i <= j, indexed in row-major order.
struct ConstraintSystem {
  std::size_t n = 0;
  std::vector<IndexPair> pairs;

  explicit ConstraintSystem(std::size_t points) : n(points) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
    }
  }

  std::uint64_t tight_mask(const FiniteMetricSpace& space, std::span<const double> f, double tol) const {
    std::uint64_t mask = 0;
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [i, j] = pairs[c];
      if (std::abs(f[i] + f[j] - space(i, j)) <= tol) mask |= std::uint64_t{1} << c;
    }
    return mask;
  }

  bool spanning(std::uint64_t mask) const {
    std::vector<bool> covered(n, false);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      if (mask >> c & 1U) covered[pairs[c].first] = covered[pairs[c].second] = true;
    }
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
  }

  std::vector<IndexPair> edges(std::uint64_t mask) const {
    std::vector<IndexPair> out;
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      if (mask >> c & 1U) out.push_back(pairs[c]);
    }
    return out;
  }

  std::size_t rank(std::uint64_t mask) const {
    std::vector<std::vector<double>> rows;
    for (const auto& [i, j] : edges(mask)) {
      std::vector<double> row(n, 0.0);
      row[i] += 1.0;
      row[j] += 1.0;
      rows.push_back(std::move(row));
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
      std::size_t piv = r;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (std::abs(rows[k][col]) > std::abs(rows[piv][col])) piv = k;
      }
      if (std::abs(rows[piv][col]) < 1e-9) continue;
      std::swap(rows[piv], rows[r]);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k == r) continue;
        const double factor = rows[k][col] / rows[r][col];
        if (factor == 0.0) continue;
        for (std::size_t c = col; c < n; ++c) rows[k][c] -= factor * rows[r][c];
      }
      ++r;
    }
    return r;
  }
};

// Solves the n x n system given by `choice` (indices into pairs); returns
// false when it is singular.
bool solve_vertex(const FiniteMetricSpace& space, const ConstraintSystem& sys, std::span<const std::size_t> choice,
                  std::vector<double>& a, std::vector<double>& f) {
  const std::size_t n = sys.n;
  a.assign(n * (n + 1), 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto [i, j] = sys.pairs[choice[r]];
    a[r * (n + 1) + i] += 1.0;
    a[r * (n + 1) + j] += 1.0;
    a[r * (n + 1) + n] = space(i, j);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * (n + 1) + col]) > std::abs(a[piv * (n + 1) + col])) piv = r;
    }
    if (std::abs(a[piv * (n + 1) + col]) < 1e-9) return false;
    if (piv != col) {
      for (std::size_t c = 0; c <= n; ++c) std::swap(a[piv * (n + 1) + c], a[col * (n + 1) + c]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * (n + 1) + col] / a[col * (n + 1) + col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) a[r * (n + 1) + c] -= factor * a[col * (n + 1) + c];
    }
  }
  f.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = a[r * (n + 1) + n];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * (n + 1) + c] * f[c];
    f[r] = acc / a[r * (n + 1) + r];
  }
  return true;
}

bool admissible_within(const FiniteMetricSpace& space, const ConstraintSystem& sys, std::span<const double> f,
                       double tol) {
  for (const auto& [i, j] : sys.pairs) {
    if (f[i] + f[j] < space(i, j) - tol) return false;
  }
  return true;
}

std::vector<RadiusFunction> enumerate_vertices(const FiniteMetricSpace& space, const ConstraintSystem& sys,
                                               double tol) {
  const std::size_t n = sys.n;
  const std::size_t m = sys.pairs.size();
  // Partition by the first chosen constraint; each chunk keeps one vertex per
  // tight set.
  const std::size_t firsts = m - n + 1;
  std::vector<std::map<std::uint64_t, std::vector<double>>> found(chunk_count(firsts));
  parallel_for(firsts, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::vector<double> a;
    std::vector<double> f;
    std::vector<std::size_t> choice(n);
    for (std::size_t first = begin; first < end; ++first) {
      // Remaining n - 1 constraints drawn from (first, m).
      auto rest = detail::first_combination(n - 1);
      const std::size_t pool = m - first - 1;
      if (pool < n - 1) continue;
      do {
        choice[0] = first;
        for (std::size_t q = 0; q + 1 < n; ++q) choice[q + 1] = first + 1 + rest[q];
        if (!solve_vertex(space, sys, choice, a, f)) continue;
        if (!admissible_within(space, sys, f, tol)) continue;
        found[chunk].try_emplace(sys.tight_mask(space, f, tol), f);
      } while (n > 1 && detail::next_combination(rest, pool));
    }
  });

  std::vector<std::vector<double>> unique;
  for (const auto& chunk : found) {
    for (const auto& [mask, f] : chunk) {
      const bool seen = std::any_of(unique.begin(), unique.end(), [&](const std::vector<double>& g) {
        for (std::size_t i = 0; i < n; ++i) {
          if (std::abs(g[i] - f[i]) > tol) return false;
        }
        return true;
      });
      if (!seen) unique.push_back(f);
    }
  }
  std::sort(unique.begin(), unique.end());
  std::vector<RadiusFunction> out;
  out.reserve(unique.size());
  for (auto& f : unique) out.push_back({std::move(f)});
  return out;
}

FaceDescriptor describe_face(const ConstraintSystem& sys, std::uint64_t mask, const std::vector<RadiusFunction>& vertices,
                             const std::vector<std::uint64_t>& vertex_masks) {
  FaceDescriptor face;
  face.equality_edges = sys.edges(mask);
  face.dimension = sys.n - sys.rank(mask);
  std::vector<double> sample(sys.n, 0.0);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if ((vertex_masks[v] & mask) != mask) continue;
    face.vertex_ids.push_back(v);
    for (std::size_t i = 0; i < sys.n; ++i) sample[i] += vertices[v][i];
  }
  for (double& x : sample) x /= static_cast<double>(face.vertex_ids.size());
  face.sample_point = {std::move(sample)};
  return face;
}

}  // namespace

double sup_distance(const RadiusFunction& a, const RadiusFunction& b) {
  if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "radius functions differ in length");
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

double radius_tolerance(const FiniteMetricSpace& space) noexcept { return 1e-9 * space.diameter(); }

RadiusFunction kuratowski_row(const FiniteMetricSpace& space, PointId i) {
  if (i >= space.size()) throw Error(Errc::InvalidArgument, {i}, "index out of range");
  const auto row = space.row(i);
  return {{row.begin(), row.end()}};
}

AdmissibilityCheck is_admissible(const FiniteMetricSpace& space, const RadiusFunction& f, std::optional<double> tau) {
  check_length(space, f);
  const double tol = tau.value_or(radius_tolerance(space));
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i; j < f.size(); ++j) {
      if (f[i] + f[j] < space(i, j) - tol) return {false, IndexPair{i, j}};
    }
  }
  return {};
}

ExtremalityCheck is_extremal(const FiniteMetricSpace& space, const RadiusFunction& f, std::optional<double> tau) {
  const double tol = tau.value_or(radius_tolerance(space));
  require_admissible(space, f, tol);
  const auto hat = lower_conjugate(space, f.values);
  ExtremalityCheck out;
  out.slack.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.slack[i] = f[i] - hat[i];
    if (out.slack[i] > tol) out.extremal = false;
  }
  return out;
}

std::vector<IndexPair> equality_graph(const FiniteMetricSpace& space, const RadiusFunction& f,
                                      std::optional<double> tau) {
  const double tol = tau.value_or(radius_tolerance(space));
  require_admissible(space, f, tol);
  std::vector<IndexPair> edges;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i; j < f.size(); ++j) {
      if (std::abs(f[i] + f[j] - space(i, j)) <= tol) edges.emplace_back(i, j);
    }
  }
  return edges;
}

TightSpanComplex enumerate_faces(const FiniteMetricSpace& space, const FaceOptions& options) {
  const std::size_t n = space.size();
  if (n > options.n_cap) {
    throw Error(Errc::SizeCapExceeded, {n, options.n_cap}, "face enumeration is capped at n_cap points");
  }
  const ConstraintSystem sys(n);
  if (sys.pairs.size() > 64) throw Error(Errc::SizeCapExceeded, {n}, "edge masks hold at most 64 constraints");
  const double tol = options.tau_face * std::max(space.diameter(), 1.0);

  TightSpanComplex out;
  out.points = n;
  out.vertices = enumerate_vertices(space, sys, tol);
  std::vector<std::uint64_t> vertex_masks;
  for (const auto& v : out.vertices) vertex_masks.push_back(sys.tight_mask(space, v.values, tol));

  // Face edge sets are exactly the intersections of vertex tight sets; the
  // compact faces are the spanning ones.
  std::set<std::uint64_t> closed;
  std::vector<std::uint64_t> work;
  for (auto mask : vertex_masks) {
    if (sys.spanning(mask) && closed.insert(mask).second) work.push_back(mask);
  }
  while (!work.empty()) {
    const auto a = work.back();
    work.pop_back();
    const std::vector<std::uint64_t> snapshot(closed.begin(), closed.end());
    for (auto b : snapshot) {
      const auto c = a & b;
      if (sys.spanning(c) && closed.insert(c).second) work.push_back(c);
    }
  }

  for (auto mask : closed) {
    out.all_faces.push_back(describe_face(sys, mask, out.vertices, vertex_masks));
    const bool maximal = std::none_of(closed.begin(), closed.end(),
                                      [&](std::uint64_t other) { return other != mask && (other & mask) == other; });
    if (maximal) out.faces.push_back(out.all_faces.back());
  }
  auto by_edges = [](const FaceDescriptor& a, const FaceDescriptor& b) { return a.equality_edges < b.equality_edges; };
  std::sort(out.faces.begin(), out.faces.end(), by_edges);
  std::sort(out.all_faces.begin(), out.all_faces.end(), by_edges);
  for (const auto& f : out.faces) out.combinatorial_dimension = std::max(out.combinatorial_dimension, f.dimension);
  return out;
}

RadiusFunction retract_to_hull(const FiniteMetricSpace& space, const RadiusFunction& f,
                               std::optional<double> tau_conv, std::size_t max_iter) {
  const double tol = tau_conv.value_or(1e-10 * std::max(space.diameter(), 1.0));
  require_admissible(space, f, radius_tolerance(space));
  if (is_extremal(space, f, tol).extremal) return f;
  std::vector<double> cur = f.values;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const auto hat = lower_conjugate(space, cur);
    double step = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double next = 0.5 * (cur[i] + hat[i]);
      step = std::max(step, std::abs(next - cur[i]));
      cur[i] = next;
    }
    if (step <= tol) break;
  }
  RadiusFunction out{std::move(cur)};
  const auto check = is_extremal(space, out, 10.0 * tol);
  if (!check.extremal) {
    const double residual = *std::max_element(check.slack.begin(), check.slack.end());
    throw Error(Errc::NonConvergence, "retraction residual " + io::format_real(residual));
  }
  return out;
}

RadiusFunction hull_witness(const FiniteMetricSpace& space, std::span<const PointId> centers,
                            std::span<const double> radii, bool extremal) {
  if (centers.size() != radii.size()) throw Error(Errc::LengthMismatch, "centers and radii differ in length");
  if (centers.empty()) throw Error(Errc::InvalidArgument, "empty family");
  const double tol = closed_ball_tolerance(space);
  for (std::size_t a = 0; a < centers.size(); ++a) {
    if (centers[a] >= space.size()) throw Error(Errc::InvalidArgument, {centers[a]}, "center out of range");
    if (!(radii[a] >= 0.0)) throw Error(Errc::NonpositiveRadius, {a}, "radius must be >= 0");
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      if (radii[a] + radii[b] < space(centers[a], centers[b]) - tol) {
        throw Error(Errc::NotPairwiseAdmissible, {centers[a], centers[b]});
      }
    }
  }
  const std::size_t n = space.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t a = 0; a < centers.size(); ++a) p[y] = std::max(p[y], space(y, centers[a]) - radii[a]);
  }
  // Lifting to max(p, p^) makes p admissible without leaving any ball.
  const auto hat = lower_conjugate(space, p);
  for (std::size_t y = 0; y < n; ++y) p[y] = std::max(p[y], hat[y]);
  RadiusFunction out{std::move(p)};
  if (extremal) out = retract_to_hull(space, out);
  return out;
}

RadiusFunction hull_witness(const BallFamily& family, bool extremal) {
  return hull_witness(family.space(), family.centers(), family.radii(), extremal);
}

std::string to_off(const TightSpanComplex& complex) {
  const std::size_t n = complex.points;
  auto coord = [&](const RadiusFunction& v, std::size_t c) { return c < n ? v[c] : 0.0; };

  std::vector<std::vector<std::size_t>> polygons;
  std::set<std::vector<std::size_t>> covered;
  for (const auto& face : complex.all_faces) {
    if (face.dimension != 2) continue;
    // Order the polygon's vertices by angle in the face's own plane.
    const auto& ids = face.vertex_ids;
    const auto& c = face.sample_point.values;
    std::vector<double> u(n), w(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = complex.vertices[ids[0]][i] - c[i];
    const double un = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    for (double& x : u) x /= un;
    double best = 0.0;
    for (std::size_t k = 1; k < ids.size(); ++k) {
      std::vector<double> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = complex.vertices[ids[k]][i] - c[i];
      const double along = std::inner_product(t.begin(), t.end(), u.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) t[i] -= along * u[i];
      const double tn = std::sqrt(std::inner_product(t.begin(), t.end(), t.begin(), 0.0));
      if (tn > best) {
        best = tn;
        for (std::size_t i = 0; i < n; ++i) w[i] = t[i] / tn;
      }
    }
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t id : ids) {
      double x = 0.0, y = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = complex.vertices[id][i] - c[i];
        x += t * u[i];
        y += t * w[i];
      }
      order.emplace_back(std::atan2(y, x), id);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> poly;
    for (const auto& [angle, id] : order) poly.push_back(id);
    polygons.push_back(poly);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      auto e = std::vector<std::size_t>{poly[k], poly[(k + 1) % poly.size()]};
      std::sort(e.begin(), e.end());
      covered.insert(e);
    }
  }
  for (const auto& face : complex.faces) {
    if (face.dimension > 1) continue;
    auto ids = face.vertex_ids;
    std::sort(ids.begin(), ids.end());
    if (!covered.count(ids)) polygons.push_back(ids);
  }

  std::ostringstream os;
  os << "OFF\n" << complex.vertices.size() << ' ' << polygons.size() << " 0\n";
  for (const auto& v : complex.vertices) {
    os << io::format_real(coord(v, 0)) << ' ' << io::format_real(coord(v, 1)) << ' ' << io::format_real(coord(v, 2))
       << '\n';
  }
  for (const auto& poly : polygons) {
    os << poly.size();
    for (auto id : poly) os << ' ' << id;
    os << '\n';
  }
  return os.str();
}

}  // namespace hypermetric
