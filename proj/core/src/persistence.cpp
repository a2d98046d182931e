#include "hypermetric/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hypermetric/error.hpp"
#include "hypermetric/io.hpp"

namespace hypermetric {

namespace {

// Symmetric difference of two sorted index lists.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source) {
  std::vector<std::size_t> out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(), std::back_inserter(out));
  target.swap(out);
}

}  // namespace

PersistenceResult persistence(const FilteredComplex& filtered, bool keep_zero_length) {
  const auto& simplices = filtered.simplices;
  const std::size_t n = simplices.size();
  std::map<std::vector<PointId>, std::size_t> position;

  std::vector<std::vector<std::size_t>> columns(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& simplex = simplices[s];
    if (simplex.vertices.empty() || !std::isfinite(simplex.filtration_value)) {
      throw Error(Errc::InvalidFiltration, {s}, "empty simplex or non-finite value");
    }
    if (!std::is_sorted(simplex.vertices.begin(), simplex.vertices.end()) ||
        std::adjacent_find(simplex.vertices.begin(), simplex.vertices.end()) != simplex.vertices.end()) {
      throw Error(Errc::InvalidFiltration, simplex.vertices, "vertices must be strictly increasing");
    }
    if (simplex.vertices.size() > 1) {
      for (std::size_t skip = 0; skip < simplex.vertices.size(); ++skip) {
        std::vector<PointId> facet;
        for (std::size_t i = 0; i < simplex.vertices.size(); ++i) {
          if (i != skip) facet.push_back(simplex.vertices[i]);
        }
        auto it = position.find(facet);
        if (it == position.end()) {
          throw Error(Errc::InvalidFiltration, simplex.vertices, "a facet does not precede the simplex");
        }
        if (simplices[it->second].filtration_value > simplex.filtration_value) {
          throw Error(Errc::InvalidFiltration, simplex.vertices, "a facet enters later than the simplex");
        }
        columns[s].push_back(it->second);
      }
      std::sort(columns[s].begin(), columns[s].end());
    }
    if (!position.emplace(simplex.vertices, s).second) {
      throw Error(Errc::InvalidFiltration, simplex.vertices, "duplicate simplex");
    }
  }

  PersistenceResult result;
  std::unordered_map<std::size_t, std::size_t> pivot_owner;  // lowest row -> column
  std::vector<bool> paired(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    auto& col = columns[s];
    while (!col.empty()) {
      auto it = pivot_owner.find(col.back());
      if (it == pivot_owner.end()) break;
      add_column(col, columns[it->second]);
      ++result.column_additions;
    }
    if (col.empty()) continue;
    const std::size_t birth_index = col.back();
    pivot_owner.emplace(birth_index, s);
    paired[birth_index] = paired[s] = true;
    const double birth = simplices[birth_index].filtration_value;
    const double death = simplices[s].filtration_value;
    if (keep_zero_length || birth != death) {
      result.pairs.push_back({simplices[birth_index].dimension(), birth, death});
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    // Unpaired columns that reduced to zero are essential classes.
    if (!paired[s] && columns[s].empty()) result.pairs.push_back({simplices[s].dimension(), simplices[s].filtration_value});
  }
  std::sort(result.pairs.begin(), result.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return result;
}

std::vector<std::size_t> betti_from_pairs(const std::vector<PersistencePair>& pairs, double scale,
                                          std::size_t max_dim) {
  std::vector<std::size_t> betti(max_dim + 1, 0);
  for (const auto& p : pairs) {
    if (p.dimension <= max_dim && p.birth <= scale && scale < p.death) ++betti[p.dimension];
  }
  return betti;
}

std::string barcode_csv(const std::vector<PersistencePair>& pairs) {
  std::ostringstream out;
  out << "dimension,birth,death\n";
  for (const auto& p : pairs) {
    out << p.dimension << ',' << io::format_real(p.birth) << ',' << (p.essential() ? "inf" : io::format_real(p.death))
        << '\n';
  }
  return out.str();
}

}  // namespace hypermetric
