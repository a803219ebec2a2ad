#pragma once

#include <cstdint>
#include <vector>

#include "ccclt/graph.hpp"

namespace ccclt {

/// Per-node ordered triangle counts t_i = sum_{j != k} A_ij A_jk A_ki (twice
/// the number of triangles through i) and degrees d_i.
struct NodeTriangleProfile {
  std::vector<std::uint64_t> t;
  std::vector<std::uint64_t> d;
};

NodeTriangleProfile triangle_profile(const Graph& g);

/// (1/n) sum_i t_i / (d_i (d_i - 1)); nodes with d_i < 2 contribute 0.
double avg_clustering(const Graph& g);

/// sum_{i<j<k} A_ij A_jk A_ki / (d_i d_j d_k) with the actual degrees of g.
double weighted_triangle_sum(const Graph& g);

/// t_i / (d_i (d_i - 1)), or 0 when d_i < 2. Throws std::out_of_range.
double local_clustering(const Graph& g, std::size_t i);

struct GraphStatistics {
  double avg_clustering = 0.0;
  double weighted_triangle_sum = 0.0;
  std::uint64_t triangles = 0;
};

/// Both statistics from a single triangle enumeration.
GraphStatistics evaluate_statistics(const Graph& g);

/// Calls visit(u, v, w) once per triangle with u < v < w, in lexicographic
/// order, by intersecting sorted neighbor lists above v.
template <typename Visit>
void for_each_triangle(const Graph& g, Visit&& visit) {
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    const auto nu = g.neighbors(u);
    for (std::size_t a = 0; a < nu.size(); ++a) {
      const std::uint32_t v = nu[a];
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      // both lists sorted: walk u's tail beyond v against v's neighbors beyond v
      std::size_t x = a + 1;
      std::size_t y = 0;
      while (y < nv.size() && nv[y] <= v) ++y;
      while (x < nu.size() && y < nv.size()) {
        if (nu[x] < nv[y]) {
          ++x;
        } else if (nv[y] < nu[x]) {
          ++y;
        } else {
          visit(u, v, nu[x]);
          ++x;
          ++y;
        }
      }
    }
  }
}

}  // namespace ccclt
