#include "ccclt/statistics.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "ccclt/summation.hpp"

namespace ccclt {
namespace {

double clustering_term(std::uint64_t t, std::uint64_t d) {
  if (d < 2) return 0.0;
  return static_cast<double>(t) / (static_cast<double>(d) * static_cast<double>(d - 1));
}

}  // namespace

NodeTriangleProfile triangle_profile(const Graph& g) {
  NodeTriangleProfile profile;
  profile.t.assign(g.n(), 0);
  profile.d.resize(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) profile.d[i] = g.degree(i);
  for_each_triangle(g, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
    profile.t[u] += 2;
    profile.t[v] += 2;
    profile.t[w] += 2;
  });
  return profile;
}

double avg_clustering(const Graph& g) { return evaluate_statistics(g).avg_clustering; }

double weighted_triangle_sum(const Graph& g) {
  return evaluate_statistics(g).weighted_triangle_sum;
}

double local_clustering(const Graph& g, std::size_t i) {
  if (i >= g.n()) {
    throw std::out_of_range(fmt::format("node {} out of range for n = {}", i, g.n()));
  }
  std::uint64_t t = 0;
  const auto ni = g.neighbors(i);
  for (std::size_t a = 0; a < ni.size(); ++a) {
    for (std::size_t b = a + 1; b < ni.size(); ++b) {
      if (g.has_edge(ni[a], ni[b])) t += 2;
    }
  }
  return clustering_term(t, g.degree(i));
}

GraphStatistics evaluate_statistics(const Graph& g) {
  GraphStatistics out;
  if (g.n() == 0) return out;
  std::vector<std::uint64_t> t(g.n(), 0);
  CompensatedSum weighted;
  for_each_triangle(g, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
    t[u] += 2;
    t[v] += 2;
    t[w] += 2;
    ++out.triangles;
    weighted += 1.0 / (static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v)) *
                       static_cast<double>(g.degree(w)));
  });
  CompensatedSum clustering;
  for (std::size_t i = 0; i < g.n(); ++i) clustering += clustering_term(t[i], g.degree(i));
  out.avg_clustering = clustering.value() / static_cast<double>(g.n());
  out.weighted_triangle_sum = weighted.value();
  return out;
}

}  // namespace ccclt
