#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ccclt/oracle.hpp"
#include "ccclt/sampling.hpp"
#include "ccclt/statistics.hpp"

using namespace ccclt;

namespace {

Graph make(std::size_t n, std::vector<Edge> edges) { return Graph(n, edges); }

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  return Graph(n, edges);
}

}  // namespace

TEST(TriangleProfile, SmallGraphs) {
  const auto k3 = triangle_profile(Graph::complete(3));
  EXPECT_EQ(k3.t, (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(k3.d, (std::vector<std::uint64_t>{2, 2, 2}));

  const auto path = triangle_profile(make(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(path.t, (std::vector<std::uint64_t>{0, 0, 0}));

  const auto k4 = triangle_profile(Graph::complete(4));
  EXPECT_EQ(k4.t, (std::vector<std::uint64_t>{6, 6, 6, 6}));
}

TEST(AvgClustering, SmallGraphs) {
  EXPECT_EQ(avg_clustering(Graph::complete(3)), 1.0);
  EXPECT_EQ(avg_clustering(make(3, {{0, 1}, {1, 2}})), 0.0);
  EXPECT_EQ(avg_clustering(Graph(5, std::vector<Edge>{})), 0.0);
  // triangle 0-1-2 plus pendant 2-3: node 2 has t=2, d=3
  EXPECT_DOUBLE_EQ(avg_clustering(make(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}})),
                   (1.0 + 1.0 + 2.0 / 6.0 + 0.0) / 4.0);
}

TEST(WeightedTriangleSum, SmallGraphs) {
  EXPECT_DOUBLE_EQ(weighted_triangle_sum(Graph::complete(4)), 4.0 / 27.0);
  EXPECT_EQ(weighted_triangle_sum(make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})), 0.0);
  EXPECT_DOUBLE_EQ(weighted_triangle_sum(make(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}})),
                   1.0 / (2.0 * 2.0 * 3.0));
}

TEST(LocalClustering, Examples) {
  EXPECT_EQ(local_clustering(Graph::complete(3), 1), 1.0);
  const auto star = make(5, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(local_clustering(star, 0), 0.0);
  EXPECT_EQ(local_clustering(star, 4), 0.0);
  EXPECT_THROW(local_clustering(star, 5), std::out_of_range);
}

TEST(Statistics, CompleteGraphClosedForm) {
  for (std::size_t n : {3u, 5u, 10u, 40u}) {
    const auto k = Graph::complete(n);
    const double binom3 = n * (n - 1.0) * (n - 2.0) / 6.0;
    EXPECT_DOUBLE_EQ(avg_clustering(k), 1.0);
    EXPECT_NEAR(weighted_triangle_sum(k), binom3 / std::pow(n - 1.0, 3), 1e-14);
  }
}

TEST(Statistics, EvaluateAgreesWithSeparateCalls) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = random_graph(60, 0.15, s);
    const auto stats = evaluate_statistics(g);
    EXPECT_EQ(stats.avg_clustering, avg_clustering(g));
    EXPECT_EQ(stats.weighted_triangle_sum, weighted_triangle_sum(g));
    const auto prof = triangle_profile(g);
    std::uint64_t sum_t = 0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      EXPECT_EQ(prof.t[i] % 2, 0u);
      EXPECT_LE(prof.t[i], prof.d[i] * (prof.d[i] > 0 ? prof.d[i] - 1 : 0));
      EXPECT_EQ(prof.d[i], g.degree(i));
      sum_t += prof.t[i];
    }
    EXPECT_EQ(sum_t, 6 * stats.triangles);
  }
}

TEST(Statistics, TriangleVisitorIsOrderedAndComplete) {
  const auto g = random_graph(25, 0.4, 9);
  std::vector<std::array<std::uint32_t, 3>> seen;
  for_each_triangle(g, [&](auto u, auto v, auto w) { seen.push_back({u, v, w}); });
  std::vector<std::array<std::uint32_t, 3>> expected;
  for (std::uint32_t i = 0; i < 25; ++i) {
    for (std::uint32_t j = i + 1; j < 25; ++j) {
      for (std::uint32_t k = j + 1; k < 25; ++k) {
        if (g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k)) expected.push_back({i, j, k});
      }
    }
  }
  EXPECT_EQ(seen, expected);
}

TEST(Statistics, RelabelingInvariance) {
  std::mt19937_64 rng(17);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = random_graph(40, 0.2, 100 + s);
    std::vector<std::uint32_t> perm(40);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = g.relabeled(perm);
    EXPECT_EQ(avg_clustering(h), avg_clustering(g));
    EXPECT_EQ(weighted_triangle_sum(h), weighted_triangle_sum(g));
  }
}

TEST(Statistics, Ranges) {
  const ModelSpec m(150, 0.3, 0.5, uniform_grid_weights(150, 0.5, 1.0));
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto stats = evaluate_statistics(sample_graph(m, {3, r}));
    EXPECT_GE(stats.avg_clustering, 0.0);
    EXPECT_LE(stats.avg_clustering, 1.0);
    EXPECT_GE(stats.weighted_triangle_sum, 0.0);
  }
}

TEST(Statistics, MatchesReferenceDefinitionOnAllSmallGraphs) {
  for (std::size_t n : {4u, 5u}) {
    const std::uint64_t count = 1ull << pair_count(n);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      const auto g = graph_from_mask(n, mask);
      const auto a = AdjacencyMatrix::from_mask(n, mask);
      const auto stats = evaluate_statistics(g);
      const double cc = reference_avg_clustering(a);
      const double t = reference_weighted_triangle_sum(a);
      EXPECT_NEAR(stats.avg_clustering, cc, 1e-14 * cc) << "mask " << mask;
      EXPECT_NEAR(stats.weighted_triangle_sum, t, 1e-14 * t) << "mask " << mask;
    }
  }
}
