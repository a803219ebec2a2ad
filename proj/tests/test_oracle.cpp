#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ccclt/oracle.hpp"
#include "ccclt/sampling.hpp"
#include "ccclt/statistics.hpp"
#include "ccclt/theory.hpp"

using namespace ccclt;

namespace {

ModelSpec random_dense_model(std::size_t n, double alpha, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  SquareMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w(i, j) = w(j, i) = u(rng);
  }
  return ModelSpec(n, alpha, lo, DenseWeights{w});
}

// Constant model with mu_ij = mu exactly representable.
ModelSpec homogeneous(std::size_t n, double mu) {
  const double alpha = 0.1;
  return ModelSpec(n, alpha, mu, ConstantWeights{mu / std::pow(static_cast<double>(n), -alpha)});
}

}  // namespace

TEST(EnumerateMoments, TriangleOnThreeNodes) {
  const auto r = enumerate_moments(homogeneous(3, 0.5));
  EXPECT_EQ(r.graph_count, 8u);
  EXPECT_NEAR(r.total_probability, 1.0, 1e-12);
  EXPECT_NEAR(r.exact_mean_cc, 0.125, 1e-15);
  EXPECT_NEAR(r.exact_mean_t, 0.015625, 1e-15);
  EXPECT_NEAR(r.exact_var_cc, 0.125 - 0.125 * 0.125, 1e-15);
}

TEST(EnumerateMoments, GraphCountAndNormalization) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto r = enumerate_moments(random_dense_model(n, 0.3, 0.2, 1.0, n));
    EXPECT_EQ(r.n, n);
    EXPECT_EQ(r.graph_count, 1ull << (n * (n - 1) / 2));
    EXPECT_NEAR(r.total_probability, 1.0, 1e-12);
    EXPECT_GE(r.exact_var_cc, 0.0);
    EXPECT_GE(r.exact_var_t, 0.0);
  }
}

TEST(EnumerateMoments, TinyEdgeProbabilitiesUseLogSpace) {
  const auto r = enumerate_moments(ModelSpec(6, 0.5, 1e-4, ConstantWeights{1e-4}));
  EXPECT_NEAR(r.total_probability, 1.0, 1e-12);
  const double mu = 1e-4 / std::sqrt(6.0);
  EXPECT_NEAR(r.exact_et[0], 20.0 * mu * mu * mu, 1e-25);
}

TEST(EnumerateMoments, RejectsLargeN) {
  EXPECT_THROW(enumerate_moments(homogeneous(8, 0.5)), std::invalid_argument);
  EXPECT_THROW(enumerate_a_coeff(homogeneous(13, 0.5), 0), std::invalid_argument);
}

TEST(EnumerateMoments, AgreesWithTheoryMoments) {
  for (std::size_t n : {5u, 6u}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto m = random_dense_model(n, 0.3, 0.2, 1.0, 1000 * n + s);
      const auto r = enumerate_moments(m);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(r.exact_et[i], expected_ti(m, i), 1e-12);
        EXPECT_NEAR(r.exact_a[i], a_coeff(m, i), 1e-12);
      }
    }
  }
}

TEST(EnumerateACoeff, Examples) {
  EXPECT_NEAR(enumerate_a_coeff(homogeneous(5, 0.5), 2), 0.234375, 1e-14);
  EXPECT_NEAR(a_coeff(homogeneous(5, 0.5), 2), 0.234375, 1e-14);

  SquareMatrix ones(6, 1.0);
  for (std::size_t i = 0; i < 6; ++i) ones(i, i) = 0.0;
  const ModelSpec certain(6, 0.0, 1.0, DenseWeights{ones});
  EXPECT_NEAR(enumerate_a_coeff(certain, 0), 1.0 / (5.0 * 4.0), 1e-15);

  const auto m = random_dense_model(8, 0.2, 0.1, 1.0, 77);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(enumerate_a_coeff(m, i), a_coeff(m, i), 1e-12);
}

TEST(EnumerateMoments, MonteCarloMeansWithinFourStandardErrors) {
  const auto m = random_dense_model(5, 0.2, 0.5, 1.0, 5);
  const auto r = enumerate_moments(m);
  const std::size_t reps = 100000;
  double cc = 0.0;
  double t = 0.0;
  for (std::size_t k = 0; k < reps; ++k) {
    const auto s = evaluate_statistics(sample_graph(m, {90210, k}));
    cc += s.avg_clustering;
    t += s.weighted_triangle_sum;
  }
  EXPECT_NEAR(cc / reps, r.exact_mean_cc, 4 * std::sqrt(r.exact_var_cc / reps));
  EXPECT_NEAR(t / reps, r.exact_mean_t, 4 * std::sqrt(r.exact_var_t / reps));
}

TEST(GraphFromMask, BitOrderFollowsPairIndex) {
  const auto g = graph_from_mask(4, (1ull << pair_index(4, 0, 3)) | (1ull << pair_index(4, 1, 2)));
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 3}, {1, 2}}));
  EXPECT_EQ(graph_from_mask(5, (1ull << 10) - 1), Graph::complete(5));
}

TEST(ReferenceStatistics, CompleteGraph) {
  const AdjacencyMatrix k(Graph::complete(4));
  EXPECT_DOUBLE_EQ(reference_avg_clustering(k), 1.0);
  EXPECT_DOUBLE_EQ(reference_weighted_triangle_sum(k), 4.0 / 27.0);
}
