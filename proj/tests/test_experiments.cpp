#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "ccclt/experiments.hpp"
#include "ccclt/sampling.hpp"

using namespace ccclt;

namespace {

ModelSpec er(std::size_t n, double alpha) { return ModelSpec(n, alpha, 1.0, ConstantWeights{1.0}); }

ModelSpec rank_one(std::size_t n, double alpha) {
  return ModelSpec(n, alpha, 0.5, uniform_grid_weights(n, 0.5, 1.0));
}

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / x.size();
}

// Leading term of one replicate, written as the literal triple and pair sums.
double naive_leading_term(const ModelSpec& m, StatKind stat, SeedSpec seed, bool cubic,
                          bool linear) {
  const std::size_t n = m.n();
  const EdgeStream stream(n, seed);
  SquareMatrix abar(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) abar(i, j) = (stream.deviate(i, j) < edge_prob(m, i, j) ? 1.0 : 0.0) - edge_prob(m, i, j);
    }
  }
  double total = 0.0;
  if (stat == StatKind::clustering) {
    const auto k = clustering_constants(m);
    if (cubic) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t l = j + 1; l < n; ++l)
            total += 2.0 / n * k.a3(i, j, l) * abar(i, j) * abar(i, l) * abar(j, l);
    }
    if (linear) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) total += k.e(i, j) / n * abar(i, j);
    }
  } else {
    const auto t = triangle_constants(m);
    if (cubic) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t l = j + 1; l < n; ++l)
            total += abar(i, j) * abar(j, l) * abar(l, i) /
                     (expected_degree(m, i) * expected_degree(m, j) * expected_degree(m, l));
    }
    if (linear) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) total += t.linear_coeff(i, j) * abar(i, j);
    }
  }
  return total;
}

}  // namespace

TEST(KsDistance, Examples) {
  EXPECT_DOUBLE_EQ(ks_distance(std::vector<double>{0.0}), 0.5);

  const boost::math::normal_distribution<double> phi;
  std::vector<double> grid(100);
  for (std::size_t i = 0; i < 100; ++i) grid[i] = quantile(phi, (i + 0.5) / 100.0);
  EXPECT_NEAR(ks_distance(grid), 0.005, 1e-12);

  for (double& x : grid) x += 10.0;
  EXPECT_GT(ks_distance(grid), 0.99);
  EXPECT_LE(ks_distance(grid), 1.0);

  EXPECT_THROW(ks_distance(std::vector<double>{}), std::invalid_argument);
}

TEST(KsDistance, OrderInvariantAndBounded) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.3, 1.4);
  std::vector<double> x(500);
  for (double& v : x) v = z(rng);
  const double d = ks_distance(x);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(x.begin(), x.end(), rng);
    EXPECT_EQ(ks_distance(x), d);
  }
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 1.0);
}

TEST(SampleVariance, Basic) {
  EXPECT_DOUBLE_EQ(sample_variance(std::vector<double>{1, 2, 3, 4}), 5.0 / 3.0);
  EXPECT_EQ(sample_variance(std::vector<double>{2.5}), 0.0);
}

TEST(Correlation, TranslationAndScaleInvariant) {
  const std::vector<double> x{1, 2, 3, 4, 5.5};
  const std::vector<double> y{2, 1, 4, 3, 7};
  std::vector<double> shifted(y);
  for (double& v : shifted) v = 3 * v - 100;
  EXPECT_NEAR(correlation(x, y), correlation(x, shifted), 1e-14);
  EXPECT_TRUE(std::isnan(correlation(x, std::vector<double>(5, 1.0))));
  EXPECT_THROW(correlation(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(RunMc, TwoReplicatesGiveSymmetricScores) {
  McConfig config;
  config.replicates = 2;
  config.master_seed = 11;
  const auto r = run_mc(er(60, 0.4), config);
  ASSERT_EQ(r.z.size(), 2u);
  EXPECT_NEAR(r.z[0], -r.z[1], 1e-15);
  EXPECT_NEAR(r.z[0] + r.z[1], 0.0, 1e-12);
}

TEST(RunMc, EmpiricalCenteringInvariants) {
  for (auto stat : {StatKind::clustering, StatKind::weighted_triangles}) {
    McConfig config;
    config.stat = stat;
    config.replicates = 300;
    config.master_seed = 5;
    const auto model = rank_one(120, 0.4);
    const auto r = run_mc(model, config);
    ASSERT_EQ(r.values.size(), 300u);
    ASSERT_EQ(r.z.size(), 300u);
    EXPECT_NEAR(mean(r.z), 0.0, 1e-12);
    EXPECT_NEAR(sample_variance(r.z), r.empirical_var_ratio, 1e-12 * r.empirical_var_ratio);
    EXPECT_EQ(r.center, r.empirical_mean);
    EXPECT_FALSE(r.lemma3_bias.has_value());
    const double expected_scale = stat == StatKind::clustering ? sigma_components(model).sigma_sq()
                                                               : v_components(model).v_sq();
    EXPECT_EQ(r.scale_sq, expected_scale);
    for (std::size_t k = 0; k < 300; ++k) {
      EXPECT_EQ(r.values[k], statistic_value(stat, sample_graph(model, {5, k})));
    }
  }
}

TEST(RunMc, MeanExpansionCenteringReportsBias) {
  McConfig config;
  config.replicates = 50;
  config.centering = Centering::lemma3;
  const auto model = er(150, 0.4);
  const auto r = run_mc(model, config);
  ASSERT_TRUE(r.lemma3_bias.has_value());
  EXPECT_EQ(r.center, mean_cc_approx(model));
  EXPECT_NEAR(*r.lemma3_bias, (r.center - r.empirical_mean) / std::sqrt(r.scale_sq), 1e-12);

  config.stat = StatKind::weighted_triangles;
  EXPECT_THROW(run_mc(model, config), std::invalid_argument);
}

TEST(RunMc, CountsZeroStatistics) {
  McConfig config;
  config.replicates = 200;
  config.master_seed = 1;
  const auto model = ModelSpec(20, 0.9, 1.0, ConstantWeights{1.0});
  config.stat = StatKind::weighted_triangles;
  const auto r = run_mc(model, config);
  const auto zeros = std::count(r.values.begin(), r.values.end(), 0.0);
  EXPECT_EQ(r.zero_statistic_count, static_cast<std::size_t>(zeros));
  EXPECT_GT(r.zero_statistic_count, 0u);
}

TEST(RunMc, Preconditions) {
  McConfig config;
  config.replicates = 1;
  EXPECT_THROW(run_mc(er(50, 0.5), config), std::invalid_argument);
  config.replicates = 10;
  EXPECT_THROW(run_mc(ModelSpec(4, 0.9, 0.1, ConstantWeights{0.1}), config), ModelError);
}

TEST(RunMc, DeterministicAcrossWorkerCounts) {
  McConfig config;
  config.replicates = 64;
  config.master_seed = 99;
  const auto model = rank_one(90, 0.5);
  ::setenv("CCCLT_WORKERS", "1", 1);
  const auto a = run_mc(model, config);
  ::setenv("CCCLT_WORKERS", "5", 1);
  const auto b = run_mc(model, config);
  ::unsetenv("CCCLT_WORKERS");
  EXPECT_EQ(a, b);
}

TEST(PhaseSweep, RatioIncreasesThroughTheTransition) {
  const std::vector<double> alphas{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  const auto sweep = phase_sweep(1000, alphas, 1.0);
  ASSERT_EQ(sweep.records.size(), alphas.size());
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    EXPECT_GT(sweep.records[k].ratio, sweep.records[k - 1].ratio);
  }
  EXPECT_LT(sweep.records.front().ratio, 0.1);
  EXPECT_GT(sweep.records.back().ratio, 10.0);
  EXPECT_GE(sweep.records[3].ratio, 2.4);
  EXPECT_LE(sweep.records[3].ratio, 3.6);
  for (const auto& rec : sweep.records) {
    EXPECT_GT(rec.ratio, 0.0);
    EXPECT_EQ(rec.ratio, rec.sigma1_sq / rec.sigma2_sq);
    const auto closed = corollary1_closed_forms(1000, rec.alpha);
    EXPECT_EQ(rec.closed.sigma_sq, closed.sigma_sq);
    EXPECT_FALSE(rec.empirical_var.has_value());
  }
}

TEST(PhaseSweep, OptionalEmpiricalVariance) {
  PhaseSweepOptions options;
  options.empirical_replicates = 40;
  const std::vector<double> alphas{0.4};
  const auto sweep = phase_sweep(100, alphas, 1.0, options);
  ASSERT_TRUE(sweep.records[0].empirical_var.has_value());
  EXPECT_GT(*sweep.records[0].empirical_var, 0.0);
}

TEST(Decomposition, LeadingTermMatchesLiteralSums) {
  struct Case {
    ModelSpec model;
    StatKind stat;
  };
  const Case cases[] = {
      {rank_one(30, 0.7), StatKind::clustering},
      {rank_one(30, 0.3), StatKind::clustering},
      {rank_one(30, 0.5), StatKind::clustering},
      {rank_one(30, 0.7), StatKind::weighted_triangles},
      {rank_one(30, 0.3), StatKind::weighted_triangles},
  };
  for (const auto& c : cases) {
    for (auto leading : {LeadingTerm::regime, LeadingTerm::full}) {
      DecompositionConfig config;
      config.stat = c.stat;
      config.replicates = 4;
      config.master_seed = 8;
      config.leading = leading;
      const auto report = decomposition_check(c.model, config);
      for (std::size_t r = 0; r < 4; ++r) {
        const double expected = naive_leading_term(c.model, c.stat, {8, r}, report.cubic_term,
                                                   report.linear_term);
        EXPECT_NEAR(report.leading_values[r], expected, 1e-12 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST(Decomposition, RegimeSelectsTerms) {
  DecompositionConfig config;
  config.replicates = 3;
  const auto sub = decomposition_check(rank_one(40, 0.3), config);
  EXPECT_EQ(sub.regime, Regime::sub_half);
  EXPECT_TRUE(sub.linear_term);
  EXPECT_FALSE(sub.cubic_term);
  const auto sup = decomposition_check(rank_one(40, 0.7), config);
  EXPECT_TRUE(sup.cubic_term);
  EXPECT_FALSE(sup.linear_term);
  const auto half = decomposition_check(rank_one(40, 0.5), config);
  EXPECT_TRUE(half.cubic_term);
  EXPECT_TRUE(half.linear_term);
}

TEST(Decomposition, HomogeneousTriangleLinearTermIsDegenerate) {
  DecompositionConfig config;
  config.stat = StatKind::weighted_triangles;
  config.replicates = 20;
  const auto report = decomposition_check(er(200, 0.3), config);
  EXPECT_TRUE(report.degenerate_linear_term);
  EXPECT_FALSE(report.correlation.has_value());
  EXPECT_FALSE(report.residual_var_fraction.has_value());

  const auto heterogeneous = decomposition_check(rank_one(200, 0.3), config);
  EXPECT_FALSE(heterogeneous.degenerate_linear_term);
  ASSERT_TRUE(heterogeneous.correlation.has_value());
  EXPECT_TRUE(std::isfinite(*heterogeneous.correlation));
}

TEST(Decomposition, SizeCaps) {
  DecompositionConfig config;
  config.replicates = 2;
  EXPECT_THROW(decomposition_check(er(301, 0.7), config), std::invalid_argument);
  EXPECT_THROW(decomposition_check(er(2001, 0.3), config), std::invalid_argument);
  config.leading = LeadingTerm::full;
  EXPECT_THROW(decomposition_check(er(400, 0.3), config), std::invalid_argument);
}

TEST(Decomposition, CorrelationIsCenteringInvariant) {
  DecompositionConfig config;
  config.replicates = 100;
  config.master_seed = 4;
  const auto report = decomposition_check(er(300, 0.3), config);
  ASSERT_TRUE(report.correlation.has_value());
  std::vector<double> raw(report.centered_statistic);
  for (double& v : raw) v += 0.25;
  EXPECT_NEAR(correlation(raw, report.leading_values), *report.correlation, 1e-12);
  EXPECT_NEAR(mean(report.centered_statistic), 0.0, 1e-15);
  EXPECT_GE(*report.residual_var_fraction, 0.0);
}

TEST(Summarize, RecordsWeightRange) {
  const auto s = summarize(rank_one(10, 0.4));
  EXPECT_EQ(s.n, 10u);
  EXPECT_EQ(s.weight_kind, "rank1");
  EXPECT_DOUBLE_EQ(s.min_weight, 0.5 * (0.5 + 0.5 / 9));
  EXPECT_DOUBLE_EQ(s.max_weight, 1.0 * (0.5 + 0.5 * 8 / 9.0));
}

TEST(RunMc, ErdosRenyiClusteringMeanMatchesExactValue) {
  // Given d_i, t_i ~ d_i (d_i - 1) p in expectation, so E[C_n] = p P(d_i >= 2).
  const std::size_t n = 200;
  const auto model = er(n, 0.4);
  const double p = model.p();
  const double q = 1.0 - p;
  const double exact = p * (1.0 - std::pow(q, n - 1) - (n - 1) * p * std::pow(q, n - 2));
  McConfig config;
  config.replicates = 5000;
  config.master_seed = 555;
  const auto r = run_mc(model, config);
  const double se = std::sqrt(sample_variance(r.values) / r.values.size());
  EXPECT_NEAR(r.empirical_mean, exact, 3 * se);
}
