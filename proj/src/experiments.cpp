#include "ccclt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "ccclt/normal.hpp"
#include "ccclt/parallel.hpp"
#include "ccclt/sampling.hpp"
#include "ccclt/statistics.hpp"
#include "ccclt/summation.hpp"

namespace ccclt {
namespace {

double mean_of(std::span<const double> values) {
  return compensated_sum(values) / static_cast<double>(values.size());
}

std::vector<double> sample_statistics(const ModelSpec& model, StatKind kind,
                                      std::size_t replicates, std::uint64_t master_seed) {
  std::vector<double> values(replicates);
  parallel_for(replicates, [&](std::size_t r) {
    const Graph g = detail::sample_validated(model, {master_seed, r});
    values[r] = statistic_value(kind, g);
  });
  return values;
}

}  // namespace

const char* to_string(StatKind kind) {
  return kind == StatKind::clustering ? "clustering" : "weighted_triangles";
}

const char* short_name(StatKind kind) {
  return kind == StatKind::clustering ? "clustering" : "triangles";
}

const char* to_string(Centering centering) {
  return centering == Centering::empirical_mean ? "empirical_mean" : "lemma3";
}

const char* to_string(LeadingTerm term) {
  return term == LeadingTerm::regime ? "regime" : "full";
}

ModelSummary summarize(const ModelSpec& model) {
  ModelSummary s;
  s.n = model.n();
  s.alpha = model.alpha();
  s.beta = model.beta();
  s.weight_kind = to_string(model.kind());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < model.n(); ++i) {
    for (std::size_t j = i + 1; j < model.n(); ++j) {
      const double w = model.weight(i, j);
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  }
  s.min_weight = model.n() > 1 ? lo : 0.0;
  s.max_weight = model.n() > 1 ? hi : 0.0;
  return s;
}

double statistic_value(StatKind kind, const Graph& g) {
  const auto stats = evaluate_statistics(g);
  return kind == StatKind::clustering ? stats.avg_clustering : stats.weighted_triangle_sum;
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  CompensatedSum acc;
  for (double v : values) acc += (v - m) * (v - m);
  return acc.value() / static_cast<double>(values.size() - 1);
}

double ks_distance(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return std::min(d, 1.0);
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("correlation: need two equally sized samples of length >= 2");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx.value() <= 0.0 || syy.value() <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy.value() / std::sqrt(sxx.value() * syy.value());
}

McRunResult run_mc(const ModelSpec& model, const McConfig& config) {
  if (config.replicates < 2) throw std::invalid_argument("run_mc: need at least 2 replicates");
  if (config.centering == Centering::lemma3 && config.stat != StatKind::clustering) {
    throw std::invalid_argument(
        "run_mc: lemma3 centering is only defined for the clustering coefficient");
  }
  require_valid(model);

  McRunResult out;
  out.model = summarize(model);
  out.stat = config.stat;
  out.replicates = config.replicates;
  out.master_seed = config.master_seed;
  out.centering = config.centering;
  out.a_convention = config.theory.a_convention;
  out.scale_sq = config.stat == StatKind::clustering
                     ? sigma_components(model, config.theory).sigma_sq()
                     : v_components(model, config.theory).v_sq();

  out.values = sample_statistics(model, config.stat, config.replicates, config.master_seed);
  out.empirical_mean = mean_of(out.values);
  out.zero_statistic_count =
      static_cast<std::size_t>(std::count(out.values.begin(), out.values.end(), 0.0));

  const double scale = std::sqrt(out.scale_sq);
  out.center = out.empirical_mean;
  if (config.centering == Centering::lemma3) {
    out.center = mean_cc_approx(model, config.theory);
    out.lemma3_bias = (out.center - out.empirical_mean) / scale;
  }
  out.z.resize(out.values.size());
  for (std::size_t r = 0; r < out.values.size(); ++r) {
    out.z[r] = (out.values[r] - out.center) / scale;
  }
  out.ks_distance = ks_distance(out.z);
  out.empirical_var_ratio = sample_variance(out.values) / out.scale_sq;
  return out;
}

PhaseSweepResult phase_sweep(std::size_t n, std::span<const double> alphas, double weight_c,
                             const PhaseSweepOptions& options) {
  PhaseSweepResult out;
  out.n = n;
  out.weight_c = weight_c;
  out.alphas.assign(alphas.begin(), alphas.end());
  for (double alpha : alphas) {
    const ModelSpec model(n, alpha, weight_c, ConstantWeights{weight_c});
    const auto sigma = sigma_components(model, options.theory);
    PhaseRecord rec;
    rec.alpha = alpha;
    rec.sigma1_sq = sigma.sigma1_sq;
    rec.sigma2_sq = sigma.sigma2_sq;
    rec.ratio = sigma.sigma1_sq / sigma.sigma2_sq;
    rec.closed = corollary1_closed_forms(static_cast<double>(n), alpha);
    if (options.empirical_replicates > 0) {
      const auto values = sample_statistics(model, StatKind::clustering,
                                            options.empirical_replicates, options.master_seed);
      rec.empirical_var = sample_variance(values);
    }
    out.records.push_back(rec);
  }
  return out;
}

DecompositionReport decomposition_check(const ModelSpec& model,
                                        const DecompositionConfig& config) {
  if (config.replicates < 2) {
    throw std::invalid_argument("decomposition_check: need at least 2 replicates");
  }
  const std::size_t n = model.n();
  DecompositionReport out;
  out.model = summarize(model);
  out.stat = config.stat;
  out.regime = regime_of(model.alpha());
  out.leading = config.leading;
  out.replicates = config.replicates;
  out.master_seed = config.master_seed;
  out.cubic_term = config.leading == LeadingTerm::full || out.regime != Regime::sub_half;
  out.linear_term = config.leading == LeadingTerm::full || out.regime != Regime::super_half;

  if (out.cubic_term && n > kCubicTermMaxNodes) {
    throw std::invalid_argument(fmt::format(
        "decomposition_check: cubic leading term is capped at n <= {}, got {}",
        kCubicTermMaxNodes, n));
  }
  if (n > kLinearTermMaxNodes) {
    throw std::invalid_argument(fmt::format(
        "decomposition_check: linear leading term is capped at n <= {}, got {}",
        kLinearTermMaxNodes, n));
  }
  require_valid(model);

  const SquareMatrix mu = edge_prob_matrix(model);
  const double nn = static_cast<double>(n);

  // Coefficients of the leading terms:
  //   clustering: (2/n) sum a_ijk Abar_ij Abar_ik Abar_jk  and  (1/n) sum e_ij Abar_ij
  //   triangles:  sum Abar_ij Abar_jk Abar_ki / (mu_i mu_j mu_k)  and  sum lin_ij Abar_ij
  std::vector<double> node_weight(n);  // a_i (clustering) or 1/mu_i (triangles)
  SquareMatrix linear_coeff(n);
  double cubic_var = 0.0;
  double linear_var = 0.0;
  if (config.stat == StatKind::clustering) {
    const auto constants = clustering_constants(model, config.theory);
    const auto sigma = sigma_components(model, constants, config.theory);
    cubic_var = sigma.sigma1_sq;
    linear_var = sigma.sigma2_sq;
    for (std::size_t i = 0; i < n; ++i) {
      node_weight[i] = constants.a(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) linear_coeff(i, j) = constants.e(i, j) / nn;
      }
    }
  } else {
    const auto constants = triangle_constants(model, config.theory);
    const auto v = v_components(model, constants, config.theory);
    cubic_var = v.v1_sq;
    linear_var = v.v2_sq;
    const auto degrees = expected_degrees(model);
    for (std::size_t i = 0; i < n; ++i) {
      node_weight[i] = 1.0 / degrees[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) linear_coeff(i, j) = constants.linear_coeff(i, j);
      }
    }
  }
  out.degenerate_linear_term = linear_var == 0.0 || linear_var <= 1e-20 * cubic_var;

  const bool use_linear = out.linear_term && !out.degenerate_linear_term;
  const bool use_cubic = out.cubic_term;
  std::vector<double> stat(config.replicates);
  std::vector<double> lead(config.replicates, 0.0);

  parallel_for(config.replicates, [&](std::size_t r) {
    const SeedSpec seed{config.master_seed, r};
    const Graph g = detail::sample_validated(model, seed);
    stat[r] = statistic_value(config.stat, g);
    if (!use_linear && !use_cubic) return;

    const EdgeStream stream(n, seed);
    SquareMatrix centered(use_cubic ? n : 0);
    CompensatedSum linear;
    std::vector<double> row;
    std::uint64_t first = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      row.resize(n - i - 1);
      stream.fill(first, row);
      first += row.size();
      for (std::size_t k = 0; k < row.size(); ++k) {
        const std::size_t j = i + 1 + k;
        const double abar = (row[k] < mu(i, j) ? 1.0 : 0.0) - mu(i, j);
        if (use_cubic) {
          centered(i, j) = abar;
          centered(j, i) = abar;
        }
        if (use_linear) linear += linear_coeff(i, j) * abar;
      }
    }

    double cubic = 0.0;
    if (use_cubic) {
      CompensatedSum acc;
      for (std::size_t i = 0; i < n; ++i) {
        const auto bi = centered.row(i);
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
          const auto bj = centered.row(j);
          double inner = 0.0;
          if (config.stat == StatKind::clustering) {
            const double aij = node_weight[i] + node_weight[j];
            for (std::size_t k = j + 1; k < n; ++k) inner += (aij + node_weight[k]) * bi[k] * bj[k];
          } else {
            for (std::size_t k = j + 1; k < n; ++k) inner += node_weight[k] * bi[k] * bj[k];
            inner *= node_weight[i] * node_weight[j];
          }
          acc += bi[j] * inner;
        }
      }
      cubic = config.stat == StatKind::clustering ? 2.0 / nn * acc.value() : acc.value();
    }
    lead[r] = cubic + (use_linear ? linear.value() : 0.0);
  });

  const double m = mean_of(stat);
  out.centered_statistic.resize(stat.size());
  for (std::size_t r = 0; r < stat.size(); ++r) out.centered_statistic[r] = stat[r] - m;
  out.leading_values = std::move(lead);

  if (use_linear || use_cubic) {
    out.correlation = correlation(out.centered_statistic, out.leading_values);
    std::vector<double> residual(stat.size());
    for (std::size_t r = 0; r < stat.size(); ++r) {
      residual[r] = out.centered_statistic[r] - out.leading_values[r];
    }
    out.residual_var_fraction =
        sample_variance(residual) / sample_variance(out.centered_statistic);
  }
  return out;
}

}  // namespace ccclt
