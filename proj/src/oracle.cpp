#include "ccclt/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ccclt/parallel.hpp"
#include "ccclt/statistics.hpp"
#include "ccclt/summation.hpp"

namespace ccclt {
namespace {

constexpr double kLogSpaceThreshold = 1e-3;

// Weighted running mean and second central moment (West 1979), merged
// across chunks with Chan's pairwise update.
struct WeightedMoments {
  double weight = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x, double w) {
    if (w == 0.0) return;
    weight += w;
    const double delta = x - mean;
    mean += delta * w / weight;
    m2 += w * delta * (x - mean);
  }

  void merge(const WeightedMoments& other) {
    if (other.weight == 0.0) return;
    const double total = weight + other.weight;
    const double delta = other.mean - mean;
    mean += delta * other.weight / total;
    m2 += other.m2 + delta * delta * weight * other.weight / total;
    weight = total;
  }

  double variance() const { return weight > 0.0 ? m2 / weight : 0.0; }
};

struct ChunkResult {
  WeightedMoments cc;
  WeightedMoments t;
  std::vector<CompensatedSum> et;
  std::vector<CompensatedSum> a;
  CompensatedSum total;
};

}  // namespace

AdjacencyMatrix::AdjacencyMatrix(const Graph& g) : AdjacencyMatrix(g.n()) {
  for (const auto& [i, j] : g.edges()) set_edge(i, j);
}

AdjacencyMatrix AdjacencyMatrix::from_mask(std::size_t n, std::uint64_t mask) {
  AdjacencyMatrix a(n);
  std::uint64_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if ((mask >> bit) & 1u) a.set_edge(i, j);
    }
  }
  return a;
}

void AdjacencyMatrix::set_edge(std::size_t i, std::size_t j) {
  a_[i * n_ + j] = 1;
  a_[j * n_ + i] = 1;
}

double reference_avg_clustering(const AdjacencyMatrix& a) {
  const std::size_t n = a.n();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    long numerator = 0;
    long denominator = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (j == k) continue;
        numerator += a(i, j) * a(j, k) * a(k, i);
        denominator += a(i, j) * a(i, k);
      }
    }
    if (denominator != 0) total += static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  return total / static_cast<double>(n);
}

double reference_weighted_triangle_sum(const AdjacencyMatrix& a) {
  const std::size_t n = a.n();
  std::vector<long> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) degree[i] += a(i, j);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const long product = degree[i] * degree[j] * degree[k];
        if (product == 0) continue;
        total += static_cast<double>(a(i, j) * a(j, k) * a(k, i)) / static_cast<double>(product);
      }
    }
  }
  return total;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  std::uint64_t bit = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j, ++bit) {
      if ((mask >> bit) & 1u) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

OracleReport enumerate_moments(const ModelSpec& model) {
  const std::size_t n = model.n();
  if (n > kOracleMaxNodes) {
    throw std::invalid_argument(
        fmt::format("exhaustive enumeration supports n <= {}, got {}", kOracleMaxNodes, n));
  }
  require_valid(model);

  const std::size_t pairs = static_cast<std::size_t>(pair_count(n));
  std::vector<double> mu(pairs);
  bool log_space = false;
  for (std::size_t i = 0, p = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      mu[p] = edge_prob(model, i, j);
      log_space = log_space || mu[p] < kLogSpaceThreshold;
    }
  }
  std::vector<double> log_on(pairs), log_off(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    log_on[p] = std::log(mu[p]);
    log_off[p] = std::log1p(-mu[p]);
  }

  const std::uint64_t graphs = std::uint64_t{1} << pairs;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(graphs, 256));
  const std::uint64_t per_chunk = graphs / chunks;
  std::vector<ChunkResult> results(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    ChunkResult& r = results[c];
    r.et.resize(n);
    r.a.resize(n);
    const std::uint64_t first = c * per_chunk;
    for (std::uint64_t mask = first; mask < first + per_chunk; ++mask) {
      double prob;
      if (log_space) {
        double lp = 0.0;
        for (std::size_t p = 0; p < pairs; ++p) lp += ((mask >> p) & 1u) ? log_on[p] : log_off[p];
        prob = std::exp(lp);
      } else {
        prob = 1.0;
        for (std::size_t p = 0; p < pairs; ++p) prob *= ((mask >> p) & 1u) ? mu[p] : 1.0 - mu[p];
      }
      const Graph g = graph_from_mask(n, mask);
      const auto stats = evaluate_statistics(g);
      const auto profile = triangle_profile(g);
      r.total += prob;
      r.cc.add(stats.avg_clustering, prob);
      r.t.add(stats.weighted_triangle_sum, prob);
      for (std::size_t i = 0; i < n; ++i) {
        r.et[i] += prob * static_cast<double>(profile.t[i]);
        const double d = static_cast<double>(profile.d[i]);
        if (profile.d[i] >= 2) r.a[i] += prob / (d * (d - 1.0));
      }
    }
  });

  OracleReport report;
  report.n = n;
  report.graph_count = graphs;
  WeightedMoments cc, t;
  std::vector<CompensatedSum> et(n), a(n);
  CompensatedSum total;
  for (const auto& r : results) {
    cc.merge(r.cc);
    t.merge(r.t);
    total += r.total.value();
    for (std::size_t i = 0; i < n; ++i) {
      et[i] += r.et[i].value();
      a[i] += r.a[i].value();
    }
  }
  report.exact_mean_cc = cc.mean;
  report.exact_var_cc = cc.variance();
  report.exact_mean_t = t.mean;
  report.exact_var_t = t.variance();
  report.total_probability = total.value();
  report.exact_et.resize(n);
  report.exact_a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.exact_et[i] = et[i].value();
    report.exact_a[i] = a[i].value();
  }
  return report;
}

double enumerate_a_coeff(const ModelSpec& model, std::size_t i) {
  const std::size_t n = model.n();
  if (n > kOracleMaxNodesA) {
    throw std::invalid_argument(
        fmt::format("incident-edge enumeration supports n <= {}, got {}", kOracleMaxNodesA, n));
  }
  if (i >= n) throw std::out_of_range(fmt::format("node {} out of range for n = {}", i, n));
  std::vector<double> probs;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) probs.push_back(edge_prob(model, i, j));
  }
  const std::size_t m = probs.size();
  CompensatedSum acc;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double prob = 1.0;
    int d = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if ((mask >> b) & 1u) {
        prob *= probs[b];
        ++d;
      } else {
        prob *= 1.0 - probs[b];
      }
    }
    if (d >= 2) acc += prob / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return acc.value();
}

}  // namespace ccclt
