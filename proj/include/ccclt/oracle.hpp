#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccclt/graph.hpp"
#include "ccclt/model.hpp"

namespace ccclt {

/// Exact moments of C_n and T_n obtained by summing over every labeled graph
/// on n nodes under the model's product measure.
struct OracleReport {
  std::size_t n = 0;
  double exact_mean_cc = 0.0;
  double exact_var_cc = 0.0;
  double exact_mean_t = 0.0;
  double exact_var_t = 0.0;
  std::vector<double> exact_et;  ///< E[t_i]
  std::vector<double> exact_a;   ///< E[1{d_i >= 2} / (d_i (d_i - 1))]
  std::uint64_t graph_count = 0;
  double total_probability = 0.0;

  bool operator==(const OracleReport&) const = default;
};

inline constexpr std::size_t kOracleMaxNodes = 7;
inline constexpr std::size_t kOracleMaxNodesA = 12;

/// Throws std::invalid_argument for n > 7.
OracleReport enumerate_moments(const ModelSpec& model);

/// Exact a_i by enumerating node i's 2^(n-1) incident-edge configurations.
/// Throws std::invalid_argument for n > 12.
double enumerate_a_coeff(const ModelSpec& model, std::size_t i);

/// The graph whose edge set is the bit pattern `mask` over canonical pair
/// order (bit p set <=> pair p present).
Graph graph_from_mask(std::size_t n, std::uint64_t mask);

/// 0/1 adjacency matrix used by the reference evaluations below.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  explicit AdjacencyMatrix(const Graph& g);
  static AdjacencyMatrix from_mask(std::size_t n, std::uint64_t mask);

  std::size_t n() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set_edge(std::size_t i, std::size_t j);

 private:
  std::size_t n_;
  std::vector<int> a_;
};

/// Literal transcriptions of the statistic definitions as index sums over
/// the adjacency matrix, O(n^3); kept independent of the triangle-enumeration
/// code they check.
double reference_avg_clustering(const AdjacencyMatrix& a);
double reference_weighted_triangle_sum(const AdjacencyMatrix& a);

}  // namespace ccclt
