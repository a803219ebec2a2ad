#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "ccclt/graph.hpp"
#include "ccclt/model.hpp"

namespace ccclt {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

/// Per-pair uniform deviates U_ij in [0, 1) keyed by (master_seed,
/// replicate_index, pair_index). Edge {i,j} is present iff U_ij < mu_ij, so
/// centered indicators A_ij - mu_ij can be recomputed without the graph.
class EdgeStream {
 public:
  EdgeStream(std::size_t n, SeedSpec seed) : n_(n), seed_(seed) {}

  std::size_t n() const { return n_; }
  SeedSpec seed() const { return seed_; }

  /// Throws std::out_of_range for i == j or indices >= n.
  double deviate(std::size_t i, std::size_t j) const {
    if (i == j || i >= n_ || j >= n_) {
      throw std::out_of_range("deviate: invalid node pair");
    }
    return deviate_at(pair_index(n_, i, j));
  }
  double deviate_at(std::uint64_t pair) const;

  /// Deviates for pairs [first, first + out.size()) in pair order.
  void fill(std::uint64_t first, std::span<double> out) const;

 private:
  std::size_t n_;
  SeedSpec seed_;
};

EdgeStream edge_indicator_stream(const ModelSpec& model, SeedSpec seed);

/// Independent-edge sample from the model; a pure function of (model, seed).
Graph sample_graph(const ModelSpec& model, SeedSpec seed);

namespace detail {
// sample_graph without the O(n^2) model validation; callers validate once.
Graph sample_validated(const ModelSpec& model, SeedSpec seed);
}  // namespace detail

}  // namespace ccclt
