#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace ccclt {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Index of the unordered pair {i, j} (i != j) in row-major upper-triangular
/// order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
constexpr std::uint64_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::uint64_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

constexpr std::uint64_t pair_count(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

/// Immutable undirected simple graph: sorted neighbor lists in CSR layout,
/// plus a membership bitset when n <= kBitsetLimit.
class Graph {
 public:
  static constexpr std::size_t kBitsetLimit = 4096;

  Graph() = default;
  /// Edges may be given in either orientation. Throws std::invalid_argument
  /// on self-loops, duplicates or out-of-range endpoints.
  Graph(std::size_t n, std::span<const Edge> edges);

  static Graph complete(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], degree(i)};
  }
  bool has_edge(std::size_t i, std::size_t j) const;

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  /// Relabels node v as perm[v].
  Graph relabeled(std::span<const std::uint32_t> perm) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && offsets_ == other.offsets_ && neighbors_ == other.neighbors_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> neighbors_;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Edge-list text format: a header line "n <count>", then one "i j" line
/// (0-based, i < j) per edge in lexicographic order.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

void write_edge_list(const std::filesystem::path& path, const Graph& g);
Graph read_edge_list(const std::filesystem::path& path);

}  // namespace ccclt
