#include "ccclt/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace ccclt {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw std::invalid_argument(
          fmt::format("edge ({}, {}) out of range for n = {}", a, b, n));
    }
    if (a == b) throw std::invalid_argument(fmt::format("self-loop at node {}", a));
    ++degree[a];
    ++degree[b];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    neighbors_[cursor[a]++] = b;
    neighbors_[cursor[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw std::invalid_argument(fmt::format("duplicate edge at node {}", i));
    }
  }
  if (n <= kBitsetLimit) {
    words_per_row_ = (n + 63) / 64;
    bits_.assign(n * words_per_row_, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto j : neighbors(i)) bits_[i * words_per_row_ + j / 64] |= 1ull << (j % 64);
    }
  }
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || i == j) return false;
  if (!bits_.empty()) return (bits_[i * words_per_row_ + j / 64] >> (j % 64)) & 1u;
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(j));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (auto j : neighbors(i)) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph Graph::relabeled(std::span<const std::uint32_t> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
  auto list = edges();
  for (auto& [a, b] : list) {
    a = perm[a];
    b = perm[b];
  }
  return Graph(n_, list);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.n() << '\n';
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      if (!(fields >> tag >> n) || tag != "n") {
        throw std::runtime_error(
            fmt::format("line {}: expected header \"n <count>\"", line_no));
      }
      have_header = true;
      continue;
    }
    long long a = -1;
    long long b = -1;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest) || a < 0 || b < 0) {
      throw std::runtime_error(fmt::format("line {}: expected \"i j\"", line_no));
    }
    if (a >= b) {
      throw std::runtime_error(
          fmt::format("line {}: edge ({}, {}) must satisfy i < j", line_no, a, b));
    }
    edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  }
  if (!have_header) throw std::runtime_error("missing header \"n <count>\"");
  try {
    return Graph(n, edges);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  write_edge_list(out, g);
  if (!out) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("{}: cannot open for reading", path.string()));
  try {
    return read_edge_list(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace ccclt
