#include "ccclt/sampling.hpp"

#include <vector>

#include "ccclt/philox.hpp"

namespace ccclt {
namespace {

Philox4x32::Counter block_counter(std::uint64_t block, std::uint64_t replicate) {
  return {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
          static_cast<std::uint32_t>(replicate),
          static_cast<std::uint32_t>(replicate >> 32)};
}

Philox4x32::Key seed_key(std::uint64_t master) {
  return {static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32)};
}

// Each Philox block yields two 64-bit words: pairs 2b and 2b+1 share block b.
double half_block(const Philox4x32::Counter& out, std::uint64_t half) {
  const std::uint64_t word =
      half == 0 ? (static_cast<std::uint64_t>(out[0]) << 32) | out[1]
                : (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  return bits_to_unit(word);
}

}  // namespace

double EdgeStream::deviate_at(std::uint64_t pair) const {
  const auto out = Philox4x32::block(block_counter(pair >> 1, seed_.replicate_index),
                                     seed_key(seed_.master_seed));
  return half_block(out, pair & 1);
}

void EdgeStream::fill(std::uint64_t first, std::span<double> out) const {
  const auto key = seed_key(seed_.master_seed);
  std::size_t k = 0;
  std::uint64_t pair = first;
  if ((pair & 1) && k < out.size()) {
    out[k++] = deviate_at(pair++);
  }
  while (k + 1 < out.size()) {
    const auto block = Philox4x32::block(block_counter(pair >> 1, seed_.replicate_index), key);
    out[k++] = half_block(block, 0);
    out[k++] = half_block(block, 1);
    pair += 2;
  }
  if (k < out.size()) out[k] = deviate_at(pair);
}

EdgeStream edge_indicator_stream(const ModelSpec& model, SeedSpec seed) {
  require_valid(model);
  return EdgeStream(model.n(), seed);
}

Graph sample_graph(const ModelSpec& model, SeedSpec seed) {
  require_valid(model);
  return detail::sample_validated(model, seed);
}

Graph detail::sample_validated(const ModelSpec& model, SeedSpec seed) {
  const std::size_t n = model.n();
  const EdgeStream stream(n, seed);
  std::vector<Edge> edges;
  std::vector<double> row;
  std::uint64_t first = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    row.resize(n - i - 1);
    stream.fill(first, row);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::size_t j = i + 1 + k;
      if (row[k] < model.p() * model.weight(i, j)) {
        edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    }
    first += row.size();
  }
  return Graph(n, edges);
}

}  // namespace ccclt
