#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ccclt/matrix.hpp"

namespace ccclt {

struct ConstantWeights {
  double c = 1.0;
};

/// w_ij = w_i * w_j for i != j.
struct RankOneWeights {
  std::vector<double> w;
};

/// Full symmetric weight matrix with zero diagonal.
struct DenseWeights {
  SquareMatrix w;
};

using WeightSpec = std::variant<ConstantWeights, RankOneWeights, DenseWeights>;

enum class WeightKind { constant, rank_one, dense };

std::string to_string(WeightKind kind);

/// Raised by operations that need a model satisfying every invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Heterogeneous Erdos-Renyi null model: edges {i,j} are independent with
/// probability mu_ij = n^(-alpha) * w_ij. Immutable after construction.
class ModelSpec {
 public:
  /// Throws std::invalid_argument only when the weight dimensions do not
  /// match n; range and symmetry problems are reported by validate().
  ModelSpec(std::size_t n, double alpha, double beta, WeightSpec weights);

  std::size_t n() const { return n_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// p_n = n^(-alpha).
  double p() const { return p_; }
  const WeightSpec& weights() const { return weights_; }
  WeightKind kind() const { return static_cast<WeightKind>(weights_.index()); }
  bool homogeneous() const { return kind() == WeightKind::constant; }

  double weight(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  double alpha_;
  double beta_;
  double p_;
  WeightSpec weights_;
};

/// mu_ij; 0 on the diagonal. Throws std::out_of_range on bad indices.
double edge_prob(const ModelSpec& model, std::size_t i, std::size_t j);

/// mu_i = sum_{j != i} mu_ij.
double expected_degree(const ModelSpec& model, std::size_t i);

/// All mu_ij as a dense matrix (zero diagonal).
SquareMatrix edge_prob_matrix(const ModelSpec& model);

/// All mu_i, summed in column order with compensation.
std::vector<double> expected_degrees(const ModelSpec& model);

enum class ViolationKind {
  node_count,
  alpha_range,
  beta_range,
  weight_range,
  weight_asymmetry,
  weight_diagonal,
  edge_prob_range,
  low_expected_degree,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  /// Broken invariants: the model is not a valid instance.
  std::vector<Violation> violations;
  /// Valid model, but theory operations that divide by (mu_i - 1) will refuse it.
  std::vector<Violation> flags;
  double min_edge_prob = 0.0;
  double max_edge_prob = 0.0;
  double min_expected_degree = 0.0;

  bool ok() const { return violations.empty(); }
  bool theory_compatible() const { return ok() && flags.empty(); }
  /// One line per violation and flag.
  std::string describe() const;
};

ValidationReport validate(const ModelSpec& model);

/// Throws ModelError listing the violations when validate() is not ok().
void require_valid(const ModelSpec& model);

/// Same, but also rejects theory-incompatible models (some mu_i <= 1).
void require_theory_compatible(const ModelSpec& model);

/// Rank-one weights on the uniform grid lo + (hi - lo) * i / (n - 1).
RankOneWeights uniform_grid_weights(std::size_t n, double lo, double hi);

}  // namespace ccclt
