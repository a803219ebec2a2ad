#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccclt/matrix.hpp"
#include "ccclt/model.hpp"

namespace ccclt {

/// How a_i = E[1 / (d_i (d_i - 1))] enters the variance components.
enum class ACoefficient {
  /// 1 / (mu_i (mu_i - 1)), the leading term of the expectation's Taylor
  /// expansion around mu_i. Matches Monte Carlo variances at desk-scale n.
  leading_order,
  /// The exact expectation over the Poisson-binomial law of d_i, truncated to
  /// {d_i >= 2}.
  exact_expectation,
};

struct TheoryOptions {
  /// Constant weights collapse every sum to one representative term.
  bool homogeneous_fast_path = true;
  ACoefficient a_convention = ACoefficient::leading_order;
  /// When > 0, the Poisson-binomial recursion drops upper support whose
  /// mass falls below this bound.
  double pmf_tail_cutoff = 0.0;
};

/// Exact law of d_i = sum_{j != i} Bernoulli(mu_ij).
struct DegreeDistribution {
  std::vector<double> pmf;  ///< pmf[k] = P(d_i = k)
  double mean() const;
  double total() const;
};

DegreeDistribution degree_distribution(const ModelSpec& model, std::size_t i,
                                       double tail_cutoff = 0.0);

/// E[1 / (d (d - 1))] over {d >= 2} for a given degree law.
double truncated_inverse_pair_moment(const DegreeDistribution& law);

/// Exact truncated a_i = E[1{d_i >= 2} / (d_i (d_i - 1))].
double a_coeff(const ModelSpec& model, std::size_t i);

/// E[t_i] = sum_{j != k} mu_ij mu_jk mu_ki (ordered pairs).
double expected_ti(const ModelSpec& model, std::size_t i);

/// Constants a_i, b_i, c_ij, d_ij, e_ij and E[t_i]. Under the homogeneous
/// fast path the pair constants are stored once.
class ClusteringConstants {
 public:
  std::size_t n() const { return a_.size(); }
  bool homogeneous() const { return homogeneous_; }
  ACoefficient a_convention() const { return convention_; }

  double a(std::size_t i) const { return a_[i]; }
  double b(std::size_t i) const { return b_[i]; }
  double et(std::size_t i) const { return et_[i]; }
  double a3(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[i] + a_[j] + a_[k];
  }
  double c(std::size_t i, std::size_t j) const { return homogeneous_ ? c0_ : c_(i, j); }
  /// d_ij = sum_{k != i,j} mu_ki mu_kj.
  double dsum(std::size_t i, std::size_t j) const { return homogeneous_ ? d0_ : d_(i, j); }
  double e(std::size_t i, std::size_t j) const { return homogeneous_ ? e0_ : e_(i, j); }

  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  const std::vector<double>& et() const { return et_; }

 private:
  friend ClusteringConstants clustering_constants(const ModelSpec&, const TheoryOptions&);

  bool homogeneous_ = false;
  ACoefficient convention_ = ACoefficient::leading_order;
  std::vector<double> a_, b_, et_;
  SquareMatrix c_, d_, e_;
  double c0_ = 0.0, d0_ = 0.0, e0_ = 0.0;
};

/// Throws ModelError when some mu_i <= 1 (b_i is singular at mu_i = 1).
ClusteringConstants clustering_constants(const ModelSpec& model,
                                         const TheoryOptions& options = {});

class TriangleConstants {
 public:
  std::size_t n() const { return eta_.size(); }
  bool homogeneous() const { return homogeneous_; }
  double eta(std::size_t i) const { return eta_[i]; }
  double gamma(std::size_t i, std::size_t j) const {
    return homogeneous_ ? gamma0_ : gamma_(i, j);
  }
  /// gamma_ij - (eta_i + eta_j) / 2, the coefficient of the linear term.
  double linear_coeff(std::size_t i, std::size_t j) const {
    return gamma(i, j) - 0.5 * (eta_[i] + eta_[j]);
  }
  const std::vector<double>& eta() const { return eta_; }

 private:
  friend TriangleConstants triangle_constants(const ModelSpec&, const TheoryOptions&);

  bool homogeneous_ = false;
  std::vector<double> eta_;
  SquareMatrix gamma_;
  double gamma0_ = 0.0;
};

TriangleConstants triangle_constants(const ModelSpec& model,
                                     const TheoryOptions& options = {});

struct SigmaComponents {
  double sigma1_sq = 0.0;  ///< cubic term
  double sigma2_sq = 0.0;  ///< linear term
  double sigma_sq() const { return sigma1_sq + sigma2_sq; }
};

struct VComponents {
  double v1_sq = 0.0;
  double v2_sq = 0.0;
  double v_sq() const { return v1_sq + v2_sq; }
};

/// Variance components of the average clustering coefficient:
///   sigma1^2 = (4/n^2) sum_{i<j<k} a_ijk^2 s_ij s_jk s_ki
///   sigma2^2 = (1/n^2) sum_{i<j} e_ij^2 s_ij,     s = mu (1 - mu).
/// The linear-term prefactor is 1/n^2: the first-order projection of C_n
/// onto Abar_ij is e_ij / n.
SigmaComponents sigma_components(const ModelSpec& model, const TheoryOptions& options = {});
SigmaComponents sigma_components(const ModelSpec& model, const ClusteringConstants& constants,
                                 const TheoryOptions& options = {});

/// Variance components of the weighted-triangle sum.
VComponents v_components(const ModelSpec& model, const TheoryOptions& options = {});
VComponents v_components(const ModelSpec& model, const TriangleConstants& constants,
                         const TheoryOptions& options = {});

/// Two-term approximation of E[C_n]; always uses the exact truncated a_i.
double mean_cc_approx(const ModelSpec& model, const TheoryOptions& options = {});

/// sum_{i<j<k} mu_ij mu_jk mu_ki / (mu_i mu_j mu_k), the leading term of E[T_n].
double mean_t_leading(const ModelSpec& model, const TheoryOptions& options = {});

enum class Regime { sub_half, half, super_half };

Regime regime_of(double alpha);
const char* to_string(Regime regime);

struct ErdosRenyiClosedForms {
  double sigma1_sq = 0.0;  ///< 6 / n^(3 - alpha)
  double sigma2_sq = 0.0;  ///< 2 / n^(2 + alpha)
  double sigma_sq = 0.0;   ///< regime-selected limit
  Regime regime = Regime::half;
};

/// Asymptotic variance scales of C_n for the c = 1 Erdos-Renyi graph.
ErdosRenyiClosedForms corollary1_closed_forms(double n, double alpha);

/// n^3 / (6 w^6 p_n^3) with w = sum_i w_i. Throws ModelError unless rank-1.
double corollary2_closed_form(const ModelSpec& model);

struct TheoreticalMoments {
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
  double sigma_sq = 0.0;
  double v1_sq = 0.0;
  double v2_sq = 0.0;
  double v_sq = 0.0;
  double mean_cc_approx = 0.0;
  double mean_t_leading = 0.0;
  ACoefficient a_convention = ACoefficient::leading_order;

  std::optional<ClusteringConstants> clustering;
  std::optional<TriangleConstants> triangles;
};

/// Every quantity above; keeps the constants when keep_constants is set.
TheoreticalMoments theoretical_moments(const ModelSpec& model,
                                       const TheoryOptions& options = {},
                                       bool keep_constants = false);

const char* to_string(ACoefficient convention);

}  // namespace ccclt
