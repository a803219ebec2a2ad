#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccclt/graph.hpp"
#include "ccclt/model.hpp"
#include "ccclt/theory.hpp"

namespace ccclt {

enum class StatKind { clustering, weighted_triangles };
enum class Centering { empirical_mean, lemma3 };

const char* to_string(StatKind kind);
const char* to_string(Centering centering);
/// Short names used on the command line and in file names.
const char* short_name(StatKind kind);

/// Enough of a model to identify a run in its output files.
struct ModelSummary {
  std::size_t n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string weight_kind;
  double min_weight = 0.0;
  double max_weight = 0.0;

  bool operator==(const ModelSummary&) const = default;
};

ModelSummary summarize(const ModelSpec& model);

/// Value of the chosen statistic on one graph.
double statistic_value(StatKind kind, const Graph& g);

struct McConfig {
  StatKind stat = StatKind::clustering;
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 0;
  Centering centering = Centering::empirical_mean;
  TheoryOptions theory{};
};

struct McRunResult {
  ModelSummary model;
  StatKind stat = StatKind::clustering;
  std::size_t replicates = 0;
  std::uint64_t master_seed = 0;  ///< replicate r used SeedSpec{master_seed, r}
  Centering centering = Centering::empirical_mean;
  ACoefficient a_convention = ACoefficient::leading_order;
  std::vector<double> values;
  std::vector<double> z;
  double center = 0.0;
  double empirical_mean = 0.0;
  double scale_sq = 0.0;  ///< exact theoretical variance used for z
  double ks_distance = 0.0;
  double empirical_var_ratio = 0.0;
  /// (mean-expansion center - empirical mean) / sigma_n, for lemma3 centering.
  std::optional<double> lemma3_bias;
  std::size_t zero_statistic_count = 0;

  bool operator==(const McRunResult&) const = default;
};

/// Samples R graphs, evaluates the statistic and standardizes it by the
/// chosen center and the exact-sum theoretical variance (sigma_n^2 for the
/// clustering coefficient, v_n^2 for the weighted-triangle sum).
McRunResult run_mc(const ModelSpec& model, const McConfig& config);

/// sup_x |F_hat(x) - Phi(x)| of the sample against the standard normal.
/// Throws std::invalid_argument on an empty sample.
double ks_distance(std::span<const double> sample);

/// Unbiased sample variance (R - 1 denominator).
double sample_variance(std::span<const double> values);

struct PhaseRecord {
  double alpha = 0.0;
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
  double ratio = 0.0;  ///< sigma1^2 / sigma2^2
  ErdosRenyiClosedForms closed;
  std::optional<double> empirical_var;
};

struct PhaseSweepResult {
  std::size_t n = 0;
  double weight_c = 1.0;
  std::vector<double> alphas;
  std::vector<PhaseRecord> records;
};

struct PhaseSweepOptions {
  TheoryOptions theory{};
  /// When > 0, also estimates Var(C_n) from this many replicates per alpha.
  std::size_t empirical_replicates = 0;
  std::uint64_t master_seed = 0;
};

/// Exact sigma components across alpha for the Erdos-Renyi model with
/// constant weight c, next to the (c = 1) asymptotic closed forms.
PhaseSweepResult phase_sweep(std::size_t n, std::span<const double> alphas, double weight_c,
                             const PhaseSweepOptions& options = {});

/// Which leading terms enter the decomposition.
enum class LeadingTerm {
  regime,  ///< cubic above alpha = 1/2, linear below, both at 1/2
  full,    ///< cubic + linear regardless of alpha
};

const char* to_string(LeadingTerm term);

struct DecompositionConfig {
  StatKind stat = StatKind::clustering;
  std::size_t replicates = 500;
  std::uint64_t master_seed = 0;
  LeadingTerm leading = LeadingTerm::regime;
  TheoryOptions theory{};
};

inline constexpr std::size_t kCubicTermMaxNodes = 300;
inline constexpr std::size_t kLinearTermMaxNodes = 2000;

struct DecompositionReport {
  ModelSummary model;
  StatKind stat = StatKind::clustering;
  Regime regime = Regime::half;
  LeadingTerm leading = LeadingTerm::regime;
  std::size_t replicates = 0;
  std::uint64_t master_seed = 0;
  bool cubic_term = false;
  bool linear_term = false;
  /// The linear term's coefficients vanish (e.g. T_n under homogeneity).
  bool degenerate_linear_term = false;
  /// Absent when the only selected term is degenerate.
  std::optional<double> correlation;
  std::optional<double> residual_var_fraction;
  std::vector<double> centered_statistic;
  std::vector<double> leading_values;
};

/// Per replicate: the statistic, centered at the replicate mean, against the
/// regime's leading term evaluated from the same edge indicators.
/// Throws std::invalid_argument when n exceeds the size cap of the cubic
/// (300) or linear (2000) term.
DecompositionReport decomposition_check(const ModelSpec& model, const DecompositionConfig& config);

/// Pearson correlation; NaN when either side has zero variance.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace ccclt
