#include "ccclt/model.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "ccclt/summation.hpp"

namespace ccclt {

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant: return "constant";
    case WeightKind::rank_one: return "rank1";
    case WeightKind::dense: return "dense";
  }
  return "unknown";
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::node_count: return "node_count";
    case ViolationKind::alpha_range: return "alpha_range";
    case ViolationKind::beta_range: return "beta_range";
    case ViolationKind::weight_range: return "weight_range";
    case ViolationKind::weight_asymmetry: return "weight_asymmetry";
    case ViolationKind::weight_diagonal: return "weight_diagonal";
    case ViolationKind::edge_prob_range: return "edge_prob_range";
    case ViolationKind::low_expected_degree: return "low_expected_degree";
  }
  return "unknown";
}

ModelSpec::ModelSpec(std::size_t n, double alpha, double beta, WeightSpec weights)
    : n_(n),
      alpha_(alpha),
      beta_(beta),
      p_(std::pow(static_cast<double>(n), -alpha)),
      weights_(std::move(weights)) {
  if (const auto* r1 = std::get_if<RankOneWeights>(&weights_);
      r1 && r1->w.size() != n) {
    throw std::invalid_argument(fmt::format(
        "rank-1 weight vector has {} entries, expected n = {}", r1->w.size(), n));
  }
  if (const auto* dense = std::get_if<DenseWeights>(&weights_);
      dense && dense->w.size() != n) {
    throw std::invalid_argument(fmt::format(
        "dense weight matrix is {}x{}, expected n = {}", dense->w.size(),
        dense->w.size(), n));
  }
}

double ModelSpec::weight(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  switch (kind()) {
    case WeightKind::constant:
      return std::get<ConstantWeights>(weights_).c;
    case WeightKind::rank_one: {
      const auto& w = std::get<RankOneWeights>(weights_).w;
      return w[i] * w[j];
    }
    case WeightKind::dense:
      return std::get<DenseWeights>(weights_).w(i, j);
  }
  return 0.0;
}

double edge_prob(const ModelSpec& model, std::size_t i, std::size_t j) {
  if (i >= model.n() || j >= model.n()) {
    throw std::out_of_range(
        fmt::format("node pair ({}, {}) out of range for n = {}", i, j, model.n()));
  }
  if (i == j) return 0.0;
  return model.p() * model.weight(i, j);
}

double expected_degree(const ModelSpec& model, std::size_t i) {
  if (i >= model.n()) {
    throw std::out_of_range(
        fmt::format("node {} out of range for n = {}", i, model.n()));
  }
  CompensatedSum acc;
  for (std::size_t j = 0; j < model.n(); ++j) {
    if (j != i) acc += model.p() * model.weight(i, j);
  }
  return acc.value();
}

SquareMatrix edge_prob_matrix(const ModelSpec& model) {
  const std::size_t n = model.n();
  SquareMatrix mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) mu(i, j) = model.p() * model.weight(i, j);
    }
  }
  return mu;
}

std::vector<double> expected_degrees(const ModelSpec& model) {
  std::vector<double> out(model.n());
  for (std::size_t i = 0; i < model.n(); ++i) out[i] = expected_degree(model, i);
  return out;
}

std::string ValidationReport::describe() const {
  std::string out;
  for (const auto& v : violations) {
    out += fmt::format("violation [{}]: {}\n", to_string(v.kind), v.message);
  }
  for (const auto& f : flags) {
    out += fmt::format("flag [{}]: {}\n", to_string(f.kind), f.message);
  }
  return out;
}

ValidationReport validate(const ModelSpec& model) {
  ValidationReport report;
  auto violate = [&](ViolationKind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };
  const std::size_t n = model.n();
  const double beta = model.beta();

  if (n < 3) violate(ViolationKind::node_count, fmt::format("n = {} < 3", n));
  if (!(model.alpha() > 0.0 && model.alpha() < 1.0)) {
    violate(ViolationKind::alpha_range,
            fmt::format("alpha = {} not in (0, 1)", model.alpha()));
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    violate(ViolationKind::beta_range, fmt::format("beta = {} not in (0, 1]", beta));
  }

  auto check_weight = [&](double w, std::string_view what) {
    if (!(w > 0.0 && w <= 1.0) || w < beta) {
      violate(ViolationKind::weight_range,
              fmt::format("{} = {} not in [beta, 1] with beta = {}", what, w, beta));
    }
  };
  switch (model.kind()) {
    case WeightKind::constant:
      check_weight(std::get<ConstantWeights>(model.weights()).c, "c");
      break;
    case WeightKind::rank_one: {
      const auto& w = std::get<RankOneWeights>(model.weights()).w;
      for (std::size_t i = 0; i < w.size(); ++i) {
        check_weight(w[i], fmt::format("w[{}]", i));
      }
      break;
    }
    case WeightKind::dense: {
      const auto& w = std::get<DenseWeights>(model.weights()).w;
      for (std::size_t i = 0; i < n; ++i) {
        if (w(i, i) != 0.0) {
          violate(ViolationKind::weight_diagonal,
                  fmt::format("W[{0}][{0}] = {1} is not zero", i, w(i, i)));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
          if (w(i, j) != w(j, i)) {
            violate(ViolationKind::weight_asymmetry,
                    fmt::format("W[{0}][{1}] = {2} differs from W[{1}][{0}] = {3}", i,
                                j, w(i, j), w(j, i)));
          }
          check_weight(w(i, j), fmt::format("W[{}][{}]", i, j));
          if (w(j, i) != w(i, j)) check_weight(w(j, i), fmt::format("W[{}][{}]", j, i));
        }
      }
      break;
    }
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mu = model.p() * model.weight(i, j);
      lo = std::min(lo, mu);
      hi = std::max(hi, mu);
      if (!(mu > 0.0 && mu < 1.0)) {
        violate(ViolationKind::edge_prob_range,
                fmt::format("mu[{}][{}] = {} not in (0, 1)", i, j, mu));
      }
    }
  }
  if (n >= 2) {
    report.min_edge_prob = lo;
    report.max_edge_prob = hi;
  }

  double min_deg = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mu_i = expected_degree(model, i);
    if (mu_i < min_deg) {
      min_deg = mu_i;
      argmin = i;
    }
  }
  report.min_expected_degree = n == 0 ? 0.0 : min_deg;
  if (n > 0 && min_deg <= 1.0) {
    report.flags.push_back(
        {ViolationKind::low_expected_degree,
         fmt::format("expected degree <= 1 (mu[{}] = {}); theory constants need mu_i > 1",
                     argmin, min_deg)});
  }
  return report;
}

void require_valid(const ModelSpec& model) {
  const auto report = validate(model);
  if (!report.ok()) {
    throw ModelError("invalid model: " + report.violations.front().message +
                     (report.violations.size() > 1
                          ? fmt::format(" (and {} more)", report.violations.size() - 1)
                          : std::string{}));
  }
}

void require_theory_compatible(const ModelSpec& model) {
  const auto report = validate(model);
  if (!report.ok()) require_valid(model);
  if (!report.flags.empty()) {
    throw ModelError("model not supported by theory: " + report.flags.front().message);
  }
}

RankOneWeights uniform_grid_weights(std::size_t n, double lo, double hi) {
  RankOneWeights out;
  out.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.w[i] = n == 1 ? hi
                      : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace ccclt
