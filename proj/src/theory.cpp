#include "ccclt/theory.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ccclt/parallel.hpp"
#include "ccclt/summation.hpp"

namespace ccclt {
namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }
double choose3(double n) { return n * (n - 1.0) * (n - 2.0) / 6.0; }

// (2 mu - 1) / (mu^2 (mu - 1)^2): minus the derivative of 1 / (x (x - 1)) at mu.
double inverse_pair_slope(double mu) {
  return (2.0 * mu - 1.0) / (mu * mu * (mu - 1.0) * (mu - 1.0));
}

double leading_a(double mu) { return 1.0 / (mu * (mu - 1.0)); }

void check_node(const ModelSpec& model, std::size_t i) {
  if (i >= model.n()) {
    throw std::out_of_range(fmt::format("node {} out of range for n = {}", i, model.n()));
  }
}

bool use_fast_path(const ModelSpec& model, const TheoryOptions& options) {
  return options.homogeneous_fast_path && model.homogeneous();
}

DegreeDistribution poisson_binomial(std::span<const double> probs, double tail_cutoff) {
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t hi = 0;
  double dropped = 0.0;  // total mass cut from the upper tail so far
  for (double q : probs) {
    ++hi;
    pmf[hi] = 0.0;
    for (std::size_t k = hi; k > 0; --k) pmf[k] = pmf[k] * (1.0 - q) + pmf[k - 1] * q;
    pmf[0] *= 1.0 - q;
    while (tail_cutoff > 0.0 && hi > 0 && dropped + pmf[hi] < tail_cutoff) {
      dropped += pmf[hi];
      pmf[hi] = 0.0;
      --hi;
    }
  }
  if (tail_cutoff > 0.0) pmf.resize(hi + 1);
  return {std::move(pmf)};
}

// Pairwise edge quantities shared by the generic (heterogeneous) sums.
struct Workspace {
  std::size_t n = 0;
  SquareMatrix mu;
  std::vector<double> deg;

  explicit Workspace(const ModelSpec& model)
      : n(model.n()), mu(edge_prob_matrix(model)), deg(n) {
    for (std::size_t i = 0; i < n; ++i) deg[i] = compensated_sum(mu.row(i));
  }

  double s(std::size_t i, std::size_t j) const { return mu(i, j) * (1.0 - mu(i, j)); }

  // sum_{i<j} f(i, j), reduced per row then across rows in index order.
  template <typename F>
  double pair_sum(F&& f) const {
    std::vector<double> partial(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
      CompensatedSum acc;
      for (std::size_t j = i + 1; j < n; ++j) acc += f(i, j);
      partial[i] = acc.value();
    });
    return compensated_sum(partial);
  }

  // sum_{i<j<k} x_ij * y_jk * z_ik * g(i, j, k) where the caller supplies the
  // innermost loop over k > j for fixed (i, j).
  template <typename Inner>
  double triple_sum(Inner&& inner) const {
    std::vector<double> partial(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
      CompensatedSum acc;
      for (std::size_t j = i + 1; j + 1 < n; ++j) acc += inner(i, j);
      partial[i] = acc.value();
    });
    return compensated_sum(partial);
  }

  // d_ij = sum_k mu_ik mu_kj (the zero diagonal drops k in {i, j}).
  SquareMatrix common_neighbor_mass() const {
    SquareMatrix d(n);
    parallel_for(n, [&](std::size_t i) {
      const auto ri = mu.row(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto rj = mu.row(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += ri[k] * rj[k];
        d(i, j) = acc;
      }
    });
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) d(i, j) = d(j, i);
    }
    return d;
  }
};

std::vector<double> exact_a_all(const Workspace& ws, double tail_cutoff) {
  std::vector<double> a(ws.n);
  parallel_for(ws.n, [&](std::size_t i) {
    std::vector<double> probs;
    probs.reserve(ws.n - 1);
    for (std::size_t j = 0; j < ws.n; ++j) {
      if (j != i) probs.push_back(ws.mu(i, j));
    }
    a[i] = truncated_inverse_pair_moment(poisson_binomial(probs, tail_cutoff));
  });
  return a;
}

// Homogeneous model summary: every pair has mu_ij = q.
struct Homogeneous {
  double n;
  double q;
  double deg;
  double s;

  explicit Homogeneous(const ModelSpec& model)
      : n(static_cast<double>(model.n())),
        q(model.p() * std::get<ConstantWeights>(model.weights()).c),
        deg((n - 1.0) * q),
        s(q * (1.0 - q)) {}

  double et() const { return (n - 1.0) * (n - 2.0) * q * q * q; }
  double exact_a(double tail_cutoff) const {
    std::vector<double> probs(static_cast<std::size_t>(n) - 1, q);
    return truncated_inverse_pair_moment(poisson_binomial(probs, tail_cutoff));
  }
};

double mean_cc_from(const Workspace& ws, const std::vector<double>& exact_a,
                    const SquareMatrix& d) {
  const std::size_t n = ws.n;
  std::vector<double> first(n), second(n);
  parallel_for(n, [&](std::size_t i) {
    CompensatedSum et;
    CompensatedSum cross;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      et += ws.mu(i, j) * d(i, j);
      cross += ws.s(i, j) * d(i, j);
    }
    first[i] = et.value() * exact_a[i];
    second[i] = inverse_pair_slope(ws.deg[i]) * cross.value();
  });
  const double nn = static_cast<double>(n);
  return compensated_sum(first) / nn - 2.0 * compensated_sum(second) / nn;
}

}  // namespace

const char* to_string(ACoefficient convention) {
  return convention == ACoefficient::leading_order ? "leading_order" : "exact_expectation";
}

double DegreeDistribution::mean() const {
  CompensatedSum acc;
  for (std::size_t k = 1; k < pmf.size(); ++k) acc += static_cast<double>(k) * pmf[k];
  return acc.value();
}

double DegreeDistribution::total() const { return compensated_sum(pmf); }

DegreeDistribution degree_distribution(const ModelSpec& model, std::size_t i,
                                       double tail_cutoff) {
  check_node(model, i);
  std::vector<double> probs;
  probs.reserve(model.n() - 1);
  for (std::size_t j = 0; j < model.n(); ++j) {
    if (j != i) probs.push_back(edge_prob(model, i, j));
  }
  return poisson_binomial(probs, tail_cutoff);
}

double truncated_inverse_pair_moment(const DegreeDistribution& law) {
  CompensatedSum acc;
  for (std::size_t k = 2; k < law.pmf.size(); ++k) {
    const double kd = static_cast<double>(k);
    acc += law.pmf[k] / (kd * (kd - 1.0));
  }
  return acc.value();
}

double a_coeff(const ModelSpec& model, std::size_t i) {
  return truncated_inverse_pair_moment(degree_distribution(model, i));
}

double expected_ti(const ModelSpec& model, std::size_t i) {
  check_node(model, i);
  CompensatedSum acc;
  for (std::size_t j = 0; j < model.n(); ++j) {
    if (j == i) continue;
    double inner = 0.0;
    for (std::size_t k = 0; k < model.n(); ++k) {
      if (k == i || k == j) continue;
      inner += edge_prob(model, j, k) * edge_prob(model, k, i);
    }
    acc += edge_prob(model, i, j) * inner;
  }
  return acc.value();
}

ClusteringConstants clustering_constants(const ModelSpec& model, const TheoryOptions& options) {
  require_theory_compatible(model);
  ClusteringConstants out;
  out.convention_ = options.a_convention;
  const std::size_t n = model.n();

  if (use_fast_path(model, options)) {
    const Homogeneous h(model);
    const double a = options.a_convention == ACoefficient::leading_order
                         ? leading_a(h.deg)
                         : h.exact_a(options.pmf_tail_cutoff);
    const double et = h.et();
    const double b = et * inverse_pair_slope(h.deg);
    out.homogeneous_ = true;
    out.a_.assign(n, a);
    out.b_.assign(n, b);
    out.et_.assign(n, et);
    out.d0_ = (h.n - 2.0) * h.q * h.q;
    out.c0_ = a * out.d0_;
    out.e0_ = 2.0 * out.c0_ + 2.0 * (a * out.d0_ + a * out.d0_) - b - b;
    return out;
  }

  const Workspace ws(model);
  if (options.a_convention == ACoefficient::leading_order) {
    out.a_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.a_[i] = leading_a(ws.deg[i]);
  } else {
    out.a_ = exact_a_all(ws, options.pmf_tail_cutoff);
  }
  out.d_ = ws.common_neighbor_mass();
  out.et_.resize(n);
  out.b_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum et;
    for (std::size_t j = 0; j < n; ++j) et += ws.mu(i, j) * out.d_(i, j);
    out.et_[i] = et.value();
    out.b_[i] = out.et_[i] * inverse_pair_slope(ws.deg[i]);
  }

  out.c_ = SquareMatrix(n);
  out.e_ = SquareMatrix(n);
  const auto& a = out.a_;
  parallel_for(n, [&](std::size_t i) {
    const auto ri = ws.mu.row(i);
    std::vector<double> weighted(n);
    for (std::size_t k = 0; k < n; ++k) weighted[k] = a[k] * ri[k];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto rj = ws.mu.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += weighted[k] * rj[k];
      out.c_(i, j) = acc;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j < i) out.c_(i, j) = out.c_(j, i);
      if (i == j) continue;
      out.e_(i, j) = 2.0 * out.c_(i, j) +
                     2.0 * (a[i] * out.d_(i, j) + a[j] * out.d_(j, i)) - out.b_[i] -
                     out.b_[j];
    }
  }
  return out;
}

SigmaComponents sigma_components(const ModelSpec& model, const TheoryOptions& options) {
  return sigma_components(model, clustering_constants(model, options), options);
}

SigmaComponents sigma_components(const ModelSpec& model, const ClusteringConstants& constants,
                                 const TheoryOptions& options) {
  if (constants.n() != model.n()) {
    throw std::invalid_argument("clustering constants do not match the model size");
  }
  SigmaComponents out;
  const double nn = static_cast<double>(model.n());
  if (use_fast_path(model, options) && constants.homogeneous()) {
    const Homogeneous h(model);
    const double a3 = 3.0 * constants.a(0);
    out.sigma1_sq = 4.0 / (nn * nn) * choose3(h.n) * a3 * a3 * h.s * h.s * h.s;
    const double e = constants.e(0, 1);
    out.sigma2_sq = choose2(h.n) * e * e * h.s / (nn * nn);
    return out;
  }

  const Workspace ws(model);
  const std::size_t n = ws.n;
  SquareMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s(i, j) = ws.s(i, j);
  }
  const auto& a = constants.a();
  const double cubic = ws.triple_sum([&](std::size_t i, std::size_t j) {
    const auto si = s.row(i);
    const auto sj = s.row(j);
    const double aij = a[i] + a[j];
    double acc = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double t = aij + a[k];
      acc += t * t * sj[k] * si[k];
    }
    return s(i, j) * acc;
  });
  out.sigma1_sq = 4.0 / (nn * nn) * cubic;
  const double linear = ws.pair_sum([&](std::size_t i, std::size_t j) {
    const double e = constants.e(i, j);
    return e * e * s(i, j);
  });
  out.sigma2_sq = linear / (nn * nn);
  return out;
}

TriangleConstants triangle_constants(const ModelSpec& model, const TheoryOptions& options) {
  require_valid(model);
  TriangleConstants out;
  const std::size_t n = model.n();
  if (use_fast_path(model, options)) {
    const Homogeneous h(model);
    out.homogeneous_ = true;
    out.gamma0_ = (h.n - 2.0) * h.q * h.q / (h.deg * h.deg * h.deg);
    // eta_i = sum_j mu_ij gamma_ij / mu_i = gamma under homogeneity
    out.eta_.assign(n, out.gamma0_);
    return out;
  }

  const Workspace ws(model);
  std::vector<double> inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[k] = 1.0 / ws.deg[k];
  out.gamma_ = SquareMatrix(n);
  parallel_for(n, [&](std::size_t i) {
    const auto ri = ws.mu.row(i);
    std::vector<double> weighted(n);
    for (std::size_t k = 0; k < n; ++k) weighted[k] = ri[k] * inv[k];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto rj = ws.mu.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += weighted[k] * rj[k];
      out.gamma_(i, j) = acc * inv[i] * inv[j];
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out.gamma_(i, j) = out.gamma_(j, i);
  }
  out.eta_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j) acc += ws.mu(i, j) * out.gamma_(i, j);
    out.eta_[i] = acc.value() * inv[i];
  }
  return out;
}

VComponents v_components(const ModelSpec& model, const TheoryOptions& options) {
  return v_components(model, triangle_constants(model, options), options);
}

VComponents v_components(const ModelSpec& model, const TriangleConstants& constants,
                         const TheoryOptions& options) {
  if (constants.n() != model.n()) {
    throw std::invalid_argument("triangle constants do not match the model size");
  }
  VComponents out;
  if (use_fast_path(model, options) && constants.homogeneous()) {
    const Homogeneous h(model);
    const double d3 = h.deg * h.deg * h.deg;
    out.v1_sq = choose3(h.n) * h.s * h.s * h.s / (d3 * d3);
    out.v2_sq = 0.0;
    return out;
  }
  const Workspace ws(model);
  const std::size_t n = ws.n;
  SquareMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) r(i, j) = ws.s(i, j) / (ws.deg[i] * ws.deg[j]);
    }
  }
  out.v1_sq = ws.triple_sum([&](std::size_t i, std::size_t j) {
    const auto ri = r.row(i);
    const auto rj = r.row(j);
    double acc = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) acc += rj[k] * ri[k];
    return r(i, j) * acc;
  });
  out.v2_sq = ws.pair_sum([&](std::size_t i, std::size_t j) {
    const double lin = constants.linear_coeff(i, j);
    return lin * lin * ws.s(i, j);
  });
  return out;
}

double mean_cc_approx(const ModelSpec& model, const TheoryOptions& options) {
  require_theory_compatible(model);
  if (use_fast_path(model, options)) {
    const Homogeneous h(model);
    const double a = h.exact_a(options.pmf_tail_cutoff);
    return h.et() * a -
           2.0 * (h.n - 1.0) * (h.n - 2.0) * inverse_pair_slope(h.deg) * h.s * h.q * h.q;
  }
  const Workspace ws(model);
  return mean_cc_from(ws, exact_a_all(ws, options.pmf_tail_cutoff), ws.common_neighbor_mass());
}

double mean_t_leading(const ModelSpec& model, const TheoryOptions& options) {
  require_valid(model);
  if (use_fast_path(model, options)) {
    const Homogeneous h(model);
    return choose3(h.n) * h.q * h.q * h.q / (h.deg * h.deg * h.deg);
  }
  const Workspace ws(model);
  const std::size_t n = ws.n;
  std::vector<double> inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[k] = 1.0 / ws.deg[k];
  return ws.triple_sum([&](std::size_t i, std::size_t j) {
    const auto ri = ws.mu.row(i);
    const auto rj = ws.mu.row(j);
    double acc = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) acc += rj[k] * ri[k] * inv[k];
    return ws.mu(i, j) * inv[i] * inv[j] * acc;
  });
}

Regime regime_of(double alpha) {
  if (std::abs(alpha - 0.5) < 1e-12) return Regime::half;
  return alpha < 0.5 ? Regime::sub_half : Regime::super_half;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::sub_half: return "sub_half";
    case Regime::half: return "half";
    case Regime::super_half: return "super_half";
  }
  return "unknown";
}

ErdosRenyiClosedForms corollary1_closed_forms(double n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(fmt::format("alpha = {} not in (0, 1)", alpha));
  }
  ErdosRenyiClosedForms out;
  out.sigma1_sq = 6.0 / std::pow(n, 3.0 - alpha);
  out.sigma2_sq = 2.0 / std::pow(n, 2.0 + alpha);
  out.regime = regime_of(alpha);
  switch (out.regime) {
    case Regime::super_half: out.sigma_sq = out.sigma1_sq; break;
    case Regime::half: out.sigma_sq = 8.0 / (n * n * std::sqrt(n)); break;
    case Regime::sub_half: out.sigma_sq = out.sigma2_sq; break;
  }
  return out;
}

double corollary2_closed_form(const ModelSpec& model) {
  const auto* r1 = std::get_if<RankOneWeights>(&model.weights());
  if (r1 == nullptr) throw ModelError("closed form for v_n^2 needs rank-1 weights");
  const double w = compensated_sum(r1->w);
  const double n = static_cast<double>(model.n());
  const double wp = w * model.p();
  return n * n * n / (6.0 * std::pow(w, 3.0) * wp * wp * wp);
}

TheoreticalMoments theoretical_moments(const ModelSpec& model, const TheoryOptions& options,
                                       bool keep_constants) {
  TheoreticalMoments out;
  out.a_convention = options.a_convention;
  auto cc = clustering_constants(model, options);
  const auto sigma = sigma_components(model, cc, options);
  auto tc = triangle_constants(model, options);
  const auto v = v_components(model, tc, options);
  out.sigma1_sq = sigma.sigma1_sq;
  out.sigma2_sq = sigma.sigma2_sq;
  out.sigma_sq = sigma.sigma_sq();
  out.v1_sq = v.v1_sq;
  out.v2_sq = v.v2_sq;
  out.v_sq = v.v_sq();
  if (use_fast_path(model, options) || options.a_convention == ACoefficient::leading_order) {
    out.mean_cc_approx = mean_cc_approx(model, options);
  } else {
    const Workspace ws(model);
    out.mean_cc_approx = mean_cc_from(ws, cc.a(), ws.common_neighbor_mass());
  }
  out.mean_t_leading = mean_t_leading(model, options);
  if (keep_constants) {
    out.clustering = std::move(cc);
    out.triangles = std::move(tc);
  }
  return out;
}

}  // namespace ccclt
