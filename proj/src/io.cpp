#include "ccclt/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace ccclt {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(fmt::format("{}: cannot open for writing", path.string()));
  return os;
}

void finish_output(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw IoError(fmt::format("{}: write failed", path.string()));
}

std::string read_text(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(fmt::format("{}: cannot open for reading", path.string()));
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return buffer.str();
}

// Splits on commas and whitespace; every token must be a real.
std::vector<double> parse_reals(std::string_view text, const fs::path& path, std::size_t line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ',' || std::isspace(static_cast<unsigned char>(text[pos])))) {
      ++pos;
    }
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ',' && !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc{} || ptr != text.data() + end) {
      throw IoError(fmt::format("{}:{}: not a number: '{}'", path.string(), line,
                                text.substr(pos, end - pos)));
    }
    out.push_back(value);
    pos = end;
  }
  return out;
}

double min_offdiagonal_weight(const WeightSpec& weights, std::size_t n) {
  const ModelSpec probe(n, 0.5, 0.0, weights);
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) lo = std::min(lo, probe.weight(i, j));
  }
  return n > 1 ? lo : 1.0;
}

WeightSpec weights_from_json(const json& w, std::size_t n, const fs::path& base_dir) {
  const std::string kind = w.at("kind").get<std::string>();
  if (kind == "constant") return ConstantWeights{w.value("c", 1.0)};
  if (kind == "rank1") {
    if (w.contains("w")) return RankOneWeights{w.at("w").get<std::vector<double>>()};
    if (w.contains("grid")) {
      const auto grid = w.at("grid").get<std::vector<double>>();
      if (grid.size() != 2) throw ModelError("rank1 grid must be [lo, hi]");
      return uniform_grid_weights(n, grid[0], grid[1]);
    }
    if (w.contains("file")) {
      return RankOneWeights{read_weight_vector(base_dir / w.at("file").get<std::string>())};
    }
    throw ModelError("rank1 weights need one of \"w\", \"grid\" or \"file\"");
  }
  if (kind == "dense") {
    if (w.contains("W")) {
      const auto rows = w.at("W").get<std::vector<std::vector<double>>>();
      SquareMatrix m(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw ModelError("dense weight matrix is not square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
      }
      return DenseWeights{std::move(m)};
    }
    if (w.contains("csv")) {
      return DenseWeights{read_dense_csv(base_dir / w.at("csv").get<std::string>())};
    }
    throw ModelError("dense weights need \"W\" or \"csv\"");
  }
  throw ModelError(fmt::format("unknown weight kind '{}'", kind));
}

json weights_to_json(const WeightSpec& weights) {
  return std::visit(
      [](const auto& w) -> json {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstantWeights>) {
          return {{"kind", "constant"}, {"c", w.c}};
        } else if constexpr (std::is_same_v<T, RankOneWeights>) {
          return {{"kind", "rank1"}, {"w", w.w}};
        } else {
          json rows = json::array();
          for (std::size_t i = 0; i < w.w.size(); ++i) {
            const auto r = w.w.row(i);
            rows.push_back(std::vector<double>(r.begin(), r.end()));
          }
          return {{"kind", "dense"}, {"W", rows}};
        }
      },
      weights);
}

json matrix_to_json(std::size_t n, const auto& entry) {
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = i == j ? 0.0 : entry(i, j);
    rows.push_back(std::move(r));
  }
  return rows;
}

StatKind stat_from_string(const std::string& s) {
  if (s == to_string(StatKind::clustering)) return StatKind::clustering;
  if (s == to_string(StatKind::weighted_triangles)) return StatKind::weighted_triangles;
  throw std::invalid_argument(fmt::format("unknown statistic '{}'", s));
}

Centering centering_from_string(const std::string& s) {
  if (s == to_string(Centering::empirical_mean)) return Centering::empirical_mean;
  if (s == to_string(Centering::lemma3)) return Centering::lemma3;
  throw std::invalid_argument(fmt::format("unknown centering '{}'", s));
}

ACoefficient a_convention_from_string(const std::string& s) {
  if (s == to_string(ACoefficient::leading_order)) return ACoefficient::leading_order;
  if (s == to_string(ACoefficient::exact_expectation)) return ACoefficient::exact_expectation;
  throw std::invalid_argument(fmt::format("unknown a convention '{}'", s));
}

json optional_to_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

json closed_to_json(const ErdosRenyiClosedForms& c) {
  return {{"sigma1_sq", c.sigma1_sq},
          {"sigma2_sq", c.sigma2_sq},
          {"sigma_sq", c.sigma_sq},
          {"regime", to_string(c.regime)}};
}

}  // namespace

const char* extension(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument(fmt::format("unknown output format '{}'", text));
}

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

std::vector<double> read_weight_vector(const fs::path& path) {
  return parse_reals(read_text(path), path, 0);
}

SquareMatrix read_dense_csv(const fs::path& path) {
  std::istringstream is(read_text(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto row = parse_reals(line, path, line_no);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw IoError(fmt::format("{}: row {} has {} entries, expected {}", path.string(), i + 1,
                                rows[i].size(), rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ModelSpec model_from_json(const json& j, const fs::path& base_dir) {
  const auto n = j.at("n").get<std::size_t>();
  const auto alpha = j.at("alpha").get<double>();
  WeightSpec weights = weights_from_json(j.at("weights"), n, base_dir);
  const double beta = j.contains("beta") ? j.at("beta").get<double>()
                                         : min_offdiagonal_weight(weights, n);
  return ModelSpec(n, alpha, beta, std::move(weights));
}

json model_to_json(const ModelSpec& model) {
  return {{"n", model.n()},
          {"alpha", model.alpha()},
          {"beta", model.beta()},
          {"weights", weights_to_json(model.weights())}};
}

ModelSpec load_model(const fs::path& path) {
  try {
    return model_from_json(json::parse(read_text(path)), path.parent_path());
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_model(const ModelSpec& model, const fs::path& path) {
  emit_json(model_to_json(model), path);
}

json to_json(const ModelSummary& s) {
  return {{"n", s.n},
          {"alpha", s.alpha},
          {"beta", s.beta},
          {"weight_kind", s.weight_kind},
          {"min_weight", s.min_weight},
          {"max_weight", s.max_weight}};
}

json to_json(const TheoreticalMoments& m) {
  json j = {{"sigma1_sq", m.sigma1_sq},
            {"sigma2_sq", m.sigma2_sq},
            {"sigma_sq", m.sigma_sq},
            {"v1_sq", m.v1_sq},
            {"v2_sq", m.v2_sq},
            {"v_sq", m.v_sq},
            {"mean_cc_approx", m.mean_cc_approx},
            {"mean_t_leading", m.mean_t_leading},
            {"a_convention", to_string(m.a_convention)}};
  if (m.clustering) {
    const auto& c = *m.clustering;
    const std::size_t n = c.n();
    j["constants"]["a"] = c.a();
    j["constants"]["b"] = c.b();
    j["constants"]["et"] = c.et();
    j["constants"]["c"] = matrix_to_json(n, [&](auto i, auto k) { return c.c(i, k); });
    j["constants"]["d"] = matrix_to_json(n, [&](auto i, auto k) { return c.dsum(i, k); });
    j["constants"]["e"] = matrix_to_json(n, [&](auto i, auto k) { return c.e(i, k); });
  }
  if (m.triangles) {
    const auto& t = *m.triangles;
    j["constants"]["eta"] = t.eta();
    j["constants"]["gamma"] = matrix_to_json(t.n(), [&](auto i, auto k) { return t.gamma(i, k); });
  }
  return j;
}

json to_json(const OracleReport& r) {
  return {{"n", r.n},
          {"exact_mean_cc", r.exact_mean_cc},
          {"exact_var_cc", r.exact_var_cc},
          {"exact_mean_t", r.exact_mean_t},
          {"exact_var_t", r.exact_var_t},
          {"exact_et", r.exact_et},
          {"exact_a", r.exact_a},
          {"graph_count", r.graph_count},
          {"total_probability", r.total_probability}};
}

json to_json(const McRunResult& r) {
  return {{"model", to_json(r.model)},
          {"stat", to_string(r.stat)},
          {"replicates", r.replicates},
          {"master_seed", r.master_seed},
          {"centering", to_string(r.centering)},
          {"a_convention", to_string(r.a_convention)},
          {"center", r.center},
          {"empirical_mean", r.empirical_mean},
          {"scale_sq", r.scale_sq},
          {"ks_distance", r.ks_distance},
          {"empirical_var_ratio", r.empirical_var_ratio},
          {"lemma3_bias", optional_to_json(r.lemma3_bias)},
          {"zero_statistic_count", r.zero_statistic_count},
          {"values", r.values},
          {"z", r.z}};
}

McRunResult mc_result_from_json(const json& j) {
  McRunResult r;
  const auto& m = j.at("model");
  r.model.n = m.at("n").get<std::size_t>();
  r.model.alpha = m.at("alpha").get<double>();
  r.model.beta = m.at("beta").get<double>();
  r.model.weight_kind = m.at("weight_kind").get<std::string>();
  r.model.min_weight = m.at("min_weight").get<double>();
  r.model.max_weight = m.at("max_weight").get<double>();
  r.stat = stat_from_string(j.at("stat").get<std::string>());
  r.replicates = j.at("replicates").get<std::size_t>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.centering = centering_from_string(j.at("centering").get<std::string>());
  r.a_convention = a_convention_from_string(j.at("a_convention").get<std::string>());
  r.center = j.at("center").get<double>();
  r.empirical_mean = j.at("empirical_mean").get<double>();
  r.scale_sq = j.at("scale_sq").get<double>();
  r.ks_distance = j.at("ks_distance").get<double>();
  r.empirical_var_ratio = j.at("empirical_var_ratio").get<double>();
  if (!j.at("lemma3_bias").is_null()) r.lemma3_bias = j.at("lemma3_bias").get<double>();
  r.zero_statistic_count = j.at("zero_statistic_count").get<std::size_t>();
  r.values = j.at("values").get<std::vector<double>>();
  r.z = j.at("z").get<std::vector<double>>();
  return r;
}

json to_json(const PhaseSweepResult& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"alpha", rec.alpha},
                       {"sigma1_sq", rec.sigma1_sq},
                       {"sigma2_sq", rec.sigma2_sq},
                       {"ratio", rec.ratio},
                       {"closed", closed_to_json(rec.closed)},
                       {"empirical_var", optional_to_json(rec.empirical_var)}});
  }
  return {{"n", r.n}, {"weight_c", r.weight_c}, {"alphas", r.alphas}, {"records", records}};
}

json to_json(const DecompositionReport& r) {
  return {{"model", to_json(r.model)},
          {"stat", to_string(r.stat)},
          {"regime", to_string(r.regime)},
          {"leading", to_string(r.leading)},
          {"replicates", r.replicates},
          {"master_seed", r.master_seed},
          {"cubic_term", r.cubic_term},
          {"linear_term", r.linear_term},
          {"degenerate_linear_term", r.degenerate_linear_term},
          {"correlation", optional_to_json(r.correlation)},
          {"residual_var_fraction", optional_to_json(r.residual_var_fraction)},
          {"centered_statistic", r.centered_statistic},
          {"leading_values", r.leading_values}};
}

void write_csv(std::ostream& os, const McRunResult& r) {
  os << "replicate,value,z\n";
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    os << i << ',' << format_real(r.values[i]) << ',' << format_real(r.z[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const PhaseSweepResult& r) {
  os << "alpha,sigma1_sq,sigma2_sq,ratio,closed_sigma_sq\n";
  for (const auto& rec : r.records) {
    os << format_real(rec.alpha) << ',' << format_real(rec.sigma1_sq) << ','
       << format_real(rec.sigma2_sq) << ',' << format_real(rec.ratio) << ','
       << format_real(rec.closed.sigma_sq) << '\n';
  }
}

void write_csv(std::ostream& os, const DecompositionReport& r) {
  os << "replicate,centered_statistic,leading_term\n";
  for (std::size_t i = 0; i < r.centered_statistic.size(); ++i) {
    os << i << ',' << format_real(r.centered_statistic[i]) << ','
       << format_real(r.leading_values[i]) << '\n';
  }
}

void emit_json(const json& j, const fs::path& path) {
  auto os = open_output(path);
  os << j.dump(2) << '\n';
  finish_output(os, path);
}

namespace {

template <class Result>
void emit(const Result& result, const fs::path& path, OutputFormat format) {
  if (format == OutputFormat::json) {
    emit_json(to_json(result), path);
    return;
  }
  auto os = open_output(path);
  write_csv(os, result);
  finish_output(os, path);
}

}  // namespace

void emit_results(const McRunResult& r, const fs::path& path, OutputFormat format) {
  emit(r, path, format);
}
void emit_results(const PhaseSweepResult& r, const fs::path& path, OutputFormat format) {
  emit(r, path, format);
}
void emit_results(const DecompositionReport& r, const fs::path& path, OutputFormat format) {
  emit(r, path, format);
}

std::string default_output_name(StatKind stat, std::size_t n, double alpha, std::uint64_t seed,
                                OutputFormat format) {
  return fmt::format("{}_{}_{}_{}.{}", short_name(stat), n, alpha, seed, extension(format));
}

}  // namespace ccclt
