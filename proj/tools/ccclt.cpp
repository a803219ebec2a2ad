// Command-line front end: each subcommand parses flags, calls one library
// operation and writes its result.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ccclt/experiments.hpp"
#include "ccclt/graph.hpp"
#include "ccclt/io.hpp"
#include "ccclt/model.hpp"
#include "ccclt/oracle.hpp"
#include "ccclt/sampling.hpp"
#include "ccclt/statistics.hpp"
#include "ccclt/theory.hpp"

namespace fs = std::filesystem;
using namespace ccclt;

namespace {

struct ModelFlags {
  std::string file;
  std::optional<std::size_t> n;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string weights = "constant:1";

  void attach(CLI::App& app) {
    app.add_option("--model", file, "Model configuration (JSON)")->check(CLI::ExistingFile);
    app.add_option("--n", n, "Number of nodes");
    app.add_option("--alpha", alpha, "Sparsity exponent, p_n = n^-alpha");
    app.add_option("--beta", beta, "Lower weight bound (default: smallest weight)");
    app.add_option("--weights", weights,
                   "constant:<c> | rank1:<file> | rank1:grid:<lo>:<hi> | dense:<csv file>");
  }

  ModelSpec resolve() const {
    if (!file.empty()) {
      if (n || alpha || beta) throw CLI::ValidationError("--model excludes --n/--alpha/--beta");
      return load_model(file);
    }
    if (!n || !alpha) throw CLI::ValidationError("need --model or both --n and --alpha");
    nlohmann::json j = {{"n", *n}, {"alpha", *alpha}, {"weights", weight_json()}};
    if (beta) j["beta"] = *beta;
    return model_from_json(j);
  }

 private:
  nlohmann::json weight_json() const {
    const auto colon = weights.find(':');
    const std::string kind = weights.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : weights.substr(colon + 1);
    if (kind == "constant") return {{"kind", "constant"}, {"c", arg.empty() ? 1.0 : std::stod(arg)}};
    if (kind == "rank1" && arg.rfind("grid:", 0) == 0) {
      const auto spec = arg.substr(5);
      const auto sep = spec.find(':');
      if (sep == std::string::npos) throw CLI::ValidationError("rank1 grid needs grid:<lo>:<hi>");
      return {{"kind", "rank1"},
              {"grid", {std::stod(spec.substr(0, sep)), std::stod(spec.substr(sep + 1))}}};
    }
    if (kind == "rank1" && !arg.empty()) return {{"kind", "rank1"}, {"file", arg}};
    if (kind == "dense" && !arg.empty()) return {{"kind", "dense"}, {"csv", arg}};
    throw CLI::ValidationError(fmt::format("bad --weights '{}'", weights));
  }
};

struct TheoryFlags {
  bool no_fast_path = false;
  std::string a_convention = "leading";

  void attach(CLI::App& app) {
    app.add_flag("--no-fast-path", no_fast_path, "Evaluate full sums even for constant weights");
    app.add_option("--a-convention", a_convention, "a_i convention: leading | exact")
        ->check(CLI::IsMember({"leading", "exact"}));
  }

  TheoryOptions options() const {
    TheoryOptions o;
    o.homogeneous_fast_path = !no_fast_path;
    o.a_convention = a_convention == "exact" ? ACoefficient::exact_expectation
                                             : ACoefficient::leading_order;
    return o;
  }
};

const std::map<std::string, StatKind> kStats{{"clustering", StatKind::clustering},
                                             {"triangles", StatKind::weighted_triangles}};
const std::map<std::string, Centering> kCenterings{{"empirical", Centering::empirical_mean},
                                                   {"lemma3", Centering::lemma3}};
const std::map<std::string, LeadingTerm> kLeading{{"regime", LeadingTerm::regime},
                                                  {"full", LeadingTerm::full}};

void print_json(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    emit_json(j, out);
  }
}

void report_written(const fs::path& path) { fmt::print("wrote {}\n", path.string()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering-coefficient CLT toolkit for heterogeneous Erdos-Renyi graphs"};
  app.require_subcommand(1);

  ModelFlags model_flags;
  TheoryFlags theory_flags;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t replicates = 1000;
  StatKind stat = StatKind::clustering;

  auto* sample = app.add_subcommand("sample", "Sample one graph and write its edge list");
  model_flags.attach(*sample);
  std::uint64_t replicate_index = 0;
  sample->add_option("--seed", seed, "Master seed");
  sample->add_option("--replicate", replicate_index, "Replicate index");
  sample->add_option("--out", out, "Edge-list path (default: stdout)");

  auto* stats = app.add_subcommand("stats", "Print C_n and T_n of an edge list");
  std::string graph_path;
  stats->add_option("graph", graph_path, "Edge-list file")->required()->check(CLI::ExistingFile);

  auto* theory = app.add_subcommand("theory", "Print the theoretical moments of a model");
  model_flags.attach(*theory);
  theory_flags.attach(*theory);
  bool constants = false;
  theory->add_flag("--constants", constants, "Include every constant vector and matrix");
  theory->add_option("--out", out, "JSON path (default: stdout)");

  auto* mc = app.add_subcommand("mc", "Monte Carlo CLT check");
  model_flags.attach(*mc);
  theory_flags.attach(*mc);
  Centering centering = Centering::empirical_mean;
  mc->add_option("--stat", stat, "clustering | triangles")
      ->transform(CLI::CheckedTransformer(kStats, CLI::ignore_case));
  mc->add_option("--replicates", replicates, "Replicate count")->check(CLI::Range(2ul, 1ul << 40));
  mc->add_option("--seed", seed, "Master seed");
  mc->add_option("--centering", centering, "empirical | lemma3")
      ->transform(CLI::CheckedTransformer(kCenterings, CLI::ignore_case));
  mc->add_option("--out", out, "Output path (default: <stat>_<n>_<alpha>_<seed>.<ext>)");
  mc->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* phase = app.add_subcommand("phase", "Variance components across alpha (constant weights)");
  theory_flags.attach(*phase);
  std::size_t phase_n = 1000;
  double phase_c = 1.0;
  std::vector<double> alphas{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::size_t empirical_replicates = 0;
  phase->add_option("--n", phase_n, "Number of nodes");
  phase->add_option("--c", phase_c, "Constant weight");
  phase->add_option("--alphas", alphas, "Alpha grid")->delimiter(',');
  phase->add_option("--replicates", empirical_replicates,
                    "Also estimate Var(C_n) from this many replicates per alpha");
  phase->add_option("--seed", seed, "Master seed");
  phase->add_option("--out", out, "Output path (default: phase_<n>_<seed>.<ext>)");
  phase->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* decompose = app.add_subcommand("decompose", "Statistic against its leading term");
  model_flags.attach(*decompose);
  theory_flags.attach(*decompose);
  LeadingTerm leading = LeadingTerm::regime;
  decompose->add_option("--stat", stat, "clustering | triangles")
      ->transform(CLI::CheckedTransformer(kStats, CLI::ignore_case));
  decompose->add_option("--replicates", replicates, "Replicate count")
      ->check(CLI::Range(2ul, 1ul << 40));
  decompose->add_option("--seed", seed, "Master seed");
  decompose->add_option("--leading", leading, "regime | full")
      ->transform(CLI::CheckedTransformer(kLeading, CLI::ignore_case));
  decompose->add_option("--out", out, "Output path (default: <stat>_<n>_<alpha>_<seed>.<ext>)");
  decompose->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* oracle = app.add_subcommand("oracle", "Exact moments by full enumeration (n <= 7)");
  model_flags.attach(*oracle);
  oracle->add_option("--out", out, "JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ccclt: " << e.what() << '\n';
    return 2;
  }

  try {
    if (sample->parsed()) {
      const auto model = model_flags.resolve();
      const Graph g = sample_graph(model, {seed, replicate_index});
      if (out.empty()) {
        write_edge_list(std::cout, g);
      } else {
        write_edge_list(fs::path(out), g);
      }
    } else if (stats->parsed()) {
      const auto s = evaluate_statistics(read_edge_list(fs::path(graph_path)));
      fmt::print("avg_clustering {:.17g}\nweighted_triangle_sum {:.17g}\n", s.avg_clustering,
                 s.weighted_triangle_sum);
    } else if (theory->parsed()) {
      const auto model = model_flags.resolve();
      print_json(to_json(theoretical_moments(model, theory_flags.options(), constants)), out);
    } else if (mc->parsed()) {
      const auto model = model_flags.resolve();
      const McConfig config{stat, replicates, seed, centering, theory_flags.options()};
      const auto result = run_mc(model, config);
      const auto fmt_kind = parse_output_format(format);
      const fs::path path =
          out.empty() ? default_output_name(stat, model.n(), model.alpha(), seed, fmt_kind) : out;
      emit_results(result, path, fmt_kind);
      fmt::print("ks_distance {:.17g}\nempirical_var_ratio {:.17g}\nzero_statistic_count {}\n",
                 result.ks_distance, result.empirical_var_ratio, result.zero_statistic_count);
      if (result.lemma3_bias) fmt::print("lemma3_bias {:.17g}\n", *result.lemma3_bias);
      report_written(path);
    } else if (phase->parsed()) {
      PhaseSweepOptions options;
      options.theory = theory_flags.options();
      options.empirical_replicates = empirical_replicates;
      options.master_seed = seed;
      const auto result = phase_sweep(phase_n, alphas, phase_c, options);
      const auto fmt_kind = parse_output_format(format);
      const fs::path path =
          out.empty() ? fmt::format("phase_{}_{}.{}", phase_n, seed, extension(fmt_kind)) : out;
      emit_results(result, path, fmt_kind);
      report_written(path);
    } else if (decompose->parsed()) {
      const auto model = model_flags.resolve();
      const DecompositionConfig config{stat, replicates, seed, leading, theory_flags.options()};
      const auto report = decomposition_check(model, config);
      const auto fmt_kind = parse_output_format(format);
      const fs::path path =
          out.empty() ? default_output_name(stat, model.n(), model.alpha(), seed, fmt_kind) : out;
      emit_results(report, path, fmt_kind);
      fmt::print("regime {}\n", to_string(report.regime));
      if (report.degenerate_linear_term) fmt::print("degenerate linear term\n");
      if (report.correlation) fmt::print("correlation {:.17g}\n", *report.correlation);
      report_written(path);
    } else if (oracle->parsed()) {
      const auto model = model_flags.resolve();
      print_json(to_json(enumerate_moments(model)), out);
    }
  } catch (const std::exception& e) {
    std::cerr << "ccclt: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
