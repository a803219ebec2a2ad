#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ccclt/io.hpp"

using namespace ccclt;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("ccclt_io_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void same_model(const ModelSpec& a, const ModelSpec& b) {
  ASSERT_EQ(a.n(), b.n());
  EXPECT_EQ(a.alpha(), b.alpha());
  EXPECT_EQ(a.beta(), b.beta());
  EXPECT_EQ(a.kind(), b.kind());
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.n(); ++j) EXPECT_EQ(a.weight(i, j), b.weight(i, j));
  }
}

}  // namespace

TEST(ModelJson, RoundTripsEveryWeightKind) {
  TempDir dir;
  SquareMatrix w(3);
  w(0, 1) = w(1, 0) = 0.6;
  w(0, 2) = w(2, 0) = 0.7;
  w(1, 2) = w(2, 1) = 0.9;
  const ModelSpec models[] = {
      ModelSpec(50, 0.4, 0.8, ConstantWeights{0.8}),
      ModelSpec(7, 0.55, 0.5, uniform_grid_weights(7, 0.5, 1.0)),
      ModelSpec(3, 0.3, 0.6, DenseWeights{w}),
  };
  for (const auto& m : models) {
    same_model(model_from_json(model_to_json(m)), m);
    const auto path = dir / "model.json";
    save_model(m, path);
    same_model(load_model(path), m);
  }
}

TEST(ModelJson, AlternativeWeightSources) {
  TempDir dir;
  {
    std::ofstream os(dir / "W.csv");
    os << "0,0.5,0.75\n0.5,0,1\n0.75,1,0\n";
    std::ofstream ws(dir / "w.txt");
    ws << "0.5 0.75\n1.0\n";
  }
  const auto dense = model_from_json(
      json{{"n", 3}, {"alpha", 0.5}, {"weights", {{"kind", "dense"}, {"csv", "W.csv"}}}},
      dir / "");
  EXPECT_EQ(dense.weight(0, 2), 0.75);
  EXPECT_EQ(dense.beta(), 0.5);

  const auto r1 = model_from_json(
      json{{"n", 3}, {"alpha", 0.5}, {"weights", {{"kind", "rank1"}, {"file", "w.txt"}}}}, dir / "");
  EXPECT_EQ(r1.weight(0, 1), 0.375);
  EXPECT_EQ(r1.beta(), 0.375);

  const auto grid = model_from_json(
      json{{"n", 5}, {"alpha", 0.5}, {"beta", 0.5}, {"weights", {{"kind", "rank1"}, {"grid", {0.5, 1.0}}}}});
  EXPECT_EQ(std::get<RankOneWeights>(grid.weights()).w, uniform_grid_weights(5, 0.5, 1.0).w);

  EXPECT_THROW(model_from_json(json{{"n", 3}, {"alpha", 0.5}, {"weights", {{"kind", "tri"}}}}),
               ModelError);
  EXPECT_ANY_THROW(model_from_json(json{{"alpha", 0.5}}));
}

TEST(ModelJson, ErrorsNameThePath) {
  TempDir dir;
  const auto missing = dir / "missing.json";
  try {
    load_model(missing);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(missing.string()), std::string::npos);
  }
  const auto broken = dir / "broken.json";
  std::ofstream(broken) << "{\"n\": 3,";
  EXPECT_THROW(load_model(broken), IoError);

  const auto ragged = dir / "ragged.csv";
  std::ofstream(ragged) << "0,1\n1,0,1\n";
  try {
    read_dense_csv(ragged);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(ragged.string()), std::string::npos);
  }
  const auto junk = dir / "junk.csv";
  std::ofstream(junk) << "0,abc\n";
  EXPECT_THROW(read_dense_csv(junk), IoError);
}

TEST(ResultJson, TheoreticalMomentsConstantsAreOptIn) {
  const ModelSpec m(20, 0.4, 0.5, uniform_grid_weights(20, 0.5, 1.0));
  const auto plain = to_json(theoretical_moments(m));
  EXPECT_FALSE(plain.contains("constants"));
  EXPECT_EQ(plain.at("sigma_sq").get<double>(), theoretical_moments(m).sigma_sq);
  const auto full = to_json(theoretical_moments(m, {}, true));
  ASSERT_TRUE(full.contains("constants"));
  EXPECT_EQ(full["constants"]["a"].size(), 20u);
  EXPECT_EQ(full["constants"]["e"].size(), 20u);
  EXPECT_EQ(full["constants"]["gamma"][3].size(), 20u);
}

TEST(ResultJson, OracleReport) {
  const auto r = enumerate_moments(ModelSpec(4, 0.5, 1.0, ConstantWeights{1.0}));
  const auto j = to_json(r);
  EXPECT_EQ(j.at("graph_count").get<std::uint64_t>(), 64u);
  EXPECT_EQ(j.at("exact_mean_cc").get<double>(), r.exact_mean_cc);
  EXPECT_EQ(j.at("exact_a").get<std::vector<double>>(), r.exact_a);
}

TEST(ResultJson, McRunResultRoundTrips) {
  McConfig config;
  config.replicates = 25;
  config.master_seed = 0xfeedfacecafebeefull;
  config.centering = Centering::lemma3;
  const auto r = run_mc(ModelSpec(60, 0.4, 0.5, uniform_grid_weights(60, 0.5, 1.0)), config);
  const auto text = to_json(r).dump();
  EXPECT_EQ(mc_result_from_json(json::parse(text)), r);

  config.centering = Centering::empirical_mean;
  config.stat = StatKind::weighted_triangles;
  const auto t = run_mc(ModelSpec(60, 0.4, 1.0, ConstantWeights{1.0}), config);
  EXPECT_EQ(mc_result_from_json(json::parse(to_json(t).dump())), t);
}

TEST(Emit, CsvLayouts) {
  const std::vector<double> alphas{0.3, 0.6};
  std::ostringstream phase;
  write_csv(phase, phase_sweep(200, alphas, 1.0));
  const std::string text = phase.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "alpha,sigma1_sq,sigma2_sq,ratio,closed_sigma_sq");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);

  McConfig config;
  config.replicates = 5;
  std::ostringstream mc;
  const auto r = run_mc(ModelSpec(40, 0.4, 1.0, ConstantWeights{1.0}), config);
  write_csv(mc, r);
  std::istringstream lines(mc.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "replicate,value,z");
  std::getline(lines, line);
  EXPECT_EQ(line, "0," + format_real(r.values[0]) + "," + format_real(r.z[0]));
  EXPECT_EQ(std::stod(format_real(r.values[0])), r.values[0]);

  DecompositionConfig dc;
  dc.replicates = 3;
  std::ostringstream dec;
  write_csv(dec, decomposition_check(ModelSpec(40, 0.3, 1.0, ConstantWeights{1.0}), dc));
  EXPECT_EQ(dec.str().substr(0, dec.str().find('\n')), "replicate,centered_statistic,leading_term");
}

TEST(Emit, IdenticalRunsGiveIdenticalFiles) {
  TempDir dir;
  McConfig config;
  config.replicates = 30;
  config.master_seed = 17;
  const ModelSpec m(80, 0.6, 0.5, uniform_grid_weights(80, 0.5, 1.0));
  for (auto format : {OutputFormat::csv, OutputFormat::json}) {
    const auto a = dir / (std::string("a.") + extension(format));
    const auto b = dir / (std::string("b.") + extension(format));
    emit_results(run_mc(m, config), a, format);
    emit_results(run_mc(m, config), b, format);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
  }
}

TEST(Emit, WriteFailureNamesThePath) {
  const fs::path bad = "/nonexistent-dir/out.csv";
  try {
    emit_results(phase_sweep(50, std::vector<double>{0.5}, 1.0), bad, OutputFormat::csv);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
  }
}

TEST(Emit, DefaultFileName) {
  EXPECT_EQ(default_output_name(StatKind::clustering, 400, 0.3, 7, OutputFormat::csv),
            "clustering_400_0.3_7.csv");
  EXPECT_EQ(default_output_name(StatKind::weighted_triangles, 400, 0.45, 0, OutputFormat::json),
            "triangles_400_0.45_0.json");
  EXPECT_EQ(parse_output_format("json"), OutputFormat::json);
  EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
}
