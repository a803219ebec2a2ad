#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccclt/experiments.hpp"
#include "ccclt/model.hpp"
#include "ccclt/oracle.hpp"
#include "ccclt/theory.hpp"

namespace ccclt {

enum class OutputFormat { csv, json };

const char* extension(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);

/// Raised for unreadable or malformed input files; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model configuration:
//   {"n": 500, "alpha": 0.6, "beta": 1.0,
//    "weights": {"kind": "constant", "c": 1.0}
//             | {"kind": "rank1", "w": [...]} | {"kind": "rank1", "grid": [lo, hi]}
//             | {"kind": "dense", "W": [[...], ...]} | {"kind": "dense", "csv": "W.csv"}}
// "beta" defaults to the smallest off-diagonal weight. Relative "csv" paths
// resolve against the configuration file's directory.
ModelSpec model_from_json(const nlohmann::json& j,
                          const std::filesystem::path& base_dir = {});
nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec load_model(const std::filesystem::path& path);
void save_model(const ModelSpec& model, const std::filesystem::path& path);

/// n comma-separated rows of n reals.
SquareMatrix read_dense_csv(const std::filesystem::path& path);
/// Whitespace- or comma-separated reals.
std::vector<double> read_weight_vector(const std::filesystem::path& path);

nlohmann::json to_json(const ModelSummary& summary);
nlohmann::json to_json(const TheoreticalMoments& moments);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const McRunResult& result);
nlohmann::json to_json(const PhaseSweepResult& result);
nlohmann::json to_json(const DecompositionReport& report);

McRunResult mc_result_from_json(const nlohmann::json& j);

void write_csv(std::ostream& os, const McRunResult& result);
void write_csv(std::ostream& os, const PhaseSweepResult& result);
void write_csv(std::ostream& os, const DecompositionReport& report);

/// Writes the result to `path` as CSV (one row per replicate or alpha) or as
/// the full JSON record. Throws IoError with the path on failure.
void emit_results(const McRunResult& result, const std::filesystem::path& path,
                  OutputFormat format);
void emit_results(const PhaseSweepResult& result, const std::filesystem::path& path,
                  OutputFormat format);
void emit_results(const DecompositionReport& report, const std::filesystem::path& path,
                  OutputFormat format);
void emit_json(const nlohmann::json& j, const std::filesystem::path& path);

/// `<stat>_<n>_<alpha>_<seed>.<ext>`
std::string default_output_name(StatKind stat, std::size_t n, double alpha,
                                std::uint64_t seed, OutputFormat format);

/// 17 significant digits, so the text reads back to the same double.
std::string format_real(double x);

}  // namespace ccclt
