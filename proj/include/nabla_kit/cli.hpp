#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nabla_kit/serialization.hpp"

namespace nabla_kit::cli {

enum class Format { text, json };

enum ExitStatus : int {
  kExitOk = 0,
  kExitRefuted = 1,
  kExitInputError = 2,
  kExitNumericalFailure = 3,
};

/// One invocation. `input` carries every operand; flags are folded into it
/// before `run` is called.
struct RunConfig {
  std::string command;  // diff | identity | certify | functional | mean | gram | lyapunov | families
  json input = json::object();
  std::optional<QuadratureScheme> scheme;
  TolerancePolicy tolerance;
  std::string output_path;
  Format format = Format::text;
};

struct Report {
  std::string command;
  std::string kind;
  double elapsed_ms = 0.0;
  json result = json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> paper_conditions;
  int exit_status = kExitOk;
  std::string error;  // empty on success

  json to_json() const;
  /// Same document without the timing entry.
  json to_json_untimed() const;
  std::string to_text() const;
};

const std::vector<std::string>& commands();

/// Dispatches to the library. Never throws: failures become an error
/// report with exit status 2 (input) or 3 (numerical).
Report run(const RunConfig& config);

/// Comma-separated matrix; an optional first row of labels is skipped.
/// Ragged rows, non-numeric cells and empty input are input errors
/// (ContractViolation).
Matrix parse_weight_csv(const std::string& text);
Matrix load_weight_csv(const std::string& path);
/// A single CSV row or column of increasing points.
std::vector<double> load_grid_csv(const std::string& path);
/// "1,2,3" -> {1, 2, 3}
std::vector<double> parse_list(const std::string& text);

/// 1D / 2D function descriptions used in inputs. A plain string names a
/// catalog family; objects may use "family"+"params", "constant",
/// "polynomial", "tensor", "rodrigues", "g0" or "tabulated". A "scale"
/// entry multiplies the described function by a constant.
Function1D parse_function_1d(const json& spec, std::optional<Interval> interval = std::nullopt);
Function2D parse_function_2d(const json& spec, std::optional<Rectangle> rect = std::nullopt);

/// Full command-line entry point: parses argv, runs, writes the report and
/// returns the process exit status.
int main_entry(int argc, const char* const* argv);

}  // namespace nabla_kit::cli
