#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vanhove/resolvent.hpp"

namespace vanhove {

using Json = nlohmann::json;

struct ReportRow {
  std::string experiment_id;
  std::string input_descriptor;
  Complex analytic_value{0.0, 0.0};
  std::optional<Complex> oracle_value;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  std::string name;
  std::vector<ReportRow> rows;
  Json summary;

  bool passed() const;
};

// the seven experiments, in listing order
const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

// built-in defaults; a user config is validated against these keys
Json default_config(const std::string& experiment);

// merge user overrides into the defaults; unknown keys raise ConfigError
Json resolve_config(const std::string& experiment, const Json& overrides);

ExperimentResult run_experiment(const std::string& experiment, const Json& config);

std::string describe_experiments();

// deterministic text form: fixed %.12e formatting, '+'/'-' joined complex
std::string format_complex(Complex z);
std::string csv_text(const std::vector<ReportRow>& rows);
void write_report(const std::filesystem::path& out_dir, const ExperimentResult& result);

// parse helpers shared by the CLI
Json load_config_file(const std::filesystem::path& path);

}  // namespace vanhove
