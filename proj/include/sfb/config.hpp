#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "sfb/comparison.hpp"
#include "sfb/family.hpp"
#include "sfb/monodromy.hpp"
#include "sfb/sfl.hpp"

namespace sfb {

/// Exit codes of the CLI commands.
enum ExitCode : int {
  kExitGuaranteed = 0,
  kExitInputError = 1,
  kExitEndpointViolated = 2,
  kExitInconclusive = 3,
  kExitNumericalFailure = 4,
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AutoC { matrix, auto_scalar, auto_shifted_mean };

struct ComparisonConfig {
  AutoC c0_mode = AutoC::auto_scalar;
  AutoC c1_mode = AutoC::auto_scalar;
  std::optional<SymMatrix> c0;
  std::optional<SymMatrix> c1;
  std::size_t t_grid = 0;  // 0 = family default
};

struct OutputConfig {
  std::string format = "json";  // json | csv
  bool traces = false;
  std::string path = "-";  // "-" = stdout
};

struct RunConfig {
  std::size_t n = 0;
  MatrixFamilyPath family;
  std::size_t galerkin_cutoff = 0;  // 0 = auto
  std::size_t quad_points = 0;      // 0 = auto
  SflOptions sfl;
  ComparisonConfig comparison;
  MonodromyOptions monodromy;
  std::size_t monodromy_lambda_grid = 64;
  OutputConfig output;
};

/// Parses a strict-schema JSON config; unknown keys are rejected with a path
/// diagnostic. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_file(const std::string& path);

/// Normalized echo of a config with all defaults materialized; re-parsing the
/// echo reproduces the run bit-exactly for a fixed seed.
nlohmann::json echo_config(const RunConfig& cfg);

struct CommandResult {
  int exit_code = kExitInputError;
  nlohmann::json report;
  std::string trace_csv;  // nonempty when eigenvalue traces were requested
};

CommandResult cmd_certify(const RunConfig& cfg);
CommandResult cmd_sfl(const RunConfig& cfg);
CommandResult cmd_monodromy(const RunConfig& cfg);
CommandResult cmd_oracle(const RunConfig& cfg);

/// Effective Galerkin cutoff for a config (auto rule when unset).
std::size_t effective_cutoff(const RunConfig& cfg);
std::size_t effective_quad_points(const RunConfig& cfg, std::size_t cutoff);

}  // namespace sfb
