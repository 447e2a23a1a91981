#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sfb/config.hpp"

namespace {

int emit(const sfb::CommandResult& result, const sfb::RunConfig& cfg) {
  const std::string text = result.report.dump(2) + "\n";
  if (cfg.output.path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output.path);
    if (!out) {
      std::cerr << "cannot write report to " << cfg.output.path << "\n";
      return sfb::kExitInputError;
    }
    out << text;
  }
  if (!result.trace_csv.empty()) {
    const std::string trace_path =
        cfg.output.path == "-" ? "trace.csv" : cfg.output.path + ".trace.csv";
    std::ofstream trace(trace_path);
    if (!trace) {
      std::cerr << "cannot write traces to " << trace_path << "\n";
      return sfb::kExitInputError;
    }
    trace << result.trace_csv;
    std::cerr << "eigenvalue traces written to " << trace_path << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation detection for periodic Hamiltonian systems via spectral flow"};
  app.require_subcommand(1);

  std::string config_path;
  bool traces_flag = false;
  std::string out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_flag("--traces", traces_flag, "emit eigenvalue traces as CSV");
    sub->add_option("--out", out_path, "report path (default from config, '-' = stdout)");
  };
  CLI::App* certify = app.add_subcommand("certify", "evaluate the comparison certificate");
  CLI::App* sfl = app.add_subcommand("sfl", "compute the Galerkin spectral flow");
  CLI::App* monodromy = app.add_subcommand("monodromy", "scan the monodromy kernel over lambda");
  CLI::App* oracle = app.add_subcommand("oracle", "closed-form results for scalar families");
  for (CLI::App* sub : {certify, sfl, monodromy, oracle}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  sfb::RunConfig* cfg_ptr = nullptr;
  try {
    static sfb::RunConfig cfg = sfb::parse_config_file(config_path);
    cfg_ptr = &cfg;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sfb::kExitInputError;
  }
  sfb::RunConfig& cfg = *cfg_ptr;
  if (traces_flag) cfg.output.traces = true;
  if (!out_path.empty()) cfg.output.path = out_path;

  sfb::CommandResult result;
  if (certify->parsed()) {
    result = sfb::cmd_certify(cfg);
  } else if (sfl->parsed()) {
    result = sfb::cmd_sfl(cfg);
  } else if (monodromy->parsed()) {
    result = sfb::cmd_monodromy(cfg);
  } else {
    result = sfb::cmd_oracle(cfg);
  }
  return emit(result, cfg);
}
