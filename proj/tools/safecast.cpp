#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, safecast::cli::CommonOptions& opts, std::string& clock,
                std::string& console_level) {
  cmd->add_option("-c,--config", opts.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--clock", clock, "Fixed UTC time for logs and provenance (reproducible runs)");
  cmd->add_option("--output-dir", opts.output_dir, "Override output_dir from the config");
  cmd->add_option("--log-dir", opts.log_dir, "Override log_dir from the config");
  cmd->add_option("--console-level", console_level, "Console log threshold")
      ->check(CLI::IsMember({"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace safecast::cli;
  CLI::App app{"safecast: deterministic, fail-safe time-series point forecasting"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string clock;
  std::string console_level = "WARNING";
  std::string model_path;
  std::string output;

  auto* demo = app.add_subcommand("demo", "Run the end-to-end load forecasting example");
  add_common(demo, opts, clock, console_level);

  auto* fit = app.add_subcommand("fit", "Fit a forecaster and write the model file");
  add_common(fit, opts, clock, console_level);
  fit->add_option("-m,--model", model_path, "Model file to write")->required();

  auto* predict = app.add_subcommand("predict", "Forecast from a saved model");
  add_common(predict, opts, clock, console_level);
  predict->add_option("-m,--model", model_path, "Model file to read")->required()->check(CLI::ExistingFile);
  predict->add_option("-o,--output", output, "Forecast CSV to write")->required();

  auto* bt = app.add_subcommand("backtest", "Rolling-origin backtest");
  add_common(bt, opts, clock, console_level);
  bt->add_option("-o,--output", output, "Metrics CSV to write")->required();

  std::string log_path;
  auto* validate = app.add_subcommand("validate-log", "Check an audit log against schema 1.0.0");
  validate->add_option("path", log_path, "Log file")->required();

  std::string vendor, product, version, target_sw = "*";
  auto* cpe = app.add_subcommand("cpe", "Print a CPE 2.3 identifier");
  cpe->add_option("--vendor", vendor)->required();
  cpe->add_option("--product", product)->required();
  cpe->add_option("--version", version)->required();
  cpe->add_option("--target-sw", target_sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Streams io{std::cout, std::cerr};
  if (!clock.empty()) {
    const auto t = safecast::Timestamp::try_parse(clock);
    if (!t) {
      std::cerr << "error: --clock '" << clock << "' is not an ISO 8601 UTC timestamp\n";
      return kExitUsage;
    }
    opts.clock = *t;
  }
  opts.console_level = *safecast::audit::parse_level(console_level);

  if (*demo) return cmd_demo(opts, io);
  if (*fit) return cmd_fit(opts, model_path, io);
  if (*predict) return cmd_predict(opts, model_path, output, io);
  if (*bt) return cmd_backtest(opts, output, io);
  if (*validate) return cmd_validate_log(log_path, io);
  if (*cpe) return cmd_cpe(vendor, product, version, target_sw, io);
  return kExitUsage;
}
