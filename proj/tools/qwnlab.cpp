#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "qwn/errors.hpp"
#include "qwn/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qwnlab: exactly solvable quadratic white-noise experiments"};
  std::string experiment;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string convention;
  app.add_option("experiment", experiment,
                 "diagonalize | spectrum | correlator | compare-oracle | "
                 "critical | linear | ito | limit")
      ->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_option("--out", out_path, "output file (default: config, else stdout)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--convention", convention,
                 "correlator phase convention")
      ->check(CLI::IsMember({"paper", "derived"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;  // bad invocation is a validation failure
  }

  try {
    qwn::ExperimentConfig config = qwn::load_config(config_path);
    if (config.experiment != experiment) {
      throw qwn::ConfigError("experiment \"" + experiment +
                             "\" does not match config.experiment \"" +
                             config.experiment + "\"");
    }
    if (!out_path.empty()) config.out_path = out_path;
    if (!format.empty()) config.format = format;
    config.convention = convention;

    const qwn::ResultRecord record = qwn::run_experiment(config);
    const std::string resolved_format =
        config.format.empty() ? qwn::default_format(config.experiment)
                              : config.format;
    qwn::write_output(qwn::emit(record, resolved_format), config.out_path);
    return 0;
  } catch (const qwn::ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
