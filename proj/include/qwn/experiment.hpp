#ifndef QWN_EXPERIMENT_HPP
#define QWN_EXPERIMENT_HPP

#include <json.hpp>
#include <string>
#include <vector>

namespace qwn {

// Insertion-ordered so emitted documents are byte-stable.
using json = nlohmann::ordered_json;

// One run = one experiment over one config document:
//   { "experiment": <name>, "parameters": {...}, "output": {"path":..., "format":...} }
// Unknown keys are rejected at every level. `convention` holds a CLI-side
// override for the correlator-family experiments; empty means "use the
// config / default".
struct ExperimentConfig {
  std::string experiment;
  json parameters = json::object();
  std::string out_path;    // empty -> stdout
  std::string format;      // "csv" | "json"; empty -> per-experiment default
  std::string convention;  // "" | "paper" | "derived"
};

// Scalar experiments fill `outputs`; sweeps fill `columns` + `rows` instead.
struct ResultRecord {
  std::string experiment;
  json inputs = json::object();
  json outputs = json::object();
  json diagnostics = json::object();
  std::string status = "ok";
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool columnar() const { return !columns.empty(); }
};

ExperimentConfig load_config(const std::string& path);

// "csv" for the sweep experiments (spectrum, critical, limit), else "json".
std::string default_format(const std::string& experiment);

// Re-validates every physical precondition (ConfigError) before touching the
// numerics; errors raised inside the modules propagate as-is.
ResultRecord run_experiment(const ExperimentConfig& config);

// Both emitters print doubles with 17 significant digits.
std::string emit_json(const ResultRecord& record);
std::string emit_csv(const ResultRecord& record);
std::string emit(const ResultRecord& record, const std::string& format);

// Empty path writes to stdout.
void write_output(const std::string& text, const std::string& path);

}  // namespace qwn

#endif  // QWN_EXPERIMENT_HPP
