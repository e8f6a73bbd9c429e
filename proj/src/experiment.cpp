#include "qwn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "qwn/errors.hpp"
#include "qwn/evolution.hpp"
#include "qwn/fock_oracle.hpp"
#include "qwn/ito_algebra.hpp"
#include "qwn/parallel.hpp"
#include "qwn/quadratic_model.hpp"
#include "qwn/stochastic_limit.hpp"
#include "qwn/time_grid.hpp"

namespace qwn {

namespace {

const char* kExperiments[] = {"diagonalize", "spectrum",  "correlator",
                              "compare-oracle", "critical", "linear",
                              "ito",         "limit"};

bool known_experiment(const std::string& name) {
  return std::find(std::begin(kExperiments), std::end(kExperiments), name) !=
         std::end(kExperiments);
}

[[noreturn]] void fail(const std::string& message) {
  throw ConfigError(message);
}

void require_object(const json& value, const std::string& where) {
  if (!value.is_object()) fail(where + " must be a JSON object");
}

void reject_unknown(const json& object,
                    std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      fail(where + ": unknown key \"" + it.key() + "\"");
    }
  }
}

const json& require_key(const json& object, const char* name,
                        const std::string& where) {
  auto it = object.find(name);
  if (it == object.end()) {
    fail(where + ": missing required key \"" + std::string(name) + "\"");
  }
  return *it;
}

double as_real(const json& value, const std::string& where) {
  if (!value.is_number()) fail(where + " must be a real number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(where + " must be finite");
  return x;
}

double get_real(const json& params, const char* name,
                const std::string& where) {
  return as_real(require_key(params, name, where),
                 where + "." + std::string(name));
}

double get_real_or(const json& params, const char* name, double fallback,
                   const std::string& where) {
  auto it = params.find(name);
  return it == params.end()
             ? fallback
             : as_real(*it, where + "." + std::string(name));
}

std::int64_t as_integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) fail(where + " must be an integer");
  return value.get<std::int64_t>();
}

std::int64_t get_int(const json& params, const char* name,
                     const std::string& where) {
  return as_integer(require_key(params, name, where),
                    where + "." + std::string(name));
}

std::int64_t get_int_or(const json& params, const char* name,
                        std::int64_t fallback, const std::string& where) {
  auto it = params.find(name);
  return it == params.end()
             ? fallback
             : as_integer(*it, where + "." + std::string(name));
}

std::string get_string_or(const json& params, const char* name,
                          const std::string& fallback,
                          const std::string& where) {
  auto it = params.find(name);
  if (it == params.end()) return fallback;
  if (!it->is_string()) {
    fail(where + "." + std::string(name) + " must be a string");
  }
  return it->get<std::string>();
}

bool is_pair(const json& value) {
  return value.is_array() && value.size() == 2 && value[0].is_number() &&
         value[1].is_number();
}

cplx as_complex(const json& value, const std::string& where) {
  if (value.is_number()) return {as_real(value, where), 0.0};
  if (is_pair(value)) {
    return {as_real(value[0], where + "[0]"), as_real(value[1], where + "[1]")};
  }
  fail(where + " must be a real number or an [re, im] pair");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// A scalar broadcasts over all n samples; an array must have exactly n
// entries. A bare two-number array is always read as one complex pair.
std::vector<cplx> complex_samples(const json& value, std::size_t n,
                                  const std::string& where) {
  if (value.is_number() || is_pair(value)) {
    return std::vector<cplx>(n, as_complex(value, where));
  }
  if (value.is_array()) {
    if (value.size() != n) {
      fail(where + " must have one entry per grid sample (" +
           std::to_string(n) + "), got " + std::to_string(value.size()));
    }
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = as_complex(value[k], where + "[" + std::to_string(k) + "]");
    }
    return out;
  }
  fail(where + " must be a number, an [re, im] pair, or an array of samples");
}

std::vector<double> real_samples(const json& value, std::size_t n,
                                 const std::string& where) {
  if (value.is_number()) {
    return std::vector<double>(n, as_real(value, where));
  }
  if (value.is_array()) {
    if (value.size() != n) {
      fail(where + " must have one entry per grid sample (" +
           std::to_string(n) + "), got " + std::to_string(value.size()));
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = as_real(value[k], where + "[" + std::to_string(k) + "]");
    }
    return out;
  }
  fail(where + " must be a real number or an array of samples");
}

std::vector<double> real_list(const json& value, const std::string& where) {
  if (value.is_number()) return {as_real(value, where)};
  if (!value.is_array() || value.empty()) {
    fail(where + " must be a number or a nonempty array of numbers");
  }
  std::vector<double> out(value.size());
  for (std::size_t k = 0; k < value.size(); ++k) {
    out[k] = as_real(value[k], where + "[" + std::to_string(k) + "]");
  }
  return out;
}

void check_threshold(double omega, double g, const std::string& where) {
  if (omega == 0.0 && g == 0.0) return;
  if (omega == 0.0) {
    fail(where + ": omega = 0 admits only g = 0");
  }
  if (!(std::abs(g) < 0.5 * std::abs(omega))) {
    fail(where + ": inadmissible coefficients omega = " +
         std::to_string(omega) + ", g = " + std::to_string(g) +
         "; the model requires |g/omega| < 1/2");
  }
}

TimeGrid uniform_grid(const json& params, const std::string& where,
                      double* horizon_out, std::int64_t* steps_out) {
  const double horizon = get_real(params, "horizon", where);
  const std::int64_t steps = get_int(params, "steps", where);
  if (!(horizon > 0.0)) fail(where + ".horizon must be positive");
  if (steps < 1) fail(where + ".steps must be at least 1");
  if (steps > 2'000'000) fail(where + ".steps is implausibly large");
  *horizon_out = horizon;
  *steps_out = steps;
  return TimeGrid::uniform(horizon, static_cast<std::size_t>(steps));
}

std::string resolve_convention(const json& params,
                               const ExperimentConfig& config,
                               const std::string& where) {
  std::string name =
      config.convention.empty()
          ? get_string_or(params, "convention", "paper", where)
          : config.convention;
  if (name != "paper" && name != "derived") {
    fail(where + ": convention must be \"paper\" or \"derived\", got \"" +
         name + "\"");
  }
  return name;
}

ResultRecord run_diagonalize(const json& params) {
  const std::string where = "diagonalize";
  reject_unknown(params, {"omega", "g"}, where);
  const double omega = get_real(params, "omega", where);
  const double g = get_real(params, "g", where);
  check_threshold(omega, g, where);

  const auto data = diagonalize(constant_path(omega, g, 1.0, 1));

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"omega", omega}, {"g", g}};
  record.outputs = {{"theta", data.theta[0]},
                    {"Omega", data.Omega[0]},
                    {"kappa", data.kappa[0]}};
  record.diagnostics = {{"constraint", "|g/omega| < 1/2, strict"}};
  return record;
}

ResultRecord run_spectrum(const json& params) {
  const std::string where = "spectrum";
  reject_unknown(params, {"omega", "g", "truncation", "levels"}, where);
  const double omega = get_real(params, "omega", where);
  const double g = get_real(params, "g", where);
  const std::int64_t levels = get_int_or(params, "levels", 5, where);
  const std::int64_t trunc = get_int_or(params, "truncation", 60, where);
  check_threshold(omega, g, where);
  if (levels < 1) fail(where + ".levels must be at least 1");
  if (trunc < 4 * levels + 20) {
    fail(where + ".truncation must be at least 4*levels + 20 = " +
         std::to_string(4 * levels + 20) + " to keep truncation artifacts out");
  }

  const auto eigenvalues = spectrum_check(
      omega, g, FockTruncation(static_cast<int>(trunc)),
      static_cast<int>(levels));
  const auto data = diagonalize(constant_path(omega, g, 1.0, 1));

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"omega", omega},
                   {"g", g},
                   {"truncation", trunc},
                   {"levels", levels}};
  record.columns = {"level", "eigenvalue", "exact", "abs_error"};
  for (std::int64_t k = 0; k < levels; ++k) {
    const double exact = data.kappa[0] + data.Omega[0] * static_cast<double>(k);
    const double value = eigenvalues[static_cast<std::size_t>(k)];
    record.rows.push_back({static_cast<double>(k), value, exact,
                           std::abs(value - exact)});
  }
  record.diagnostics = {{"guard", "truncation >= 4*levels + 20"},
                        {"Omega", data.Omega[0]},
                        {"kappa", data.kappa[0]}};
  return record;
}

ResultRecord run_correlator(const json& params,
                            const ExperimentConfig& config) {
  const std::string where = "correlator";
  reject_unknown(
      params, {"Omega", "f1", "f2", "horizon", "steps", "scheme_c",
               "convention"},
      where);
  double horizon = 0.0;
  std::int64_t steps = 0;
  const TimeGrid grid = uniform_grid(params, where, &horizon, &steps);
  const auto Omega =
      real_samples(require_key(params, "Omega", where), grid.size(),
                   where + ".Omega");
  const auto f1 = complex_samples(require_key(params, "f1", where),
                                  grid.size(), where + ".f1");
  const auto f2 = complex_samples(require_key(params, "f2", where),
                                  grid.size(), where + ".f2");
  RegularizationScheme scheme{.c = {0.5, 0.0}};
  if (auto it = params.find("scheme_c"); it != params.end()) {
    scheme.c = as_complex(*it, where + ".scheme_c");
  }
  if (!scheme.is_unitary()) {
    fail(where + ": scheme_c must satisfy Re(c) = 1/2; the evolution is not "
                 "unitary otherwise");
  }
  const std::string convention = resolve_convention(params, config, where);

  const cplx value = closed_form_correlator(grid, Omega, f1, f2, scheme,
                                            convention_from_string(convention));

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"Omega", params.at("Omega")},
                   {"f1", params.at("f1")},
                   {"f2", params.at("f2")},
                   {"horizon", horizon},
                   {"steps", steps},
                   {"scheme_c", complex_to_json(scheme.c)},
                   {"convention", convention}};
  record.outputs = {{"correlator", complex_to_json(value)}};
  record.diagnostics = {{"convention", convention},
                        {"scheme_c", complex_to_json(scheme.c)},
                        {"unit_modulus_tolerance", 1e-12}};
  return record;
}

ResultRecord run_compare_oracle(const json& params,
                                const ExperimentConfig& config) {
  const std::string where = "compare-oracle";
  reject_unknown(params,
                 {"Omega", "f1", "f2", "horizon", "steps", "truncation",
                  "convention"},
                 where);
  double horizon = 0.0;
  std::int64_t steps = 0;
  const TimeGrid grid = uniform_grid(params, where, &horizon, &steps);
  const double Omega = get_real(params, "Omega", where);
  const cplx f1 = as_complex(require_key(params, "f1", where), where + ".f1");
  const cplx f2 = as_complex(require_key(params, "f2", where), where + ".f2");
  const std::int64_t trunc = get_int_or(params, "truncation", 25, where);
  if (trunc < 2) fail(where + ".truncation must be at least 2");
  const std::string convention = resolve_convention(params, config, where);

  const double delta = grid.step();
  const FockTruncation truncation(static_cast<int>(trunc));
  const NoiseLattice lattice{delta, static_cast<int>(steps), truncation};
  const std::size_t modes = static_cast<std::size_t>(steps);

  const RegularizationScheme scheme = RegularizationScheme::symmetric();
  const cplx mult = multiplier(sigma(Omega, scheme));
  const std::vector<cplx> multipliers(modes, mult);
  const std::vector<cplx> f1_modes(modes, f1);
  const std::vector<cplx> f2_modes(modes, f2);
  const std::vector<ModeMatrix> step_ops(modes, cayley_step(Omega, truncation));

  const cplx oracle = correlator_oracle(lattice, multipliers, f1_modes,
                                        f2_modes);
  const cplx brute = brute_force_correlator(lattice, step_ops, f1_modes,
                                            f2_modes);

  const std::vector<double> Omega_path(grid.size(), Omega);
  const std::vector<cplx> f1_path(grid.size(), f1);
  const std::vector<cplx> f2_path(grid.size(), f2);
  const cplx closed_derived = closed_form_correlator(
      grid, Omega_path, f1_path, f2_path, scheme, Convention::derived);
  const cplx closed_paper = closed_form_correlator(
      grid, Omega_path, f1_path, f2_path, scheme, Convention::paper);
  const cplx closed = convention == "paper" ? closed_paper : closed_derived;

  const double w = std::max(std::abs(f1), std::abs(f2)) * std::sqrt(delta);
  const double tail_bound =
      w == 0.0 ? 0.0
               : std::exp(2.0 * static_cast<double>(trunc) * std::log(w) -
                          std::lgamma(static_cast<double>(trunc) + 1.0));

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"Omega", Omega},
                   {"f1", complex_to_json(f1)},
                   {"f2", complex_to_json(f2)},
                   {"horizon", horizon},
                   {"steps", steps},
                   {"truncation", trunc},
                   {"convention", convention}};
  record.outputs = {
      {"closed_form", complex_to_json(closed)},
      {"closed_form_paper", complex_to_json(closed_paper)},
      {"closed_form_derived", complex_to_json(closed_derived)},
      {"oracle", complex_to_json(oracle)},
      {"brute_force", complex_to_json(brute)},
      {"oracle_vs_brute_rel", std::abs(oracle - brute) / std::abs(brute)},
      {"closed_vs_oracle_rel",
       std::abs(closed_derived - oracle) / std::abs(oracle)}};
  record.diagnostics = {{"convention", convention},
                        {"oracle_confirms", "derived"},
                        {"tail_bound", tail_bound},
                        {"truncation", trunc},
                        {"delta", delta}};
  return record;
}

ResultRecord run_critical(const json& params) {
  const std::string where = "critical";
  reject_unknown(params, {"f", "epsilons"}, where);
  const double f = get_real(params, "f", where);
  const auto epsilons =
      real_list(require_key(params, "epsilons", where), where + ".epsilons");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0.0 && epsilons[k] < 2.0)) {
      fail(where + ".epsilons[" + std::to_string(k) +
           "] must lie in (0, 2), got " + std::to_string(epsilons[k]));
    }
  }

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"f", f}, {"epsilons", epsilons}};
  record.columns = {"epsilon", "Omega", "error_vs_2f"};
  record.rows.resize(epsilons.size());
  parallel_for(epsilons.size(), [&](std::size_t k) {
    CriticalFamilyParams family{TimeGrid::uniform(1.0, 1),
                                std::vector<double>(2, f), epsilons[k]};
    const auto data = diagonalize(critical_family(family));
    const double target = poisson_generator_from_critical(family.f)[0];
    record.rows[k] = {epsilons[k], data.Omega[0],
                      std::abs(data.Omega[0] - target)};
  });
  record.diagnostics = {{"admissible_range", "0 < epsilon < 2"},
                        {"poisson_generator", 2.0 * f}};
  return record;
}

ResultRecord run_linear(const json& params) {
  const std::string where = "linear";
  reject_unknown(params, {"F", "horizon", "steps", "truncation"}, where);
  double horizon = 0.0;
  std::int64_t steps = 0;
  const TimeGrid grid = uniform_grid(params, where, &horizon, &steps);
  const auto F = complex_samples(require_key(params, "F", where), grid.size(),
                                 where + ".F");
  const std::int64_t trunc = get_int_or(params, "truncation", 0, where);
  if (trunc != 0 && trunc < 2) {
    fail(where + ".truncation must be at least 2 (or omitted)");
  }

  const cplx closed =
      linear_vacuum_amplitude(grid, F, RegularizationScheme::symmetric());

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"F", params.at("F")},
                   {"horizon", horizon},
                   {"steps", steps},
                   {"truncation", trunc}};
  record.outputs = {{"closed_form", complex_to_json(closed)}};
  if (trunc != 0) {
    const FockTruncation truncation(static_cast<int>(trunc));
    const double delta = grid.step();
    const std::size_t modes = grid.intervals();
    std::vector<cplx> amplitudes(modes);
    parallel_for(modes, [&](std::size_t k) {
      amplitudes[k] = vacuum_amplitude(linear_step(F[k], delta, truncation));
    });
    cplx lattice = 1.0;
    for (const cplx& a : amplitudes) lattice *= a;
    record.outputs["lattice"] = complex_to_json(lattice);
    record.outputs["abs_error"] = std::abs(lattice - closed);
  }
  record.diagnostics = {{"scheme_c", complex_to_json({0.5, 0.0})},
                        {"truncation", trunc}};
  return record;
}

ItoElement factor_element(const json& factors, std::size_t k,
                          const std::string& where) {
  const json& entry = factors[k];
  const std::string label = where + ".factors[" + std::to_string(k) + "]";
  if (!entry.is_array() || entry.size() != 2) {
    fail(label + " must be an [m, n] pair of nonnegative integers");
  }
  const std::int64_t m = as_integer(entry[0], label + "[0]");
  const std::int64_t n = as_integer(entry[1], label + "[1]");
  if (m < 0 || n < 0) fail(label + ": powers must be nonnegative");
  if (m > 64 || n > 64) fail(label + ": powers above 64 are not supported");
  return ItoElement::basis({static_cast<int>(m), static_cast<int>(n)});
}

ResultRecord run_ito(const json& params) {
  const std::string where = "ito";
  reject_unknown(params, {"operation", "factors"}, where);
  const std::string operation =
      get_string_or(params, "operation", "product", where);
  const json& factors = require_key(params, "factors", where);
  if (!factors.is_array()) fail(where + ".factors must be an array");

  ItoElement result;
  if (operation == "product") {
    if (factors.size() != 2) fail(where + ": product takes 2 factors");
    result = product(factor_element(factors, 0, where),
                     factor_element(factors, 1, where));
  } else if (operation == "associator") {
    if (factors.size() != 3) fail(where + ": associator takes 3 factors");
    result = associator(factor_element(factors, 0, where),
                        factor_element(factors, 1, where),
                        factor_element(factors, 2, where));
  } else {
    fail(where + ".operation must be \"product\" or \"associator\", got \"" +
         operation + "\"");
  }

  json terms = json::array();
  for (const auto& [index, coefficient] : result.terms()) {
    terms.push_back({{"index", json::array({index.m, index.n})},
                     {"coefficient", complex_to_json(coefficient)}});
  }

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"operation", operation}, {"factors", factors}};
  record.outputs = {{"rendered", render(result)}, {"terms", terms}};
  record.diagnostics = {{"zero_threshold", 1e-12}};
  return record;
}

ResultRecord run_limit(const json& params) {
  const std::string where = "limit";
  reject_unknown(params,
                 {"lambdas", "dispersion_slope", "intensity", "k_min", "k_max",
                  "k_nodes", "tau_half_range", "tau_nodes", "test_function"},
                 where);
  const auto lambdas =
      real_list(require_key(params, "lambdas", where), where + ".lambdas");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) {
      fail(where + ".lambdas[" + std::to_string(k) + "] must be positive");
    }
  }
  const double v = get_real_or(params, "dispersion_slope", 1.0, where);
  if (v == 0.0) fail(where + ".dispersion_slope must be nonzero");
  const double k_min = get_real_or(params, "k_min", -8.0, where);
  const double k_max = get_real_or(params, "k_max", 8.0, where);
  if (!(k_min < k_max)) fail(where + ": k_min must be below k_max");
  const std::int64_t k_nodes = get_int_or(params, "k_nodes", 3201, where);
  if (k_nodes < 2) fail(where + ".k_nodes must be at least 2");

  const std::string intensity =
      get_string_or(params, "intensity", "gaussian", where);
  if (intensity != "gaussian") {
    fail(where + ".intensity: only \"gaussian\" (|f(k)|^2 = exp(-k^2)) is "
                 "available, got \"" + intensity + "\"");
  }
  const std::string test_function =
      get_string_or(params, "test_function", "gaussian", where);
  if (test_function != "gaussian" && test_function != "one") {
    fail(where + ".test_function must be \"gaussian\" or \"one\", got \"" +
         test_function + "\"");
  }

  const bool has_half_range = params.contains("tau_half_range");
  const double tau_half_range =
      has_half_range ? as_real(params.at("tau_half_range"),
                               where + ".tau_half_range")
                     : 0.0;
  const bool has_tau_nodes = params.contains("tau_nodes");
  const std::int64_t tau_nodes =
      has_tau_nodes ? as_integer(params.at("tau_nodes"), where + ".tau_nodes")
                    : 0;
  if (has_half_range && !(tau_half_range > 0.0)) {
    fail(where + ".tau_half_range must be positive");
  }
  if (has_tau_nodes && tau_nodes < 2) {
    fail(where + ".tau_nodes must be at least 2");
  }

  const FormFactorSpec spec([](double k) { return std::exp(-k * k); }, v,
                            k_min, k_max, static_cast<int>(k_nodes));
  TestFunction phi;
  if (test_function == "gaussian") {
    phi = TestFunction{[](double tau) { return cplx(std::exp(-tau * tau)); },
                       1.0, 1.0};
  } else {
    phi = TestFunction{[](double) { return cplx(1.0); }, 1.0, 1.0};
  }

  ResultRecord record;
  record.experiment = where;
  record.inputs = {{"lambdas", lambdas},
                   {"dispersion_slope", v},
                   {"intensity", intensity},
                   {"k_min", k_min},
                   {"k_max", k_max},
                   {"k_nodes", k_nodes},
                   {"test_function", test_function}};
  if (has_half_range) record.inputs["tau_half_range"] = tau_half_range;
  if (has_tau_nodes) record.inputs["tau_nodes"] = tau_nodes;
  record.columns = {"lambda",  "smeared_re", "smeared_im",
                    "mass_re", "mass_im",    "delta_weight"};
  record.rows.resize(lambdas.size());
  const double weight = delta_weight(spec);
  parallel_for(lambdas.size(), [&](std::size_t k) {
    const double lambda = lambdas[k];
    TauQuadrature quad = default_tau_quadrature(lambda);
    if (has_half_range) quad.half_range = tau_half_range;
    if (has_tau_nodes) quad.nodes = static_cast<int>(tau_nodes);
    const cplx smeared = smeared_limit(spec, lambda, phi, quad);
    const cplx mass = covariance_mass(spec, lambda, quad);
    record.rows[k] = {lambda,      smeared.real(), smeared.imag(),
                      mass.real(), mass.imag(),    weight};
  });
  record.diagnostics = {
      {"tau_guard", "spacing <= lambda^2/5 and half_range >= 8*lambda^2"},
      {"k_spacing", spec.node_spacing()}};
  return record;
}

// ---- emission ----

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

void append_escaped(const std::string& text, std::string& out) {
  out.push_back('"');
  for (const char ch : text) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof buffer, "\\u%04x", ch);
          out += buffer;
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

bool flat_array(const json& value) {
  for (const auto& entry : value) {
    if (entry.is_array() || entry.is_object()) return false;
  }
  return true;
}

void append_value(const json& value, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        append_escaped(it.key(), out);
        out += ": ";
        append_value(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      if (flat_array(value)) {
        out += "[";
        bool first = true;
        for (const auto& entry : value) {
          if (!first) out += ", ";
          first = false;
          append_value(entry, out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& entry : value) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        append_value(entry, out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::string:
      append_escaped(value.get<std::string>(), out);
      return;
    case json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(value.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(value.get<std::uint64_t>());
      return;
    case json::value_t::number_float: {
      const double x = value.get<double>();
      if (!std::isfinite(x)) throw IoError("non-finite value in output");
      out += format_double(x);
      return;
    }
    default:
      out += "null";
      return;
  }
}

json record_to_json(const ResultRecord& record) {
  json document;
  document["experiment"] = record.experiment;
  document["inputs"] = record.inputs;
  if (record.columnar()) {
    json rows = json::array();
    for (const auto& row : record.rows) rows.push_back(row);
    document["outputs"] = {{"columns", record.columns}, {"rows", rows}};
  } else {
    document["outputs"] = record.outputs;
  }
  document["diagnostics"] = record.diagnostics;
  document["status"] = record.status;
  return document;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json document;
  try {
    document = json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError("config is not valid JSON: " + std::string(err.what()));
  }
  require_object(document, "config");
  reject_unknown(document, {"experiment", "parameters", "output"}, "config");

  ExperimentConfig config;
  const json& experiment = require_key(document, "experiment", "config");
  if (!experiment.is_string()) fail("config.experiment must be a string");
  config.experiment = experiment.get<std::string>();
  if (!known_experiment(config.experiment)) {
    fail("config.experiment: unknown experiment \"" + config.experiment +
         "\"; expected one of diagonalize | spectrum | correlator | "
         "compare-oracle | critical | linear | ito | limit");
  }

  if (auto it = document.find("parameters"); it != document.end()) {
    require_object(*it, "config.parameters");
    config.parameters = *it;
  }

  if (auto it = document.find("output"); it != document.end()) {
    require_object(*it, "config.output");
    reject_unknown(*it, {"path", "format"}, "config.output");
    if (auto path_it = it->find("path"); path_it != it->end()) {
      if (!path_it->is_string()) fail("config.output.path must be a string");
      config.out_path = path_it->get<std::string>();
    }
    if (auto fmt_it = it->find("format"); fmt_it != it->end()) {
      if (!fmt_it->is_string()) fail("config.output.format must be a string");
      config.format = fmt_it->get<std::string>();
      if (config.format != "csv" && config.format != "json") {
        fail("config.output.format must be \"csv\" or \"json\"");
      }
    }
  }
  return config;
}

std::string default_format(const std::string& experiment) {
  if (experiment == "spectrum" || experiment == "critical" ||
      experiment == "limit") {
    return "csv";
  }
  return "json";
}

ResultRecord run_experiment(const ExperimentConfig& config) {
  if (!known_experiment(config.experiment)) {
    fail("unknown experiment \"" + config.experiment + "\"");
  }
  const json& params = config.parameters;
  require_object(params, "config.parameters");
  if (config.experiment == "diagonalize") return run_diagonalize(params);
  if (config.experiment == "spectrum") return run_spectrum(params);
  if (config.experiment == "correlator") return run_correlator(params, config);
  if (config.experiment == "compare-oracle") {
    return run_compare_oracle(params, config);
  }
  if (config.experiment == "critical") return run_critical(params);
  if (config.experiment == "linear") return run_linear(params);
  if (config.experiment == "ito") return run_ito(params);
  return run_limit(params);
}

std::string emit_json(const ResultRecord& record) {
  std::string out;
  append_value(record_to_json(record), out, 0);
  out.push_back('\n');
  return out;
}

std::string emit_csv(const ResultRecord& record) {
  std::string out;
  if (record.columnar()) {
    for (std::size_t c = 0; c < record.columns.size(); ++c) {
      if (c) out.push_back(',');
      out += record.columns[c];
    }
    out.push_back('\n');
    for (const auto& row : record.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out.push_back(',');
        out += format_double(row[c]);
      }
      out.push_back('\n');
    }
    return out;
  }
  // Scalar record: one header + one data row; complex pairs split into
  // _re/_im columns, structured values stay json-only.
  std::string header;
  std::string row;
  bool first = true;
  auto push = [&](const std::string& name, const std::string& cell) {
    if (!first) {
      header.push_back(',');
      row.push_back(',');
    }
    first = false;
    header += name;
    row += cell;
  };
  for (auto it = record.outputs.begin(); it != record.outputs.end(); ++it) {
    const json& value = it.value();
    if (value.is_number_float()) {
      push(it.key(), format_double(value.get<double>()));
    } else if (value.is_number()) {
      push(it.key(), std::to_string(value.get<std::int64_t>()));
    } else if (is_pair(value)) {
      push(it.key() + "_re", format_double(value[0].get<double>()));
      push(it.key() + "_im", format_double(value[1].get<double>()));
    } else if (value.is_string()) {
      push(it.key(), value.get<std::string>());
    }
  }
  out = header + "\n" + row + "\n";
  return out;
}

std::string emit(const ResultRecord& record, const std::string& format) {
  if (format == "json") return emit_json(record);
  if (format == "csv") return emit_csv(record);
  throw ConfigError("format must be \"csv\" or \"json\", got \"" + format +
                    "\"");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  const std::filesystem::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create directory for " + path);
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace qwn
