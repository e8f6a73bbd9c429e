#include "qwn/evolution.hpp"

#include <cmath>

#include "qwn/errors.hpp"

namespace qwn {

namespace {

constexpr cplx kImag{0.0, 1.0};

void check_sampling(const TimeGrid& grid, std::size_t samples,
                    const char* what) {
  if (samples != grid.size()) {
    throw LengthMismatch(std::string(what) + " must match the grid size");
  }
}

}  // namespace

bool RegularizationScheme::is_unitary() const {
  return std::abs(c.real() - 0.5) <= 1e-12;
}

cplx sigma(double Omega, const RegularizationScheme& scheme) {
  const cplx denom = 1.0 + kImag * scheme.c * Omega;
  if (std::abs(denom) < 1e-14) {
    throw PoleInScheme("1 + i c Omega vanishes for Omega = " +
                       std::to_string(Omega));
  }
  return Omega / denom;
}

cplx multiplier(cplx sigma_value) { return 1.0 - kImag * sigma_value; }

const char* to_string(Convention conv) {
  return conv == Convention::paper ? "paper" : "derived";
}

Convention convention_from_string(const std::string& name) {
  if (name == "paper") return Convention::paper;
  if (name == "derived") return Convention::derived;
  throw InvalidArgument("unknown convention '" + name +
                        "' (expected paper|derived)");
}

cplx correlator_factor(double Omega, const RegularizationScheme& scheme,
                       Convention conv) {
  const cplx derived = multiplier(sigma(Omega, scheme));
  return conv == Convention::derived ? derived : std::conj(derived);
}

SymbolKernel make_symbol_kernel(const TimeGrid& grid,
                                const std::vector<double>& Omega,
                                const RegularizationScheme& scheme) {
  check_sampling(grid, Omega.size(), "Omega samples");
  SymbolKernel kernel{grid, {}, {}};
  kernel.sigma.reserve(Omega.size());
  kernel.multiplier.reserve(Omega.size());
  for (double w : Omega) {
    const cplx s = sigma(w, scheme);
    kernel.sigma.push_back(s);
    kernel.multiplier.push_back(multiplier(s));
  }
  return kernel;
}

bool unitarity_region(const RegularizationScheme& scheme) {
  return scheme.is_unitary();
}

cplx closed_form_correlator(const TimeGrid& grid,
                            const std::vector<double>& Omega,
                            const std::vector<cplx>& f1,
                            const std::vector<cplx>& f2,
                            const RegularizationScheme& scheme,
                            Convention conv) {
  check_sampling(grid, Omega.size(), "Omega samples");
  check_sampling(grid, f1.size(), "f1 samples");
  check_sampling(grid, f2.size(), "f2 samples");
  if (!scheme.is_unitary()) {
    throw NonUnitaryScheme(
        "the correlator formula holds for unitary schemes (Re c = 1/2)");
  }
  cplx exponent = 0.0;
  for (std::size_t k = 0; k < grid.intervals(); ++k) {
    const cplx phi = correlator_factor(Omega[k], scheme, conv);
    if (std::abs(std::abs(phi) - 1.0) > 1e-12) {
      throw NonUnitaryScheme("correlator factor left the unit circle");
    }
    exponent += f1[k] * phi * f2[k] * grid.dt(k);
  }
  if (!std::isfinite(exponent.real()) || !std::isfinite(exponent.imag())) {
    throw QuadratureFailure("correlator exponent is not finite");
  }
  return std::exp(exponent);
}

cplx linear_vacuum_amplitude(const TimeGrid& grid, const std::vector<cplx>& F,
                             const RegularizationScheme& scheme) {
  check_sampling(grid, F.size(), "F samples");
  double integral = 0.0;
  for (std::size_t k = 0; k < grid.intervals(); ++k) {
    integral += std::norm(F[k]) * grid.dt(k);
  }
  if (!std::isfinite(integral)) {
    throw QuadratureFailure("|F|^2 integral is not finite");
  }
  return std::exp(-scheme.c * integral);
}

std::vector<double> poisson_generator_from_critical(
    const std::vector<double>& f) {
  std::vector<double> Omega(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    Omega[k] = 2.0 * f[k];
  }
  return Omega;
}

}  // namespace qwn
