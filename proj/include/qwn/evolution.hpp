#ifndef QWN_EVOLUTION_HPP
#define QWN_EVOLUTION_HPP

#include <complex>
#include <string>
#include <vector>

#include "qwn/time_grid.hpp"

namespace qwn {

using cplx = std::complex<double>;

// Weighting c between the two one-sided limits in products at coinciding
// times. The evolution is unitary exactly when Re(c) = 1/2.
struct RegularizationScheme {
  cplx c{0.5, 0.0};

  bool is_unitary() const;
  static RegularizationScheme symmetric() { return {cplx{0.5, 0.0}}; }
};

// Kernel of the exponential normal symbol of the solved gauge evolution,
// sigma = Omega / (1 + i c Omega), with the per-mode factor S = 1 - i sigma.
cplx sigma(double Omega, const RegularizationScheme& scheme);
cplx multiplier(cplx sigma_value);

// The correlator's per-time unit-modulus factor comes out of the
// computation as conj of the factor usually quoted; both are kept and
// selected by this flag. `paper` is the quoted form (1 + i Omega/2) /
// (1 - i Omega/2) at c = 1/2; `derived` is 1 - i sigma, the one the
// lattice oracle reproduces.
enum class Convention { paper, derived };

const char* to_string(Convention conv);
Convention convention_from_string(const std::string& name);

// Per-time correlator factor for a unitary scheme under the chosen
// convention; |phi| = 1 for all real Omega.
cplx correlator_factor(double Omega, const RegularizationScheme& scheme,
                       Convention conv);

// sigma and multiplier sampled along an Omega path.
struct SymbolKernel {
  TimeGrid grid;
  std::vector<cplx> sigma;
  std::vector<cplx> multiplier;  // 1 - i sigma, entrywise
};

SymbolKernel make_symbol_kernel(const TimeGrid& grid,
                                const std::vector<double>& Omega,
                                const RegularizationScheme& scheme);

// True iff Re(c) = 1/2 within 1e-12; equivalently |1 - i sigma(Omega, c)| = 1
// for all real Omega.
bool unitarity_region(const RegularizationScheme& scheme);

// exp{ integral of f1 phi(Omega) f2 } over the grid, piecewise-constant
// samples integrated exactly (left value times interval width). Rejects
// non-unitary schemes.
cplx closed_form_correlator(const TimeGrid& grid,
                            const std::vector<double>& Omega,
                            const std::vector<cplx>& f1,
                            const std::vector<cplx>& f2,
                            const RegularizationScheme& scheme,
                            Convention conv = Convention::paper);

// Vacuum amplitude of the linear model, exp(-c * integral |F|^2). For a
// unitary scheme the modulus is exp(-integral |F|^2 / 2).
cplx linear_vacuum_amplitude(const TimeGrid& grid, const std::vector<cplx>& F,
                             const RegularizationScheme& scheme);

// Generator of the critical-limit quantum Poisson process: Omega = 2 f.
std::vector<double> poisson_generator_from_critical(
    const std::vector<double>& f);

}  // namespace qwn

#endif  // QWN_EVOLUTION_HPP
