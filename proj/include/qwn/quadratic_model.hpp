#ifndef QWN_QUADRATIC_MODEL_HPP
#define QWN_QUADRATIC_MODEL_HPP

#include <cstddef>
#include <vector>

#include "qwn/time_grid.hpp"

namespace qwn {

// Time-sampled real coefficients (omega_t, g_t) of the quadratic noise
// Hamiltonian. Admissible iff |g_k/omega_k| < 1/2 at every sample
// (omega_k == 0 only with g_k == 0).
struct CoefficientPath {
  TimeGrid grid;
  std::vector<double> omega;  // rad/s
  std::vector<double> g;      // rad/s
};

CoefficientPath make_coefficient_path(TimeGrid grid, std::vector<double> omega,
                                      std::vector<double> g);

// Constant-coefficient convenience path on a uniform grid.
CoefficientPath constant_path(double omega, double g, double horizon,
                              std::size_t steps);

bool admissible(const CoefficientPath& path);

// Per-sample output of the Bogoliubov diagonalization.
//   Omega_k = omega_k / (sinh^2 theta_k + cosh^2 theta_k)
//   kappa_k = -omega_k sinh^2 theta_k / (sinh^2 theta_k + cosh^2 theta_k)
struct BogoliubovData {
  std::vector<double> theta;  // dimensionless
  std::vector<double> Omega;  // rad/s
  std::vector<double> kappa;  // rad/s
};

// Hyperbolic angle of the Bogoliubov rotation that removes the g(b^2 + b+^2)
// term: theta = artanh(2 g / omega) / 2. Strict threshold |g/omega| < 1/2,
// no epsilon slack; the boundary itself is rejected. omega == 0 is accepted
// only with g == 0 (gives theta = 0).
double solve_theta(double omega, double g);

// Pointwise diagonalization of an admissible path. A ThresholdViolation or
// DegenerateFrequency raised at sample k is rethrown with k in the message.
BogoliubovData diagonalize(const CoefficientPath& path);

// Renormalized square of classical white noise: the family
//   omega = 2 f / eps,  g = (f / eps)(1 - eps^2 / 2),
// admissible exactly for 0 < eps < 2, with Omega_eps = 2 f sqrt(1 - eps^2/4).
struct CriticalFamilyParams {
  TimeGrid grid;
  std::vector<double> f;  // rad/s
  double epsilon = 0.0;   // dimensionless, 0 < eps < 2
};

CoefficientPath critical_family(const CriticalFamilyParams& params);

// Lattice counterterm coefficients c_k = -kappa_k / delta. The finite
// per-step generator addend is delta * c_k = -kappa_k.
std::vector<double> counterterm(const BogoliubovData& data, double delta);

}  // namespace qwn

#endif  // QWN_QUADRATIC_MODEL_HPP
