#include "qwn/quadratic_model.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qwn/errors.hpp"

namespace qwn {

CoefficientPath make_coefficient_path(TimeGrid grid, std::vector<double> omega,
                                      std::vector<double> g) {
  if (omega.size() != grid.size() || g.size() != grid.size()) {
    throw LengthMismatch("coefficient arrays must match the grid size");
  }
  return CoefficientPath{std::move(grid), std::move(omega), std::move(g)};
}

CoefficientPath constant_path(double omega, double g, double horizon,
                              std::size_t steps) {
  TimeGrid grid = TimeGrid::uniform(horizon, steps);
  const std::size_t n = grid.size();
  return CoefficientPath{std::move(grid), std::vector<double>(n, omega),
                         std::vector<double>(n, g)};
}

bool admissible(const CoefficientPath& path) {
  for (std::size_t k = 0; k < path.omega.size(); ++k) {
    const double w = path.omega[k];
    const double g = path.g[k];
    if (w == 0.0) {
      if (g != 0.0) return false;
    } else if (!(std::abs(g) < 0.5 * std::abs(w))) {
      return false;
    }
  }
  return true;
}

double solve_theta(double omega, double g) {
  if (omega == 0.0) {
    if (g != 0.0) {
      throw DegenerateFrequency(
          "omega = 0 with g != 0: the Bogoliubov condition divides by omega");
    }
    return 0.0;
  }
  if (!(std::abs(g) < 0.5 * std::abs(omega))) {
    throw ThresholdViolation("requires |g/omega| < 1/2, got g/omega = " +
                             std::to_string(g / omega));
  }
  return 0.5 * std::atanh(2.0 * g / omega);
}

BogoliubovData diagonalize(const CoefficientPath& path) {
  const std::size_t n = path.omega.size();
  BogoliubovData out;
  out.theta.resize(n);
  out.Omega.resize(n);
  out.kappa.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double theta;
    try {
      theta = solve_theta(path.omega[k], path.g[k]);
    } catch (const ThresholdViolation& e) {
      throw ThresholdViolation("sample " + std::to_string(k) + ": " +
                               e.what());
    } catch (const DegenerateFrequency& e) {
      throw DegenerateFrequency("sample " + std::to_string(k) + ": " +
                                e.what());
    }
    const double sh = std::sinh(theta);
    const double ch = std::cosh(theta);
    const double denom = sh * sh + ch * ch;
    out.theta[k] = theta;
    out.Omega[k] = path.omega[k] / denom;
    out.kappa[k] = -path.omega[k] * sh * sh / denom;
  }
  return out;
}

CoefficientPath critical_family(const CriticalFamilyParams& params) {
  if (params.f.size() != params.grid.size()) {
    throw LengthMismatch("f array must match the grid size");
  }
  const double eps = params.epsilon;
  if (!(eps > 0.0) || !(eps < 2.0)) {
    throw EpsilonOutOfRange(
        "epsilon must lie in (0, 2); the induced path hits the |g/omega| = "
        "1/2 threshold at the endpoints (got epsilon = " +
        std::to_string(eps) + ")");
  }
  const std::size_t n = params.f.size();
  std::vector<double> omega(n), g(n);
  for (std::size_t k = 0; k < n; ++k) {
    omega[k] = 2.0 * params.f[k] / eps;
    g[k] = (params.f[k] / eps) * (1.0 - 0.5 * eps * eps);
  }
  return CoefficientPath{params.grid, std::move(omega), std::move(g)};
}

std::vector<double> counterterm(const BogoliubovData& data, double delta) {
  if (!(delta > 0.0)) {
    throw NonpositiveStep("counterterm needs delta > 0");
  }
  std::vector<double> c(data.kappa.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = -data.kappa[k] / delta;
  }
  return c;
}

}  // namespace qwn
