#include "qwn/stochastic_limit.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qwn/errors.hpp"

namespace qwn {

namespace {

constexpr cplx kImag{0.0, 1.0};

// Trapezoid weights on a uniform grid fold into endpoint halving.
template <typename Fn>
cplx trapezoid(double lo, double hi, int nodes, Fn&& fn) {
  const double h = (hi - lo) / (nodes - 1);
  cplx sum = 0.5 * (fn(lo) + fn(hi));
  for (int j = 1; j + 1 < nodes; ++j) {
    sum += fn(lo + j * h);
  }
  return sum * h;
}

void check_tau_quadrature(const TauQuadrature& quad, double lambda) {
  const double kernel_width = lambda * lambda;
  if (quad.nodes < 2 || !(quad.half_range > 0.0)) {
    throw InvalidArgument("tau quadrature needs half_range > 0 and >= 2 nodes");
  }
  const double spacing = 2.0 * quad.half_range / (quad.nodes - 1);
  if (spacing > kernel_width / 5.0) {
    throw KernelUnderResolved(
        "tau spacing " + std::to_string(spacing) +
        " too coarse for the width-2*lambda^2 kernel at lambda = " +
        std::to_string(lambda));
  }
  if (quad.half_range < 8.0 * kernel_width) {
    throw KernelUnderResolved("tau half range " +
                              std::to_string(quad.half_range) +
                              " does not cover the kernel at lambda = " +
                              std::to_string(lambda));
  }
}

}  // namespace

FormFactorSpec::FormFactorSpec(std::function<double(double)> intensity,
                               double dispersion_slope, double k_min,
                               double k_max, int nodes)
    : v_(dispersion_slope), k_min_(k_min), k_max_(k_max) {
  if (v_ == 0.0) {
    throw InvalidArgument("dispersion slope v must be nonzero");
  }
  if (!(k_min_ < k_max_) || nodes < 2) {
    throw InvalidArgument("form factor needs k_min < k_max and >= 2 nodes");
  }
  samples_.resize(nodes);
  const double h = (k_max_ - k_min_) / (nodes - 1);
  for (int j = 0; j < nodes; ++j) {
    const double value = intensity(k_min_ + j * h);
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw InvalidArgument("|f(k)|^2 must be finite and nonnegative");
    }
    samples_[j] = value;
  }
  intensity_at_zero_ = intensity(0.0);
}

double FormFactorSpec::node_spacing() const {
  return (k_max_ - k_min_) / (static_cast<double>(samples_.size()) - 1.0);
}

TauQuadrature default_tau_quadrature(double lambda) {
  const double half_range = 12.0 * lambda * lambda;
  const double spacing = lambda * lambda / 8.0;
  const int nodes = static_cast<int>(std::ceil(2.0 * half_range / spacing)) + 1;
  return TauQuadrature{half_range, nodes};
}

cplx field_covariance(const FormFactorSpec& spec, double t) {
  const double h = spec.node_spacing();
  const double phase_per_node = h * std::abs(spec.dispersion_slope() * t);
  if (phase_per_node > 0.1) {
    throw PhaseUnderResolved("k spacing " + std::to_string(h) +
                             " under-resolves the phase at t = " +
                             std::to_string(t) + " (phase per node " +
                             std::to_string(phase_per_node) + " rad)");
  }
  const auto& samples = spec.samples();
  const int nodes = static_cast<int>(samples.size());
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double k = spec.k_min() + j * h;
    const double weight = (j == 0 || j + 1 == nodes) ? 0.5 : 1.0;
    sum += weight * samples[j] *
           std::exp(kImag * (spec.dispersion_slope() * k * t));
  }
  return sum * h;
}

cplx rescaled_covariance(const FormFactorSpec& spec, double lambda,
                         double tau) {
  if (!(lambda > 0.0)) {
    throw InvalidArgument("lambda must be positive");
  }
  const double l2 = lambda * lambda;
  return field_covariance(spec, tau / l2) / l2;
}

cplx smeared_limit(const FormFactorSpec& spec, double lambda,
                   const TestFunction& phi, const TauQuadrature& quad) {
  check_tau_quadrature(quad, lambda);
  return trapezoid(-quad.half_range, quad.half_range, quad.nodes,
                   [&](double tau) {
                     return rescaled_covariance(spec, lambda, tau) *
                            phi.phi(tau);
                   });
}

cplx covariance_mass(const FormFactorSpec& spec, double lambda,
                     const TauQuadrature& quad) {
  check_tau_quadrature(quad, lambda);
  return trapezoid(-quad.half_range, quad.half_range, quad.nodes,
                   [&](double tau) {
                     return rescaled_covariance(spec, lambda, tau);
                   });
}

double delta_weight(const FormFactorSpec& spec) {
  return 2.0 * std::numbers::pi * spec.intensity_at_zero() /
         std::abs(spec.dispersion_slope());
}

}  // namespace qwn
