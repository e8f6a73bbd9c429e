#ifndef QWN_STOCHASTIC_LIMIT_HPP
#define QWN_STOCHASTIC_LIMIT_HPP

#include <complex>
#include <functional>
#include <vector>

namespace qwn {

using cplx = std::complex<double>;

// Smooth field A(t) = integral a(k) f(k) exp(i w(k) t) dk with linear
// dispersion w(k) = v k. Holds the intensity |f(k)|^2 sampled on the
// k-quadrature grid [k_min, k_max] with `nodes` trapezoid nodes.
class FormFactorSpec {
 public:
  FormFactorSpec(std::function<double(double)> intensity,
                 double dispersion_slope, double k_min, double k_max,
                 int nodes);

  double dispersion_slope() const { return v_; }
  double k_min() const { return k_min_; }
  double k_max() const { return k_max_; }
  double node_spacing() const;
  const std::vector<double>& samples() const { return samples_; }
  double intensity_at_zero() const { return intensity_at_zero_; }

 private:
  double v_;
  double k_min_;
  double k_max_;
  std::vector<double> samples_;
  double intensity_at_zero_;
};

// Smearing device for the distributional limit; value_at_zero is phi(0),
// scale the decay scale of phi.
struct TestFunction {
  std::function<cplx(double)> phi;
  double value_at_zero = 0.0;
  double scale = 1.0;
};

// tau-grid for smearing integrals: trapezoid over [-half_range, half_range].
struct TauQuadrature {
  double half_range;
  int nodes;
};

// Covers the width-2 lambda^2 covariance kernel with margin: half range
// 12 lambda^2, spacing lambda^2 / 8.
TauQuadrature default_tau_quadrature(double lambda);

// Vacuum covariance <A(t) A+(s)> at tau = t - s:
//   integral |f(k)|^2 exp(i v k tau) dk.
// Guard: node spacing * |v tau| <= 0.1, else PhaseUnderResolved.
cplx field_covariance(const FormFactorSpec& spec, double t);

// Van Hove rescaling C_lambda(tau) = field_covariance(tau / lambda^2) / lambda^2.
cplx rescaled_covariance(const FormFactorSpec& spec, double lambda, double tau);

// integral C_lambda(tau) phi(tau) dtau; converges to the delta weight
// 2 pi |f(0)|^2 / |v| times phi(0) as lambda -> 0.
cplx smeared_limit(const FormFactorSpec& spec, double lambda,
                   const TestFunction& phi, const TauQuadrature& quad);

// integral C_lambda(tau) dtau; lambda-independent, equal to the delta weight.
cplx covariance_mass(const FormFactorSpec& spec, double lambda,
                     const TauQuadrature& quad);

double delta_weight(const FormFactorSpec& spec);

}  // namespace qwn

#endif  // QWN_STOCHASTIC_LIMIT_HPP
