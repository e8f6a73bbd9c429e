#include "qwn/fock_oracle.hpp"

#include <cmath>
#include <string>

#include "qwn/errors.hpp"
#include "qwn/parallel.hpp"

namespace qwn {

namespace {

constexpr cplx kImag{0.0, 1.0};

void check_lattice(const NoiseLattice& lattice) {
  if (!(lattice.delta > 0.0)) {
    throw NonpositiveStep("lattice step must be positive");
  }
  if (lattice.modes < 1) {
    throw InvalidArgument("lattice needs at least one mode");
  }
}

// Tail of the truncated exponential-vector norm, |w|^(2d) / d!.
double exponential_vector_tail(double abs_w, int d) {
  double log_tail = 2.0 * d * std::log(std::max(abs_w, 1e-300)) -
                    std::lgamma(static_cast<double>(d) + 1.0);
  return std::exp(log_tail);
}

}  // namespace

FockTruncation::FockTruncation(int dim) : d(dim) {
  if (d < 2) {
    throw InvalidArgument("Fock truncation needs d >= 2");
  }
}

LadderPair ladder_ops(const FockTruncation& trunc) {
  const int d = trunc.d;
  ModeMatrix a = ModeMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return LadderPair{a, a.adjoint()};
}

ModeMatrix quadratic_generator(double omega, double g, double kappa,
                               const FockTruncation& trunc) {
  const auto [a, adag] = ladder_ops(trunc);
  ModeMatrix h = omega * (adag * a) + g * (adag * adag + a * a);
  h -= kappa * ModeMatrix::Identity(trunc.d, trunc.d);
  return h;
}

std::vector<double> spectrum_check(double omega, double g,
                                   const FockTruncation& trunc, int m) {
  if (m < 1) {
    throw InvalidArgument("spectrum_check needs m >= 1");
  }
  if (omega == 0.0 || !(std::abs(g) < 0.5 * std::abs(omega))) {
    throw ThresholdViolation("spectrum_check requires |g/omega| < 1/2");
  }
  if (trunc.d < 4 * m + 20) {
    throw TruncationTooSmall("spectrum_check needs d >= 4m + 20, got d = " +
                             std::to_string(trunc.d));
  }
  Eigen::SelfAdjointEigenSolver<ModeMatrix> solver(
      quadratic_generator(omega, g, 0.0, trunc), Eigen::EigenvaluesOnly);
  std::vector<double> lowest(m);
  for (int k = 0; k < m; ++k) {
    lowest[k] = solver.eigenvalues()(k);
  }
  return lowest;
}

ModeMatrix unitary_step(const ModeMatrix& H) {
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NonHermitianInput("unitary_step requires a Hermitian generator");
  }
  Eigen::SelfAdjointEigenSolver<ModeMatrix> solver(H);
  const auto& V = solver.eigenvectors();
  Eigen::VectorXcd phases(H.rows());
  for (Eigen::Index k = 0; k < H.rows(); ++k) {
    phases(k) = std::exp(-kImag * solver.eigenvalues()(k));
  }
  return V * phases.asDiagonal() * V.adjoint();
}

ModeMatrix cayley_step(double Omega, const FockTruncation& trunc) {
  const cplx s = (1.0 - 0.5 * kImag * Omega) / (1.0 + 0.5 * kImag * Omega);
  ModeMatrix u = ModeMatrix::Zero(trunc.d, trunc.d);
  cplx sn = 1.0;
  for (int n = 0; n < trunc.d; ++n) {
    u(n, n) = sn;
    sn *= s;
  }
  return u;
}

ModeMatrix exponential_step(double Omega, const FockTruncation& trunc) {
  ModeMatrix u = ModeMatrix::Zero(trunc.d, trunc.d);
  for (int n = 0; n < trunc.d; ++n) {
    u(n, n) = std::exp(-kImag * (Omega * n));
  }
  return u;
}

cplx gauge_multiplier(const ModeMatrix& U) {
  const ModeMatrix off = U - ModeMatrix(U.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-12) {
    throw NotNumberConserving(
        "gauge_multiplier requires a number-conserving step (off-diagonal "
        "max " +
        std::to_string(off.cwiseAbs().maxCoeff()) + ")");
  }
  return U(1, 1) / U(0, 0);
}

cplx correlator_oracle(const NoiseLattice& lattice,
                       const std::vector<cplx>& multipliers,
                       const std::vector<cplx>& f1,
                       const std::vector<cplx>& f2) {
  check_lattice(lattice);
  const std::size_t n = static_cast<std::size_t>(lattice.modes);
  if (multipliers.size() != n || f1.size() != n || f2.size() != n) {
    throw LengthMismatch("correlator_oracle arrays must have N entries");
  }
  cplx exponent = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    exponent += f1[k] * f2[k] * lattice.delta * multipliers[k];
  }
  return std::exp(exponent);
}

cplx brute_force_correlator(const NoiseLattice& lattice,
                            const std::vector<ModeMatrix>& steps,
                            const std::vector<cplx>& f1,
                            const std::vector<cplx>& f2) {
  check_lattice(lattice);
  const std::size_t n = static_cast<std::size_t>(lattice.modes);
  if (steps.size() != n || f1.size() != n || f2.size() != n) {
    throw LengthMismatch("brute_force_correlator arrays must have N entries");
  }
  const double sqrt_delta = std::sqrt(lattice.delta);
  double max_w = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    max_w = std::max({max_w, std::abs(f1[k]) * sqrt_delta,
                      std::abs(f2[k]) * sqrt_delta});
  }
  const double tail = exponential_vector_tail(max_w, lattice.trunc.d);
  if (tail > 1e-12) {
    throw TruncationTooSmall(
        "exponential-vector truncation tail |w|^(2d)/d! = " +
            std::to_string(tail) + " exceeds 1e-12; increase d",
        tail);
  }

  std::vector<cplx> factors(n);
  parallel_for(n, [&](std::size_t k) {
    // <0| exp(f1 sqrt(delta) a) U exp(f2 sqrt(delta) adag) |0>; the bra is
    // the adjoint of |e(conj(f1) sqrt(delta))>.
    const Eigen::VectorXcd bra =
        exponential_vector(std::conj(f1[k]) * sqrt_delta, lattice.trunc);
    const Eigen::VectorXcd ket =
        exponential_vector(f2[k] * sqrt_delta, lattice.trunc);
    factors[k] = bra.adjoint() * (steps[k] * ket);
  });
  cplx product = 1.0;
  for (const cplx& f : factors) {
    product *= f;
  }
  return product;
}

ModeMatrix linear_step(cplx F, double delta, const FockTruncation& trunc) {
  if (!(delta > 0.0)) {
    throw NonpositiveStep("linear_step needs delta > 0");
  }
  const auto [a, adag] = ladder_ops(trunc);
  const ModeMatrix h = std::sqrt(delta) * (F * adag + std::conj(F) * a);
  return unitary_step(h);
}

Eigen::VectorXcd exponential_vector(cplx w, const FockTruncation& trunc) {
  Eigen::VectorXcd e(trunc.d);
  cplx term = 1.0;
  for (int m = 0; m < trunc.d; ++m) {
    e(m) = term;
    term *= w / std::sqrt(static_cast<double>(m + 1));
  }
  return e;
}

}  // namespace qwn
