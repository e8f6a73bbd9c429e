#ifndef QWN_FOCK_ORACLE_HPP
#define QWN_FOCK_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qwn {

using cplx = std::complex<double>;
using ModeMatrix = Eigen::MatrixXcd;

// Dimension of the truncated number basis |0> .. |d-1>.
struct FockTruncation {
  explicit FockTruncation(int dim);
  int d;
};

// Discrete realization of the noise: N independent modes of step delta,
// b_t ~ b_k / sqrt(delta), delta(0) -> 1/delta.
struct NoiseLattice {
  double delta;
  int modes;
  FockTruncation trunc;
};

struct LadderPair {
  ModeMatrix a;
  ModeMatrix adag;
};

// Truncated ladder operators, a|n> = sqrt(n)|n-1>. The commutator
// [a, adag] equals I except for the (d-1, d-1) entry, which is -(d-1).
LadderPair ladder_ops(const FockTruncation& trunc);

// Per-step lattice generator of the quadratic model,
//   H = omega adag a + g (adag^2 + a^2) - kappa I.
// The -kappa addend is the counterterm -kappa/delta integrated over one step.
ModeMatrix quadratic_generator(double omega, double g, double kappa,
                               const FockTruncation& trunc);

// m lowest eigenvalues of omega adag a + g (adag^2 + a^2), ascending. The
// single-mode Bogoliubov identity predicts {kappa + Omega k, k >= 0}; the
// guard d >= 4m + 20 keeps truncation artifacts out of the lowest m.
std::vector<double> spectrum_check(double omega, double g,
                                   const FockTruncation& trunc, int m);

// U = exp(-i H) for Hermitian H, via eigendecomposition.
ModeMatrix unitary_step(const ModeMatrix& H);

// Per-mode step of the symmetrically regularized evolution: diagonal with
// entries S^n where S = (1 - i Omega/2)/(1 + i Omega/2).
ModeMatrix cayley_step(double Omega, const FockTruncation& trunc);

// Naive per-mode step exp(-i Omega adag a); differs from cayley_step at
// O(Omega^3) and exhibits the regularization dependence of the model.
ModeMatrix exponential_step(double Omega, const FockTruncation& trunc);

// Scalar multiplier M = <1|U|1> / <0|U|0> of a number-conserving step.
cplx gauge_multiplier(const ModeMatrix& U);

// Factorized correlator exp(sum_k f1_k f2_k delta M_k). Exact value of
//   <0| exp(sum f1_k sqrt(delta) a_k) (prod U_k) exp(sum f2_k sqrt(delta) adag_k) |0>
// when each U_k acts diagonally as M_k^n on mode k.
cplx correlator_oracle(const NoiseLattice& lattice,
                       const std::vector<cplx>& multipliers,
                       const std::vector<cplx>& f1,
                       const std::vector<cplx>& f2);

// Same matrix element with no factorized shortcut: the product over modes of
// <e(conj(f1_k) sqrt(delta))| U_k |e(f2_k sqrt(delta))> with truncated
// exponential vectors. Requires the truncation tail |w|^(2d)/d! <= 1e-12.
cplx brute_force_correlator(const NoiseLattice& lattice,
                            const std::vector<ModeMatrix>& steps,
                            const std::vector<cplx>& f1,
                            const std::vector<cplx>& f2);

// Per-step unitary of the linear model,
//   W = exp(-i sqrt(delta) (F adag + conj(F) a)).
// Vacuum amplitude <0|W|0> = exp(-delta |F|^2 / 2) up to truncation.
ModeMatrix linear_step(cplx F, double delta, const FockTruncation& trunc);

// Truncated exponential vector |e(w)> = sum_{n<d} w^n / sqrt(n!) |n>.
Eigen::VectorXcd exponential_vector(cplx w, const FockTruncation& trunc);

inline cplx vacuum_amplitude(const ModeMatrix& U) { return U(0, 0); }

}  // namespace qwn

#endif  // QWN_FOCK_ORACLE_HPP
