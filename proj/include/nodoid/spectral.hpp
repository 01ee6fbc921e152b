#ifndef NODOID_SPECTRAL_HPP
#define NODOID_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "nodoid/delaunay.hpp"

namespace nodoid {

/// Folds an arbitrary quasiperiodicity phase into [0, pi] using
/// 2*pi-periodicity and the symmetry lambda_k(-alpha) = lambda_k(alpha).
/// The wrap targets (-pi, pi], so phases congruent to pi fold to pi exactly.
double fold_phase(double alpha);

// Reduced Hill operator -d^2/dt^2 - q(t) + s_tau^2 j^2 on [-pi, pi] with
// alpha-quasiperiodic boundary data, where
//   q(t) = s_tau^2 tau^2 cosh(2 sigma(s_tau t))
// is even, real and 2*pi-periodic. Immutable once built.
struct QuasiPeriodicOperator {
  double tau = 0.0;
  double s_tau = 0.0;
  int j = 0;
  double alpha = 0.0;   // folded into [0, pi]
  double offset = 0.0;  // s_tau^2 j^2
  std::vector<double> potential_coeffs;  // qhat_m, m = 0..M; qhat_{-m} = qhat_m

  /// Potential evaluated from its Fourier series.
  double q(double t) const;
};

/// Fourier cosine coefficients of q by trapezoidal quadrature on the
/// profile's periodic grid (spectrally accurate for this analytic
/// potential). Requires samples_per_period >= 2 * n_coeffs; throws if the
/// coefficient tail has not decayed below 1e-12.
QuasiPeriodicOperator build_operator(const ProfileSolution& profile, int j,
                                     double alpha, int n_coeffs);

// Lowest eigenpairs of a QuasiPeriodicOperator in the quasiperiodic Fourier
// basis e^{i (n + alpha/2pi) t}. In this basis the operator is the real
// symmetric matrix with diagonal (n + alpha/2pi)^2 + offset - qhat_0 and
// off-diagonal entries -qhat_{|n-m|}, so the coefficient vectors are real.
struct EigenDecomposition {
  QuasiPeriodicOperator op;
  int n_modes = 0;  // basis index n runs over -n_modes..n_modes
  std::vector<double> eigenvalues;                // ascending, offset included
  std::vector<std::vector<double>> eigenvectors;  // c_n per eigenvalue

  /// u_k(t) = sum_n c_n e^{i (n + alpha/2pi) t}; unit L^2([-pi,pi]) norm.
  std::complex<double> eigenfunction(int k, double t) const;
};

/// Single Galerkin solve at fixed basis half-width n_modes (matrix dimension
/// 2 n_modes + 1). Requires n_modes >= 2 k_max + 8.
EigenDecomposition eigensolve_galerkin(const QuasiPeriodicOperator& op,
                                       int n_modes, int k_max);

/// Doubles n_modes starting from `start` until all requested eigenvalues
/// move by less than `tol`, capped at `cap` (matrix dimension <= 513 by
/// default). Throws on non-convergence.
EigenDecomposition eigensolve_checked(const QuasiPeriodicOperator& op,
                                      int k_max, double tol = 1e-9,
                                      int start = 64, int cap = 256);

/// Floquet discriminant: trace of the transfer matrix M(lambda) of
/// -u'' - q u = (lambda - offset) u over one period. det M = 1; the
/// alpha-quasiperiodic eigenvalues solve tr M(lambda) = 2 cos(alpha).
double monodromy_trace(const QuasiPeriodicOperator& op, double lambda,
                       int steps = 8192);

/// Trace and its lambda-derivative (variational system integrated
/// alongside), used to locate tangential discriminant roots.
std::pair<double, double> monodromy_trace_d(const QuasiPeriodicOperator& op,
                                            double lambda, int steps = 8192);

/// All eigenvalues in [lo, hi] from the discriminant, seeded by the
/// Galerkin spectrum: simple roots by bracketed Brent on
/// tr M - 2 cos(alpha), degenerate pairs (tangential roots, which occur
/// exactly at alpha in {0, pi} when band edges touch) through roots of the
/// trace derivative. Returns eigenvalues with multiplicity, ascending.
/// Throws if the bracket contains no crossing.
std::vector<double> eigensolve_monodromy(const QuasiPeriodicOperator& op,
                                         double lo, double hi,
                                         double x_tol = 1e-10,
                                         int steps = 8192);

/// First `count` eigenvalues (with multiplicity) from the monodromy route.
std::vector<double> monodromy_eigenvalues(const QuasiPeriodicOperator& op,
                                          int count, int steps = 8192);

/// Band function lambda_k(tau, alpha) for the j = 0 operator.
double band_function(const ProfileSolution& profile, int k, double alpha);

// Band intervals B_k(tau) under the parity rule
//   B_{2k}   = [lambda_{2k}(0),    lambda_{2k}(pi)]
//   B_{2k+1} = [lambda_{2k+1}(pi), lambda_{2k+1}(0)]
// together with the sampled band functions on alpha_grid.
struct BandTable {
  double tau = 0.0;
  std::vector<double> alpha_grid;
  std::vector<std::array<double, 2>> bands;
  std::vector<std::vector<double>> lambda;  // lambda[k][grid index]
};

/// Requires k_max >= 3 and an alpha grid containing 0 and pi. A violation
/// of the eigenvalue interlacing chain is reported as a discretization
/// failure (the interlacing itself is a theorem).
BandTable band_table(const ProfileSolution& profile, int k_max,
                     std::vector<double> alpha_grid);

enum class JacobiField { Axial, Transverse };

/// Sup-norm of the operator applied to a geometric Jacobi field through the
/// Galerkin discretization; vanishes to discretization order. Axial is
/// d_s sigma with j = 0; Transverse is sinh(sigma) (tau < 0) or cosh(sigma)
/// (tau > 0) with j = 1. Both are exact null fields.
double jacobi_field_residual(const ProfileSolution& profile, JacobiField field,
                             int n_modes = 64);

/// Closed-form band functions of the tau -> -inf limit operator
/// -d^2/dt^2 - 1: with mu = alpha/(2*pi),
///   lambda_{2m}(alpha)   = (m + mu)^2 - 1
///   lambda_{2m+1}(alpha) = (m + 1 - mu)^2 - 1
/// giving B_0 = [-1, -3/4], B_1 = [-3/4, 0], B_2 = [0, 5/4], ...
double limit_band(int k, double alpha);

/// Index (1 or 2) of the eigenvalue at alpha = 0 where the axial null field
/// d_s sigma sits for tau > 0: reports the numerically observed position.
int axial_zero_position(const ProfileSolution& profile);

}  // namespace nodoid

#endif
