#ifndef NODOID_DELAUNAY_HPP
#define NODOID_DELAUNAY_HPP

#include <array>
#include <vector>

namespace nodoid {

// The Delaunay family is parametrized by tau in (-inf, 1] \ {0}:
// unduloids for tau in (0, 1), the cylinder of radius 1/2 at tau = 1,
// and (immersed) nodoids for tau < 0.
enum class DelaunayKind { Unduloid, Nodoid, Cylinder };

struct DelaunayParameter {
  double tau;
  DelaunayKind kind;
};

/// Validates tau and classifies it. Rejects tau = 0 (chain of tangent
/// spheres, singular limit) and tau > 1 with std::domain_error.
DelaunayParameter classify(double tau);

/// sigma(0): the negative root of tau^2 cosh^2 x = 1 (tau > 0) or
/// tau^2 sinh^2 x = 1 (tau < 0). Zero for the cylinder tau = 1.
double initial_sigma(double tau);

enum class PeriodMethod { Quadrature, Elliptic };

struct PeriodValue {
  double tau;
  double s_tau;  // the profile has period 2*pi*s_tau in arclength s
  PeriodMethod method;
};

/// Period function by two independent routes.
///
/// Quadrature integrates the period integral directly: for tau < 0 the
/// integrand 1/sqrt(cos^2 x + tau^2) over [0, pi/2] is regular; for
/// tau > 0 the endpoint square-root singularity is removed first by the
/// substitution sin x = sin(b) sin(phi), b = arccos(tau), which turns the
/// integral into int_0^{pi/2} dphi / sqrt(1 - (1 - tau^2) sin^2 phi).
///
/// Elliptic evaluates the closed forms
///   s_tau = (2/pi) K(k) / sqrt(1 + tau^2),  k^2 = 1/(1 + tau^2)   (tau < 0)
///   s_tau = (2/pi) K(sqrt(1 - tau^2))                             (tau > 0)
/// with K computed by the arithmetic-geometric mean.
PeriodValue compute_period(double tau, PeriodMethod method);

/// Shorthand for the elliptic (closed-form) route.
double period_s(double tau);

struct ProfileSample {
  double s;
  double sigma;
  double dsigma;
  double kappa;
};

// Sampled solution of the profile ODE over [0, periods * 2*pi*s_tau],
// uniform grid, endpoint included. Immutable after construction; safe to
// share between threads.
struct ProfileSolution {
  double tau = 0.0;
  double s_tau = 0.0;
  int samples_per_period = 0;
  int periods = 0;
  double energy_error = 0.0;  // max conservation-law defect over the grid
  double ode_error = 0.0;     // Richardson estimate of the integration error
  std::vector<ProfileSample> grid;

  double period() const;                 // 2*pi*s_tau
  double s_max() const;

  // C2 evaluation anywhere in [0, s_max]: quintic Hermite from the stored
  // values and slopes plus ODE-exact second derivatives at the nodes.
  double sigma(double s) const;
  double dsigma(double s) const;
  double kappa(double s) const;
};

/// Integrates sigma'' = -(tau^2/2) sinh(2 sigma), sigma(0) = initial_sigma,
/// sigma'(0) = 0 (the regularized second-order form, valid for both signs
/// of tau) together with kappa' = tau^2 e^sigma cosh sigma (tau > 0) or
/// kappa' = -tau^2 e^sigma sinh sigma (tau < 0). Classical RK4 on a fixed
/// grid; the substep count is calibrated once from a Richardson probe so
/// the result meets `tol` while the output stays deterministic. The period
/// comes from compute_period, never from event detection.
ProfileSolution solve_profile(double tau, int samples_per_period, int periods,
                              double tol = 1e-12);

/// gamma_tau(t) = tau * sigma(s_tau * t), tau < 0 only; 2*pi-periodic in t.
/// Converges uniformly to cos t as tau -> -inf.
double gamma(const ProfileSolution& profile, double t);
double gamma(double tau, double t);

struct SurfaceFrame {
  std::array<double, 3> position;
  std::array<double, 3> normal;
  double t;
  double theta;
};

/// Evaluates the isothermal parametrization
///   X(t, theta) = (1/2) (tau e^sigma cos theta, tau e^sigma sin theta, kappa)
/// at s = s_tau * t, together with the unit normal
///   tau < 0:  ( tau sinh(sigma) cos theta,  tau sinh(sigma) sin theta,  d_s sigma)
///   tau > 0:  ( tau cosh(sigma) cos theta,  tau cosh(sigma) sin theta, -d_s sigma)
/// Both are exactly unit length by the conservation law and orthogonal to
/// the coordinate tangents; with this orientation the surfaces have mean
/// curvature +1 under the convention that makes the unit sphere with
/// outward normal have H = +1.
SurfaceFrame surface_point(const ProfileSolution& profile, double t,
                           double theta);

}  // namespace nodoid

#endif
