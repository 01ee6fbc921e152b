#include "nodoid/numerics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nodoid {

double elliptic_K_complement(double kprime) {
  if (!(kprime > 0.0) || !(kprime <= 1.0))
    throw std::domain_error("elliptic_K_complement: k' must lie in (0, 1]");
  double a = 1.0;
  double b = kprime;
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return M_PI / (2.0 * a);
}

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] and the embedded 7-point Gauss
// weights (positive-half tables, symmetric extension).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  double fk = 0.0;
  double fg = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = r * kKronrodNodes[i];
    const double f1 = f(c - x);
    const double f2 = (i == 7) ? 0.0 : f(c + x);
    const double fsum = (i == 7) ? f1 : f1 + f2;
    fk += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) fg += kGaussWeights[i / 2] * fsum;
  }
  fk *= r;
  fg *= r;
  return {fk, std::abs(fk - fg)};
}

void integrate_recurse(const std::function<double(double)>& f, double a,
                       double b, double tol, int depth, QuadratureResult& acc) {
  const PanelResult p = gk15(f, a, b);
  acc.evaluations += 15;
  if (p.error <= tol || depth <= 0) {
    acc.value += p.kronrod;
    acc.error += p.error;
    if (depth <= 0 && p.error > tol) {
      std::ostringstream msg;
      msg << "integrate_adaptive: recursion depth exhausted, local error "
          << p.error << " > " << tol;
      throw std::runtime_error(msg.str());
    }
    return;
  }
  const double c = 0.5 * (a + b);
  integrate_recurse(f, a, c, 0.5 * tol, depth - 1, acc);
  integrate_recurse(f, c, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  QuadratureResult acc{0.0, 0.0, 0};
  integrate_recurse(f, a, b, abs_tol, max_depth, acc);
  return acc;
}

RootResult brent_root(const std::function<double(double)>& f, double a,
                      double b, double x_tol, double f_tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if (fa * fb > 0.0)
    throw std::invalid_argument("brent_root: no sign change in bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= f_tol)
      return {b, fb, iter};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic / secant step
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw std::runtime_error("brent_root: max iterations reached");
}

double quintic_value(double x0, double x1, double y0, double y1, double d0,
                     double d1, double a0, double a1, double x) {
  const double w = x1 - x0;
  const double u = (x - x0) / w;
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double u4 = u3 * u;
  const double u5 = u4 * u;
  const double h0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
  const double h1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
  const double h2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
  const double k0 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
  const double k1 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
  const double k2 = 0.5 * u3 - u4 + 0.5 * u5;
  return y0 * h0 + w * d0 * h1 + w * w * a0 * h2 + y1 * k0 + w * d1 * k1 +
         w * w * a1 * k2;
}

}  // namespace nodoid
