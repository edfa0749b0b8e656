#pragma once

#include <complex>
#include <functional>
#include <string>

namespace bebound {

/// A bounding smoothing filter M supported on [-1, 1], with Re M even and
/// Im M odd, and a split-off constant kappa such that (M(t) - kappa) / t is
/// integrable near 0.
struct SmoothingFilter {
  std::string id;
  std::function<std::complex<double>(double)> eval;
  double kappa = 1.0;
  double support_radius = 1.0;
  /// Fourier transform of Im M(t) / t when known in closed form.
  std::function<double(double)> n2_hat;

  std::complex<double> operator()(double t) const { return eval(t); }
  double real_part(double t) const { return eval(t).real(); }
  double imag_part(double t) const { return eval(t).imag(); }
};

/// pi x cot(pi x) for |x| <= 1/2, by its Taylor series near 0.
double pi_x_cot_pi_x(double x);

/// M(t) = [(1-|t|) pi t cot(pi t) + |t| - i (1-|t|) pi t] 1{|t| < 1},
/// continuous at t = 0 and t = +-1.
std::complex<double> prawitz_eval(double t);

/// The Prawitz filter with kappa = 1 and its closed-form N2 transform.
const SmoothingFilter& prawitz_filter();

/// Fourier transform of N2(t) = Im M(t) / t = -pi (1 - |t|)_+ for the
/// Prawitz filter: -pi (sin(u/2) / (u/2))^2.
double n2_hat_eval(double u);

/// sup over u of |u|^p |N2hat(u)|.
struct FilterConstant {
  double p = 0.0;
  double value = 0.0;
  double argmax_u = 0.0;
  bool attained_in_limit = false;
};

/// Prawitz filter only, 0 < p <= 2; the sup diverges for p > 2.
FilterConstant c2p_constant(double p);
/// Any filter that provides `n2_hat`: grid scan on (0, 200] plus
/// golden-section refinement. Assumes the sup is attained in that window.
FilterConstant c2p_constant(const SmoothingFilter& filter, double p);

/// sup of u^p |N2hat(u)| over u >= threshold (Prawitz filter).
double refined_sup(double p, double threshold);

/// Inverse Fourier transform (1/2pi) int exp(-itx) M(t) dt by quadrature.
double kernel_eval(const SmoothingFilter& filter, double x, double tol = 1e-13);
/// x^2 Mcheck(x) - sin(x); tends to zero as |x| grows for the Prawitz filter.
/// Requires |x| >= 1.
double kernel_residual(const SmoothingFilter& filter, double x, double tol = 1e-13);

}  // namespace bebound
