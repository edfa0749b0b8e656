#pragma once

#include <complex>
#include <functional>

namespace bebound {

/// Outcome of a real-valued transform evaluation.
struct QuadratureResult {
  double value = 0.0;
  double imag_residual = 0.0;  // magnitude of the discarded imaginary part
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

namespace quad {

using ComplexIntegrand = std::function<std::complex<double>(double)>;
using RealIntegrand = std::function<double(double)>;

struct Options {
  double abs_tol = 1e-12;
  int max_subdivisions = 50000;
  // Width of the panels the interval is cut into before adaptive bisection.
  // Zero means a single starting panel.
  double initial_panel_width = 0.0;
};

struct ComplexResult {
  std::complex<double> value;
  double abs_error = 0.0;     // sum of |K15 - G7| over the final panels plus roundoff floor
  double abs_integral = 0.0;  // integral of |f| by the Kronrod rule
  int subdivisions = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b].
///
/// Panels are bisected largest-error first until the summed error estimate
/// drops below `abs_tol`. Final panel contributions are summed in ascending
/// order of their left endpoint with compensated summation, so the result
/// does not depend on the refinement history. Never throws; check
/// `converged`.
ComplexResult integrate(const ComplexIntegrand& f, double a, double b, const Options& opt);

struct RealResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

RealResult integrate_real(const RealIntegrand& f, double a, double b, const Options& opt);

/// Bare 15-point Kronrod and embedded 7-point Gauss rule on one panel.
struct PanelEstimate {
  std::complex<double> kronrod;
  std::complex<double> gauss;
  double abs_kronrod = 0.0;
};
PanelEstimate gauss_kronrod_15(const ComplexIntegrand& f, double a, double b);

}  // namespace quad
}  // namespace bebound
