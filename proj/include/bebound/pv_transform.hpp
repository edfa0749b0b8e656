#pragma once

#include <complex>
#include <functional>

#include "bebound/filters.hpp"
#include "bebound/quadrature.hpp"

namespace bebound {

/// Si(x) = int_0^x sin(u)/u du. Power series for |x| < 2, the continued
/// fraction for E1(ix) beyond.
double sine_integral(double x);

struct GOptions {
  double tol = 1e-9;
  /// Bound on the frequencies carried by the integrand itself (e.g. max |X|
  /// for a c.f. of a bounded law); narrows the starting panels.
  double frequency_hint = 0.0;
  int max_subdivisions = 50000;
};

/// G(f)(x) = (i / 2 pi) pv int exp(-itx) f(t) dt / t for f vanishing
/// outside [-T, T].
///
/// The constant kappa = f(0) is split off and handled exactly through
/// kappa Si(T x) / pi; the remainder has a removable singularity and is
/// integrated over (0, T] after folding t and -t together. For Hermitian f
/// (f(-t) = conj f(t)) the result is real; the imaginary part that remains
/// is reported as `imag_residual`. Throws NumericError when the error
/// estimate exceeds `tol` or the imaginary residual exceeds tol + error.
QuadratureResult g_transform(const std::function<std::complex<double>(double)>& f, double T, double x,
                             const GOptions& opt = {});

/// Which filter-derived weight multiplies h(t) inside the transform.
enum class FilterPart {
  full,       // M(t/T)
  reflected,  // M(-t/T)
  real_part,  // M1(t/T) = Re M(t/T)
  i_imag,     // i M2(t/T), Hermitian whenever h is
};

/// G(w(t) h(t))(x) with w the selected filter part.
QuadratureResult g_transform(const SmoothingFilter& filter, FilterPart part,
                             const std::function<std::complex<double>(double)>& h, double T, double x,
                             const GOptions& opt = {});

}  // namespace bebound
