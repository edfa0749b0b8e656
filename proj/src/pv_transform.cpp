#include "bebound/pv_transform.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bebound/errors.hpp"

namespace bebound {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

double si_series(double x) {
  // sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
  const double x2 = x * x;
  double term = x;  // x^(2k+1) / (2k+1)!
  double sum = x;
  for (int k = 1; k < 40; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double add = term / (2.0 * k + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Si for x >= 2 via E1(ix) = exp(-ix) / (1 + ix - 1/(3 + ix - 4/(5 + ix - ...))).
double si_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  cplx b{1.0, x};
  cplx c{1.0 / tiny, 0.0};
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  return 0.5 * kPi + h.imag();
}

}  // namespace

double sine_integral(double x) {
  if (std::isnan(x)) return x;
  const double a = std::abs(x);
  if (std::isinf(a)) return std::copysign(0.5 * kPi, x);
  const double v = (a < 2.0) ? si_series(a) : si_continued_fraction(a);
  return std::copysign(v, x);
}

QuadratureResult g_transform(const std::function<cplx(double)>& f, double T, double x, const GOptions& opt) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("transform cutoff T must be positive and finite");
  if (!std::isfinite(x)) throw DomainError("transform point x must be finite");

  const cplx kappa = f(0.0);
  // The folded remainder tends to 2 f'(0) at t = 0.
  const double step = 1e-6 * std::max(1.0, T);
  const cplx q0 = (f(step) - f(-step)) / step;
  const double t_small = 1e-9 * std::max(1.0, T);
  const auto folded = [&f, kappa, x, t_small, q0](double t) -> cplx {
    if (t < t_small) return q0;
    const cplx e = std::polar(1.0, -t * x);
    return (e * (f(t) - kappa) - std::conj(e) * (f(-t) - kappa)) / t;
  };

  quad::Options qo;
  qo.abs_tol = opt.tol * 2.0 * kPi;
  qo.max_subdivisions = opt.max_subdivisions;
  qo.initial_panel_width = std::min(kPi / (4.0 * (std::abs(x) + opt.frequency_hint + 1.0)), T / 16.0);
  const quad::ComplexResult r = quad::integrate(folded, 0.0, T, qo);

  const cplx g = cplx(0.0, 1.0) / (2.0 * kPi) * r.value + kappa * sine_integral(T * x) / kPi;
  QuadratureResult out;
  out.value = g.real();
  out.imag_residual = std::abs(g.imag());
  out.abs_error_estimate = r.abs_error / (2.0 * kPi) + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(kappa);
  out.subdivisions = r.subdivisions;
  if (!r.converged) {
    throw NumericError("principal-value transform did not converge: error estimate " +
                       std::to_string(out.abs_error_estimate) + " after " + std::to_string(r.subdivisions) +
                       " panels");
  }
  if (out.imag_residual > opt.tol + out.abs_error_estimate) {
    throw NumericError("principal-value transform has imaginary residual " + std::to_string(out.imag_residual) +
                       "; integrand is not Hermitian");
  }
  return out;
}

QuadratureResult g_transform(const SmoothingFilter& filter, FilterPart part, const std::function<cplx(double)>& h,
                             double T, double x, const GOptions& opt) {
  if (!(T > 0.0)) throw DomainError("transform cutoff T must be positive");
  const double inv_t = filter.support_radius / T;
  std::function<cplx(double)> weighted;
  switch (part) {
    case FilterPart::full:
      weighted = [&filter, &h, inv_t](double t) { return filter(t * inv_t) * h(t); };
      break;
    case FilterPart::reflected:
      weighted = [&filter, &h, inv_t](double t) { return filter(-t * inv_t) * h(t); };
      break;
    case FilterPart::real_part:
      weighted = [&filter, &h, inv_t](double t) { return filter.real_part(t * inv_t) * h(t); };
      break;
    case FilterPart::i_imag:
      weighted = [&filter, &h, inv_t](double t) { return cplx(0.0, filter.imag_part(t * inv_t)) * h(t); };
      break;
  }
  GOptions o = opt;
  return g_transform(weighted, T, x, o);
}

}  // namespace bebound
