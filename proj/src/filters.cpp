#include "bebound/filters.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "bebound/errors.hpp"
#include "bebound/quadrature.hpp"

namespace bebound {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(y) / y
double sinc(double y) {
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
  }
  return std::sin(y) / y;
}

double prawitz_value_p(double u, double p) {
  const double a = std::abs(u);
  if (a == 0.0) return 0.0;
  return std::pow(a, p) * std::abs(n2_hat_eval(a));
}

struct Bracketed {
  double u;
  double value;
};

// Golden-section maximization of f on [lo, hi].
template <class F>
Bracketed golden_max(F f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double u = 0.5 * (a + b);
  return {u, f(u)};
}

// Grid scan on [lo, hi] followed by golden refinement around the best node.
template <class F>
Bracketed scan_max(F f, double lo, double hi, int points) {
  const double h = (hi - lo) / points;
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i <= points; ++i) {
    const double v = f(lo + h * i);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  const double a = std::max(lo, lo + h * (best - 1));
  const double b = std::min(hi, lo + h * (best + 1));
  Bracketed r = golden_max(f, a, b);
  if (r.value < best_v) r = {lo + h * best, best_v};
  return r;
}

void check_p(double p) {
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  if (p > 2.0) throw DomainError("sup of |u|^p |N2hat(u)| diverges for p > 2 with the Prawitz filter");
}

}  // namespace

double pi_x_cot_pi_x(double x) {
  const double y = kPi * x;
  if (std::abs(x) < 0.05) {
    // y cot y = 1 - y^2/3 - y^4/45 - 2y^6/945 - y^8/4725 - 2y^10/93555 - 1382y^12/638512875
    const double y2 = y * y;
    constexpr double c[] = {-1.0 / 3.0,      -1.0 / 45.0,    -2.0 / 945.0,
                            -1.0 / 4725.0,   -2.0 / 93555.0, -1382.0 / 638512875.0};
    double acc = 0.0;
    for (int i = 5; i >= 0; --i) acc = acc * y2 + c[i];
    return 1.0 + y2 * acc;
  }
  return y * std::cos(y) / std::sin(y);
}

std::complex<double> prawitz_eval(double t) {
  const double a = std::abs(t);
  if (!(a < 1.0)) return {0.0, 0.0};
  // Near |t| = 1 use (1-a) pi a cot(pi a) = -a pi s cot(pi s), s = 1 - a.
  const double re = (a <= 0.5) ? (1.0 - a) * pi_x_cot_pi_x(a) + a : a * (1.0 - pi_x_cot_pi_x(1.0 - a));
  const double im = -(1.0 - a) * kPi * t;
  return {re, im};
}

double n2_hat_eval(double u) {
  const double s = sinc(0.5 * u);
  return -kPi * s * s;
}

const SmoothingFilter& prawitz_filter() {
  static const SmoothingFilter filter{"prawitz", prawitz_eval, 1.0, 1.0, n2_hat_eval};
  return filter;
}

FilterConstant c2p_constant(double p) {
  check_p(p);
  if (p == 2.0) {
    // u^2 |N2hat(u)| = 4 pi sin^2(u/2), maximal at odd multiples of pi.
    return {2.0, 4.0 * kPi, kPi, false};
  }
  const Bracketed best = scan_max([p](double u) { return prawitz_value_p(u, p); }, 0.0, 200.0, 100000);
  return {p, best.value, best.u, false};
}

FilterConstant c2p_constant(const SmoothingFilter& filter, double p) {
  if (filter.id == "prawitz") return c2p_constant(p);
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  if (!filter.n2_hat) throw DomainError("filter '" + filter.id + "' provides no N2 transform");
  const auto& nh = filter.n2_hat;
  const Bracketed best =
      scan_max([p, &nh](double u) { return std::pow(u, p) * std::abs(nh(u)); }, 0.0, 200.0, 100000);
  return {p, best.value, best.u, false};
}

double refined_sup(double p, double threshold) {
  check_p(p);
  if (p == 2.0) return 4.0 * kPi;
  const FilterConstant global = c2p_constant(p);
  if (threshold <= global.argmax_u) return global.value;
  // The envelope 4 pi u^(p-2) decreases and sin^2(u/2) reaches 1 within
  // every 2 pi window, so the sup over u >= threshold lies in one window.
  const auto f = [p](double u) { return prawitz_value_p(u, p); };
  const Bracketed best = scan_max(f, threshold, threshold + 2.0 * kPi, 20000);
  return std::max(best.value, f(threshold));
}

double kernel_eval(const SmoothingFilter& filter, double x, double tol) {
  const double r = filter.support_radius;
  quad::Options opt;
  opt.abs_tol = tol;
  opt.initial_panel_width = std::min(kPi / (4.0 * (std::abs(x) + 1.0)), r / 16.0);
  const auto integrand = [&filter, x](double t) { return std::polar(1.0, -t * x) * filter(t); };
  const auto neg = quad::integrate(integrand, -r, 0.0, opt);
  const auto pos = quad::integrate(integrand, 0.0, r, opt);
  if (!neg.converged || !pos.converged) throw NumericError("kernel quadrature did not reach tolerance");
  return (neg.value + pos.value).real() / (2.0 * kPi);
}

double kernel_residual(const SmoothingFilter& filter, double x, double tol) {
  if (!(std::abs(x) >= 1.0)) throw DomainError("kernel residual needs |x| >= 1");
  return x * x * kernel_eval(filter, x, tol) - std::sin(x);
}

}  // namespace bebound
