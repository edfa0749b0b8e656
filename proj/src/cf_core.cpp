#include "bebound/cf_core.hpp"

#include <cmath>
#include <numbers>

#include "bebound/errors.hpp"
#include "bebound/oracle.hpp"
#include "bebound/quadrature.hpp"

namespace bebound {

namespace {

constexpr cplx kI{0.0, 1.0};

// (-i)^k
cplx neg_i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

// i^k
cplx i_pow(int k) { return neg_i_pow(-k); }

cplx ipow(cplx base, int e) {
  cplx result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

MomentData moments_of(const DiscreteDist& d, int k_max) {
  MomentData m;
  for (int j = 0; j <= k_max; ++j) {
    m.raw.push_back(d.raw_moment(j));
    m.abs.push_back(d.abs_moment(j));
    m.neg.push_back(d.neg_part_moment(j));
  }
  return m;
}

// sum_j p_j (i x_j)^order exp(i x_j t)
cplx atom_sum_derivative(const DiscreteDist& d, int order, double t) {
  cplx s{0.0, 0.0};
  const cplx ik = i_pow(order);
  for (const Atom& a : d.atoms()) {
    s += a.p * std::pow(a.x, order) * std::polar(1.0, a.x * t);
  }
  return ik * s;
}

}  // namespace

CharFn::CharFn(std::string label, int k_max, DerivFn deriv, MomentData moments, NegRatioFn neg_ratio,
               double scale, double frequency_hint)
    : label_(std::move(label)),
      k_max_(k_max),
      deriv_(std::move(deriv)),
      moments_(std::move(moments)),
      neg_ratio_(std::move(neg_ratio)),
      scale_(scale),
      frequency_hint_(frequency_hint) {
  if (k_max_ < 0) throw DomainError("k_max must be nonnegative");
  if (!deriv_) throw DomainError("characteristic function needs an evaluator");
}

cplx CharFn::derivative(int order, double t) const {
  if (order < 0 || order > k_max_) {
    throw DomainError("derivative order " + std::to_string(order) + " exceeds k_max " + std::to_string(k_max_) +
                      " for " + label_);
  }
  return deriv_(order, t);
}

double CharFn::neg_part_ratio(double k, double p, double x) const {
  if (!neg_ratio_) throw DomainError("no lower-tail functional available for " + label_);
  return neg_ratio_(k, p, x);
}

CharFn discrete_cf(const DiscreteDist& dist, std::string label, int k_max) {
  auto law = std::make_shared<const DiscreteDist>(dist);
  const double sd = std::sqrt(dist.raw_moment(2));
  const double scale = sd > 0.0 ? sd : std::max(dist.max_abs(), 1e-300);
  return CharFn(
      std::move(label), k_max, [law](int order, double t) { return atom_sum_derivative(*law, order, t); },
      moments_of(dist, k_max), [law](double k, double p, double x) { return law->neg_part_ratio(k, p, x); },
      dist.max_abs() > 0.0 ? scale : 1.0, dist.max_abs());
}

double normal_neg_part_ratio(double k, double p, double x, double tol) {
  quad::Options opt;
  opt.abs_tol = tol;
  opt.initial_panel_width = 1.0;
  const auto r = quad::integrate_real(
      [k, p, x](double z) { return std::pow(z, k) / std::pow(z + x, p) * normal_pdf(z); }, 0.0, 40.0, opt);
  if (!r.converged) throw NumericError("normal lower-tail quadrature did not converge");
  return r.value;
}

CharFn normal_cf(int k_max) {
  MomentData m;
  for (int j = 0; j <= k_max; ++j) {
    const double abs_m = std::pow(2.0, 0.5 * j) * std::tgamma(0.5 * (j + 1)) / std::sqrt(std::numbers::pi);
    m.abs.push_back(abs_m);
    m.raw.push_back(j % 2 == 0 ? abs_m : 0.0);
    m.neg.push_back(0.5 * abs_m);
  }
  auto deriv = [](int order, double t) {
    // f^(j)(t) = (-1)^j He_j(t) exp(-t^2/2)
    double prev = 1.0;
    double cur = t;
    double he = 1.0;
    if (order == 1) {
      he = t;
    } else if (order > 1) {
      for (int j = 1; j < order; ++j) {
        const double next = t * cur - j * prev;
        prev = cur;
        cur = next;
      }
      he = cur;
    }
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return cplx(sign * he * std::exp(-0.5 * t * t), 0.0);
  };
  return CharFn("normal", k_max, deriv, std::move(m),
                [](double k, double p, double x) { return normal_neg_part_ratio(k, p, x); }, 1.0, 0.0);
}

DiscreteDist standardized_iid_sum_law(const DiscreteDist& base, int n) {
  if (n < 1) throw DomainError("number of summands n must be positive");
  const DiscreteDist std_base = base.standardized();
  return convolve_iid(std_base, n).affine(0.0, 1.0 / std::sqrt(static_cast<double>(n)));
}

CharFn make_standardized_iid_sum(const DiscreteDist& base, int n, std::string label) {
  if (n < 1) throw DomainError("number of summands n must be positive");
  auto summand = std::make_shared<const DiscreteDist>(base.standardized());
  auto law = std::make_shared<const DiscreteDist>(standardized_iid_sum_law(base, n));
  const double root_n = std::sqrt(static_cast<double>(n));

  auto deriv = [summand, n, root_n](int order, double t) -> cplx {
    const double s = t / root_n;
    const cplx phi = atom_sum_derivative(*summand, 0, s);
    if (order == 0) return ipow(phi, n);
    const cplx d1 = atom_sum_derivative(*summand, 1, s);
    const double nn = n;
    if (order == 1) return root_n * ipow(phi, n - 1) * d1;
    const cplx d2 = atom_sum_derivative(*summand, 2, s);
    if (order == 2) {
      cplx v = ipow(phi, n - 1) * d2;
      if (n >= 2) v += (nn - 1.0) * ipow(phi, n - 2) * d1 * d1;
      return v;
    }
    const cplx d3 = atom_sum_derivative(*summand, 3, s);
    cplx v = ipow(phi, n - 1) * d3;
    if (n >= 2) v += 3.0 * (nn - 1.0) * ipow(phi, n - 2) * d1 * d2;
    if (n >= 3) v += (nn - 1.0) * (nn - 2.0) * ipow(phi, n - 3) * d1 * d1 * d1;
    return v / root_n;
  };

  constexpr int k_max = 3;
  MomentData m = moments_of(*law, k_max);
  m.beta3 = summand->abs_moment(3.0);
  m.n = n;
  return CharFn(std::move(label), k_max, deriv, std::move(m),
                [law](double k, double p, double x) { return law->neg_part_ratio(k, p, x); }, 1.0, law->max_abs());
}

cplx dilation_integral(int k, cplx z) {
  if (k < 0) throw DomainError("dilation order must be nonnegative");
  if (k == 0) return {1.0, 0.0};
  if (std::abs(z) < 2.0) {
    // sum_m k z^m / (m! (m + k))
    cplx term{1.0, 0.0};
    cplx sum{0.0, 0.0};
    for (int m = 0; m < 60; ++m) {
      if (m > 0) term *= z / static_cast<double>(m);
      const cplx add = term * (static_cast<double>(k) / (m + k));
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const cplx ez = std::exp(z);
  cplx prev{1.0, 0.0};
  for (int j = 1; j <= k; ++j) prev = (static_cast<double>(j) / z) * (ez - prev);
  return prev;
}

cplx moment_v(const CharFn& cf, int k, double t) { return neg_i_pow(k) * cf.derivative(k, t); }

cplx moment_w(const CharFn& cf, int k, double t) {
  if (k < 1) throw DomainError("moment order k must be positive");
  if (k > cf.k_max()) throw DomainError("moment order k exceeds the available derivatives");
  if (t == 0.0) return neg_i_pow(k) * cf.derivative(k, 0.0);
  if (std::abs(t) * cf.scale() >= 1.0) {
    // int_0^t s^m f^(m+1)(s) ds = t^m f^(m)(t) - m int_0^t s^(m-1) f^(m)(s) ds
    cplx acc = cf.derivative(0, t) - cf.derivative(0, 0.0);
    double tm = 1.0;
    for (int m = 1; m < k; ++m) {
      tm *= t;
      acc = tm * cf.derivative(m, t) - static_cast<double>(m) * acc;
    }
    return neg_i_pow(k) * (static_cast<double>(k) * acc / std::pow(t, k));
  }
  quad::Options opt;
  opt.abs_tol = 1e-15;
  opt.max_subdivisions = 200;
  const auto r = quad::integrate(
      [&cf, k, t](double a) { return static_cast<double>(k) * std::pow(a, k - 1) * cf.derivative(k, a * t); }, 0.0,
      1.0, opt);
  return neg_i_pow(k) * r.value;
}

cplx w_minus_v(const CharFn& cf, int k, double t, double tol) {
  if (t == 0.0) return {0.0, 0.0};
  if (std::abs(t) * cf.scale() >= 1.0) return moment_w(cf, k, t) - moment_v(cf, k, t);
  quad::Options opt;
  opt.abs_tol = tol;
  opt.max_subdivisions = 2000;
  const cplx fk_t = cf.derivative(k, t);
  const auto r = quad::integrate(
      [&cf, k, t, fk_t](double a) {
        return static_cast<double>(k) * std::pow(a, k - 1) * (cf.derivative(k, a * t) - fk_t);
      },
      0.0, 1.0, opt);
  if (!r.converged) throw NumericError("W - V dilation quadrature did not converge");
  return neg_i_pow(k) * r.value;
}

cplx abs_w_plus_v(const DiscreteDist& dist, int k, double t) {
  if (k < 1) throw DomainError("moment order k must be positive");
  cplx s{0.0, 0.0};
  for (const Atom& a : dist.atoms()) {
    if (a.x == 0.0) continue;
    s += a.p * std::pow(std::abs(a.x), k) * (dilation_integral(k, kI * (a.x * t)) + std::polar(1.0, a.x * t));
  }
  return s;
}

cplx cf_surrogate_plus(const CharFn& cf, int k, double alpha, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  return neg_i_pow(k) * (cf.derivative(k, alpha * t) + cf.derivative(k, t));
}

SignedPowerFunctionals::SignedPowerFunctionals(DiscreteDist dist, int k) : dist_(std::move(dist)), k_(k) {
  if (k < 1) throw DomainError("power k must be a positive integer");
}

double SignedPowerFunctionals::L(double x) const {
  if (x > 0.0) return std::pow(x, k_) * dist_.tail_gt(x);
  if (x < 0.0) return -std::pow(x, k_) * dist_.cdf_left(x);
  return 0.0;
}

double SignedPowerFunctionals::F(double x) const {
  double s = 0.0;
  for (const Atom& a : dist_.atoms()) {
    if (a.x <= x) s += a.p * std::pow(a.x, k_);
  }
  return s;
}

double SignedPowerFunctionals::G(double x) const {
  const double cap = std::max(x, 0.0);
  double s = 0.0;
  for (const Atom& a : dist_.atoms()) s += a.p * std::pow(std::min(cap, a.x), k_);
  return s;
}

cplx SignedPowerFunctionals::F_hat(double t) const {
  cplx s{0.0, 0.0};
  for (const Atom& a : dist_.atoms()) s += a.p * std::pow(a.x, k_) * std::polar(1.0, t * a.x);
  return s;
}

cplx SignedPowerFunctionals::G_hat(double t) const {
  cplx s{0.0, 0.0};
  for (const Atom& a : dist_.atoms()) {
    if (a.x == 0.0) continue;
    s += a.p * std::pow(a.x, k_) * dilation_integral(k_, kI * (t * a.x));
  }
  return s;
}

SignedPowerFunctionals signed_power_eval(const DiscreteDist& dist, int k) { return SignedPowerFunctionals(dist, k); }

}  // namespace bebound
