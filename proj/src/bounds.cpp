#include "bebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "bebound/errors.hpp"
#include "bebound/oracle.hpp"
#include "bebound/pv_transform.hpp"

namespace bebound {

namespace {

constexpr double kPi = std::numbers::pi;

const SmoothingFilter& filter_of(const BoundOptions& opt) {
  return opt.filter != nullptr ? *opt.filter : prawitz_filter();
}

GOptions g_options(const BoundOptions& opt, double frequency_hint) {
  GOptions g;
  g.tol = opt.tol;
  g.frequency_hint = frequency_hint;
  return g;
}

void check_cutoff(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("cutoff T must be positive and finite");
}

using NegRatio = std::function<double(double, double, double)>;

FixCorrection fix_terms(const NegRatio& neg_ratio, int k, double p, double x, double T, const SmoothingFilter& filter) {
  FixCorrection out;
  out.coefficient = fix_coefficient(k, p, filter);
  const double tp = std::pow(T, p);
  out.exact_term = out.coefficient * neg_ratio(k, p, x) / tp;
  const double low_order = neg_ratio(k, p, 0.0);  // E|X_-|^(k-p)
  double m = low_order;
  if (x > 0.0) m = std::min(low_order, neg_ratio(k, 0.0, x) / std::pow(x, p));
  out.moment_min_term = out.coefficient * m / tp;
  return out;
}

void check_fix_args(int k, double p, double x, double T) {
  if (k < 1) throw DomainError("moment order k must be positive");
  if (!(p > 0.0 && p < k)) throw DomainError("exponent p must lie in (0, k)");
  if (!(x > 0.0)) throw DomainError("swap-error bound needs x > 0");
  check_cutoff(T);
}

}  // namespace

double cutoff_from_constant(double c_T, int n, double beta3) {
  if (!(c_T > 0.0)) throw DomainError("c_T must be positive");
  if (n < 1) throw DomainError("n must be positive");
  if (!(beta3 > 0.0)) throw DomainError("beta3 must be positive");
  return c_T * std::sqrt(static_cast<double>(n)) / beta3;
}

BoundReport cdf_bounds(const CharFn& cf, double total_mass, double x, double T, const BoundOptions& opt) {
  check_cutoff(T);
  if (!(total_mass >= 0.0)) throw DomainError("total mass of a scaled d.f. must be nonnegative");
  const SmoothingFilter& filter = filter_of(opt);
  const auto h = [&cf](double t) { return cf(t); };
  const GOptions g = g_options(opt, cf.frequency_hint());
  const QuadratureResult lo = g_transform(filter, FilterPart::reflected, h, T, x, g);
  const QuadratureResult hi = g_transform(filter, FilterPart::full, h, T, x, g);

  BoundReport r;
  r.kind = BoundKind::cdf_sandwich;
  r.x = x;
  r.T = T;
  r.lower = 0.5 * total_mass + lo.value - lo.abs_error_estimate;
  r.upper = 0.5 * total_mass + hi.value + hi.abs_error_estimate;
  r.quadrature_error = std::max(lo.abs_error_estimate, hi.abs_error_estimate);
  r.center = 0.5 * (r.lower + r.upper);
  r.radius = 0.5 * (r.upper - r.lower);
  r.params = {opt.p, opt.tol, filter.id, ""};
  return r;
}

QuadratureResult surrogate_radius_term(const CharFn& cf, int k, double x, double T, const BoundOptions& opt) {
  check_cutoff(T);
  if (k > cf.k_max()) throw DomainError("moment order k exceeds the derivatives available for " + cf.label());
  // i^-k int_0^1 k a^(k-1) [f^(k)(a t) + f^(k)(t)] da, the a-integral taken pointwise in t.
  const auto h = [&cf, k](double t) { return moment_w(cf, k, t) + moment_v(cf, k, t); };
  return g_transform(filter_of(opt), FilterPart::i_imag, h, T, x, g_options(opt, cf.frequency_hint()));
}

QuadratureResult exact_radius_term(const DiscreteDist& law, int k, double x, double T, const BoundOptions& opt) {
  check_cutoff(T);
  const auto h = [&law, k](double t) { return abs_w_plus_v(law, k, t); };
  return g_transform(filter_of(opt), FilterPart::i_imag, h, T, x, g_options(opt, law.max_abs()));
}

BoundReport tail_moment_bound(const CharFn& cf, int k, double x, double T, TailMode mode, const BoundOptions& opt,
                              const DiscreteDist* law) {
  check_cutoff(T);
  if (!(x >= 0.0)) throw DomainError("tail-moment bound needs x >= 0");
  if (k < 1) throw DomainError("moment order k must be positive");
  if (k > cf.k_max()) throw DomainError("moment order k exceeds the derivatives available for " + cf.label());
  if (mode == TailMode::exact_abs && law == nullptr) {
    throw DomainError("exact_abs mode needs the law of X (a finite distribution)");
  }
  const SmoothingFilter& filter = filter_of(opt);
  const double hint = law != nullptr ? law->max_abs() : cf.frequency_hint();
  const GOptions g = g_options(opt, hint);

  const auto wv = [&cf, k](double t) { return w_minus_v(cf, k, t); };
  const QuadratureResult center = g_transform(filter, FilterPart::real_part, wv, T, x, g);

  BoundReport r;
  r.kind = BoundKind::tail_moment;
  r.x = x;
  r.T = T;
  r.k = k;
  r.center = center.value;
  r.params = {opt.p, opt.tol, filter.id, mode == TailMode::exact_abs ? "exact_abs" : "surrogate"};

  if (mode == TailMode::exact_abs) {
    const QuadratureResult rad = exact_radius_term(*law, k, x, T, opt);
    double raw = rad.value;
    if (raw < 0.0) {
      if (raw < -(opt.tol + rad.abs_error_estimate)) {
        throw NumericError("exact-mode radius is negative beyond tolerance: " + std::to_string(raw));
      }
      raw = 0.0;
      r.radius_clamped = true;
    }
    r.quadrature_error = center.abs_error_estimate + rad.abs_error_estimate;
    r.radius = raw + r.quadrature_error;
  } else {
    const QuadratureResult surr = surrogate_radius_term(cf, k, x, T, opt);
    if (!(opt.p > 0.0 && opt.p < k)) throw DomainError("surrogate mode needs p in (0, k)");
    NegRatio neg;
    if (law != nullptr) {
      neg = [law](double kk, double pp, double xx) { return law->neg_part_ratio(kk, pp, xx); };
    } else if (cf.has_neg_part_ratio()) {
      neg = [&cf](double kk, double pp, double xx) { return cf.neg_part_ratio(kk, pp, xx); };
    } else {
      throw DomainError("surrogate mode needs the lower-tail functional of " + cf.label());
    }
    // fix_terms stays valid at x = 0: |X - 0| = |X_-| on {X_- != 0}.
    const FixCorrection fix = fix_terms(neg, k, opt.p, x, T, filter);
    r.correction = fix.exact_term;
    r.quadrature_error = center.abs_error_estimate + surr.abs_error_estimate;
    r.radius = std::abs(surr.value) + fix.exact_term + r.quadrature_error;
  }
  r.lower = r.center - r.radius;
  r.upper = r.center + r.radius;
  return r;
}

double fix_coefficient(int k, double p, const SmoothingFilter& filter) {
  if (!(p > 0.0 && p < k)) throw DomainError("exponent p must lie in (0, k)");
  const FilterConstant c = c2p_constant(filter, p);
  return c.value / kPi * (2.0 * k - p) / (k - p);
}

FixCorrection fix_correction(const DiscreteDist& dist, int k, double p, double x, double T,
                             const SmoothingFilter& filter) {
  check_fix_args(k, p, x, T);
  return fix_terms([&dist](double kk, double pp, double xx) { return dist.neg_part_ratio(kk, pp, xx); }, k, p, x,
                   T, filter);
}

FixCorrection fix_correction(const CharFn& cf, int k, double p, double x, double T, const SmoothingFilter& filter) {
  check_fix_args(k, p, x, T);
  return fix_terms([&cf](double kk, double pp, double xx) { return cf.neg_part_ratio(kk, pp, xx); }, k, p, x, T,
                   filter);
}

double psi(double x, double tol) {
  if (!(x > 0.0)) throw DomainError("psi needs x > 0");
  return x * x * normal_neg_part_ratio(3.0, 2.0, x, tol);
}

ERatBounds e_rat_bounds_for_law(const DiscreteDist& law, double r_lyapunov, double x) {
  if (!(x > 0.0)) throw DomainError("e_rat_bounds needs x > 0");
  const double x2 = x * x;
  ERatBounds b;
  b.exact = law.neg_part_ratio(3.0, 2.0, x);
  b.chain1 = std::min(law.neg_part_moment(1.0), law.neg_part_moment(3.0) / x2);
  b.chain2 = std::min(1.0, law.abs_moment(3.0) / x2);
  b.chain3 = std::min(1.0, (2.0 + r_lyapunov) / x2);
  b.normal_comparison_ub = (psi(x) + r_lyapunov) / x2;
  b.chain_holds = b.exact <= b.chain1 && b.chain1 <= b.chain2 && b.chain2 <= b.chain3;
  b.normal_comparison_holds = b.exact <= b.normal_comparison_ub;
  return b;
}

ERatBounds e_rat_bounds(const DiscreteDist& base, int n, double x) {
  const double beta3 = base.standardized().abs_moment(3.0);
  return e_rat_bounds_for_law(standardized_iid_sum_law(base, n), beta3 / std::sqrt(static_cast<double>(n)), x);
}

double rosenthal_ub(double beta3, int n) {
  if (!(beta3 >= 1.0)) throw DomainError("beta3 must be at least 1 for a unit-variance summand");
  if (n < 1) throw DomainError("n must be positive");
  return 2.0 + beta3 / std::sqrt(static_cast<double>(n));
}

double normal_abs_third_moment() { return 2.0 * std::sqrt(2.0 / kPi); }

NagaevResult small_n_nagaev(double beta3, int n, double x, std::optional<double> abs_third_moment) {
  if (!(beta3 >= 1.0)) throw DomainError("beta3 must be at least 1 for a unit-variance summand");
  if (n < 1) throw DomainError("n must be positive");
  if (!(x >= 0.0)) throw DomainError("x must be nonnegative");
  const double r = beta3 / std::sqrt(static_cast<double>(n));
  const double c_nu = be_constants::nagaev_small_n;
  const double c_u = be_constants::uniform_iid_upper;
  NagaevResult out;
  out.applicable = r >= be_constants::small_n_threshold;
  out.bound = c_nu * r / (1.0 + x * x * x);

  const double m3 = abs_third_moment.value_or(rosenthal_ub(beta3, n));
  const double z3 = 0.5 * normal_abs_third_moment();  // E Z_+^3
  auto step = [&out](std::string claim, double lhs, double rhs) {
    out.derivation.push_back({std::move(claim), lhs, rhs, lhs <= rhs});
  };
  step("E|X|^3 <= 2 + beta3/sqrt(n)  [Rosenthal-type]", m3, 2.0 + r);
  step("E Z_+^3 = sqrt(2/pi) <= 2 + beta3/sqrt(n)", z3, 2.0 + r);
  step("(1+x^3) max(P(X>x), P(Z>x)) <= 1 + E|X|^3 <= 3 + beta3/sqrt(n)  [Markov]", 1.0 + m3, 3.0 + r);
  step("3 + beta3/sqrt(n) <= 4.5 beta3/sqrt(n)  [Markov only; needs beta3/sqrt(n) >= 6/7]", 3.0 + r, c_nu * r);
  step("Delta + x^3 Delta <= 0.4748 beta3/sqrt(n) + 2 + beta3/sqrt(n) <= 4.5 beta3/sqrt(n)  [uniform bound + Markov]",
       c_u * r + 2.0 + r, c_nu * r);
  const bool rosenthal_ok = out.derivation[0].holds && out.derivation[1].holds && out.derivation[2].holds;
  out.derivation_closes = out.applicable && rosenthal_ok && (out.derivation[3].holds || out.derivation[4].holds);
  return out;
}

double h_triple_prime_check(double x, std::span<const double> u_grid) {
  if (!(x > 0.0)) throw DomainError("h''' check needs x > 0");
  const auto h = [x](double u) {
    if (u >= 0.0) return 0.0;
    const double v = -u;
    return v * v * v / ((v + x) * (v + x));
  };
  double worst = 0.0;
  for (double u : u_grid) {
    if (u == 0.0) throw DomainError("h''' is undefined at u = 0");
    // Keep the stencil on one side of the kink at 0; the pole sits at u = -x.
    const double step = std::min(std::abs(u) / 4.0, (std::abs(u) + x) / 64.0);
    const double d3 = (h(u - 3 * step) - 8 * h(u - 2 * step) + 13 * h(u - step) - 13 * h(u + step) +
                       8 * h(u + 2 * step) - h(u + 3 * step)) /
                      (8.0 * step * step * step);
    worst = std::max(worst, std::abs(d3) * x * x / 6.0);
  }
  return worst;
}

}  // namespace bebound
