#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bebound/discrete_dist.hpp"

namespace bebound {

using cplx = std::complex<double>;

/// Exact moment data attached to a characteristic function, indexed by order.
/// Vectors may be shorter than k_max + 1 when a moment is not known.
struct MomentData {
  std::vector<double> raw;  // E X^j
  std::vector<double> abs;  // E |X|^j
  std::vector<double> neg;  // E |X_-|^j
  std::optional<double> beta3;  // E|X_1|^3 of the standardized summand (iid sums)
  std::optional<int> n;         // number of summands (iid sums)
};

/// Characteristic function f(t) = E exp(itX) with exact derivatives up to
/// order k_max. Immutable; copies share the evaluator.
class CharFn {
 public:
  using DerivFn = std::function<cplx(int order, double t)>;
  /// E[|X_-|^k / (|X_-| + x)^p]; p = 0 gives E|X_-|^k, x = 0 gives E|X_-|^(k-p).
  using NegRatioFn = std::function<double(double k, double p, double x)>;

  CharFn(std::string label, int k_max, DerivFn deriv, MomentData moments, NegRatioFn neg_ratio = {},
         double scale = 1.0, double frequency_hint = 0.0);

  cplx operator()(double t) const { return deriv_(0, t); }
  /// f^(order)(t); throws DomainError if order exceeds k_max.
  cplx derivative(int order, double t) const;

  int k_max() const { return k_max_; }
  const std::string& label() const { return label_; }
  const MomentData& moments() const { return moments_; }
  bool has_neg_part_ratio() const { return static_cast<bool>(neg_ratio_); }
  double neg_part_ratio(double k, double p, double x) const;
  /// Typical |X|; the scale on which f varies is 1 / scale.
  double scale() const { return scale_; }
  /// Upper bound on |X| when the law has bounded support, else 0.
  double frequency_hint() const { return frequency_hint_; }

 private:
  std::string label_;
  int k_max_;
  DerivFn deriv_;
  MomentData moments_;
  NegRatioFn neg_ratio_;
  double scale_;
  double frequency_hint_;
};

/// f(t) = sum_j p_j exp(i x_j t), derivatives of any order up to `k_max`.
CharFn discrete_cf(const DiscreteDist& dist, std::string label = "discrete", int k_max = 8);

/// exp(-t^2/2) with Hermite-polynomial derivatives.
CharFn normal_cf(int k_max = 8);

/// E[|Z_-|^k / (|Z_-| + x)^p] for Z ~ N(0,1), by adaptive quadrature on
/// [0, 40] (the neglected tail is below phi(40)).
double normal_neg_part_ratio(double k, double p, double x, double tol = 1e-13);

/// c.f. of S / sqrt(n), S a sum of n iid copies of `base` standardized to
/// mean 0 and variance 1. f(t) = f_1(t / sqrt n)^n with derivatives up to
/// order 3 from the exact product-rule expansion; moments come from the
/// exact convolution. Throws DomainError for n < 1 or zero variance.
CharFn make_standardized_iid_sum(const DiscreteDist& base, int n, std::string label = "iid-sum");

/// Law of S / sqrt(n) for the standardized base, by exact convolution.
DiscreteDist standardized_iid_sum_law(const DiscreteDist& base, int n);

/// I_k(z) = int_0^1 k a^(k-1) exp(a z) da. Power series for |z| < 2, the
/// recurrence I_k = (k / z)(e^z - I_(k-1)), I_0 = 1, otherwise.
cplx dilation_integral(int k, cplx z);

/// E X^k W_X(t) = i^-k int_0^1 f^(k)(a t) k a^(k-1) da, from the c.f. alone.
/// Closed form by repeated integration by parts once |t| scale >= 1,
/// adaptive Gauss-Kronrod in a below that.
cplx moment_w(const CharFn& cf, int k, double t);
/// E X^k V_X(t) = i^-k f^(k)(t).
cplx moment_v(const CharFn& cf, int k, double t);

/// E X^k (W_X - V_X)(t) from the c.f.; zero at t = 0.
cplx w_minus_v(const CharFn& cf, int k, double t, double tol = 1e-12);

/// E|X|^k (W_X + V_X)(t) as an exact atom sum.
cplx abs_w_plus_v(const DiscreteDist& dist, int k, double t);

/// i^-k [f^(k)(alpha t) + f^(k)(t)], alpha in (0, 1].
cplx cf_surrogate_plus(const CharFn& cf, int k, double alpha, double t);

/// Signed-power functionals of a finite distribution for a fixed k:
///   L(x)    = x^k (P(X > x) 1{x > 0} - P(X < x) 1{x < 0})
///   F(x)    = E X^k 1{X <= x}
///   G(x)    = E (x_+ min X)^k
///   Fhat(t) = E X^k exp(itX)
///   Ghat(t) = int_0^1 k a^(k-1) E X^k exp(i t a X) da
class SignedPowerFunctionals {
 public:
  SignedPowerFunctionals(DiscreteDist dist, int k);

  double L(double x) const;
  double F(double x) const;
  double G(double x) const;
  cplx F_hat(double t) const;
  cplx G_hat(double t) const;
  int k() const { return k_; }

 private:
  DiscreteDist dist_;
  int k_;
};

SignedPowerFunctionals signed_power_eval(const DiscreteDist& dist, int k);

}  // namespace bebound
