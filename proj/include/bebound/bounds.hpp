#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bebound/cf_core.hpp"
#include "bebound/discrete_dist.hpp"
#include "bebound/filters.hpp"
#include "bebound/quadrature.hpp"

namespace bebound {

enum class BoundKind { cdf_sandwich, tail_moment };
enum class TailMode { exact_abs, surrogate };

struct BoundParams {
  double p = 2.0;
  double tol = 1e-9;
  std::string filter = "prawitz";
  std::string mode;  // tail_moment only: "exact_abs" or "surrogate"
};

/// Two-sided bound produced by one of the smoothing inequalities. The
/// quadrature error is already folded into lower/upper (and radius).
struct BoundReport {
  BoundKind kind = BoundKind::cdf_sandwich;
  double x = 0.0;
  double T = 0.0;
  int k = 0;
  double lower = 0.0;
  double upper = 0.0;
  double center = 0.0;
  double radius = 0.0;
  double quadrature_error = 0.0;
  double correction = 0.0;  // surrogate mode: swap-error term included in radius
  bool radius_clamped = false;
  BoundParams params;
};

struct BoundOptions {
  double tol = 1e-9;
  double p = 2.0;
  const SmoothingFilter* filter = nullptr;  // defaults to the Prawitz filter
};

inline constexpr double kDefaultCutoffConstant = 0.57735026918962576;  // 1/sqrt(3)

/// T = c_T sqrt(n) / beta3.
double cutoff_from_constant(double c_T, int n, double beta3);

/// lower = m/2 + G(M_T(-.) f)(x) and upper = m/2 + G(M_T(.) f)(x), so that
/// lower <= F(x-) <= F(x+) <= upper for the scaled d.f. F of mass m with
/// Fourier-Stieltjes transform f.
BoundReport cdf_bounds(const CharFn& cf, double total_mass, double x, double T, const BoundOptions& opt = {});

/// |x^k P(X >= x) - center| <= radius (also with P(X > x)), x >= 0, where
/// center = G(M1_T E X^k (W - V))(x). In exact_abs mode the radius is
/// i G(M2_T E|X|^k (W + V))(x) from the law; in surrogate mode E|X|^k is
/// replaced by E X^k (available from the c.f.) and the swap-error bound is
/// added.
BoundReport tail_moment_bound(const CharFn& cf, int k, double x, double T, TailMode mode,
                              const BoundOptions& opt = {}, const DiscreteDist* law = nullptr);

/// The surrogate i^-k int_0^1 k a^(k-1) G(M2_T [f^(k)(a.) + f^(k)(.)])(x) da
/// multiplied by i (a real number), i.e. i G(M2_T E X^k (W + V))(x).
QuadratureResult surrogate_radius_term(const CharFn& cf, int k, double x, double T, const BoundOptions& opt = {});
/// i G(M2_T E|X|^k (W + V))(x) from the exact law.
QuadratureResult exact_radius_term(const DiscreteDist& law, int k, double x, double T, const BoundOptions& opt = {});

struct FixCorrection {
  double coefficient = 0.0;      // (c_2p / pi) (2k - p) / (k - p)
  double exact_term = 0.0;       // coefficient E[|X_-|^k / (|X_-| + x)^p] / T^p
  double moment_min_term = 0.0;  // coefficient min(E|X_-|^(k-p), E|X_-|^k / x^p) / T^p
};

/// (c_2p / pi) (2k - p) / (k - p); 16 for k = 3, p = 2.
double fix_coefficient(int k, double p, const SmoothingFilter& filter);

FixCorrection fix_correction(const DiscreteDist& dist, int k, double p, double x, double T,
                             const SmoothingFilter& filter = prawitz_filter());
/// Same from the lower-tail functional attached to a c.f.
FixCorrection fix_correction(const CharFn& cf, int k, double p, double x, double T,
                             const SmoothingFilter& filter = prawitz_filter());

/// psi(x) = x^2 E[|Z_-|^3 / (|Z_-| + x)^2], increasing from 0 to sqrt(2/pi).
double psi(double x, double tol = 1e-13);

struct ERatBounds {
  double exact = 0.0;    // E[|X_-|^3 / (|X_-| + x)^2]
  double chain1 = 0.0;   // min(E|X_-|, E|X_-|^3 / x^2)
  double chain2 = 0.0;   // min(1, E|X|^3 / x^2)
  double chain3 = 0.0;   // min(1, (2 + beta3/sqrt n) / x^2)
  double normal_comparison_ub = 0.0;  // (psi(x) + beta3/sqrt n) / x^2, externally sourced inequality
  bool chain_holds = false;
  bool normal_comparison_holds = false;
};

/// For X = S / sqrt(n), the standardized iid sum of `base`.
ERatBounds e_rat_bounds(const DiscreteDist& base, int n, double x);
/// For a law X of unit variance with Lyapunov ratio `r_lyapunov` = beta3/sqrt(n).
ERatBounds e_rat_bounds_for_law(const DiscreteDist& law, double r_lyapunov, double x);

/// 2 + beta3 / sqrt(n).
double rosenthal_ub(double beta3, int n);
/// E|Z|^3 = 2 sqrt(2/pi), for comparison with the Rosenthal-type bound.
double normal_abs_third_moment();

struct DerivationStep {
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct NagaevResult {
  double bound = 0.0;  // 4.5 beta3 / ((1 + x^3) sqrt n)
  bool applicable = false;  // beta3 / sqrt n >= 2/3
  std::vector<DerivationStep> derivation;
  /// Every Rosenthal/Markov step holds and at least one closing step reaches
  /// 4.5 beta3 / sqrt n.
  bool derivation_closes = false;
};

/// Small-n Nagaev bound with an auditable derivation. `abs_third_moment`
/// is the exact E|S/sqrt n|^3 when known; otherwise the Rosenthal bound is
/// used in its place.
NagaevResult small_n_nagaev(double beta3, int n, double x, std::optional<double> abs_third_moment = std::nullopt);

/// h(u) = |u_-|^3 / (|u_-| + x)^2. Returns max over the grid of
/// |h'''(u)| x^2 / 6, h''' by fourth-order central differences.
/// Throws DomainError for x <= 0 or a grid containing 0.
double h_triple_prime_check(double x, std::span<const double> u_grid);

}  // namespace bebound
