#pragma once

#include <string>
#include <vector>

#include "bebound/discrete_dist.hpp"

namespace bebound {

/// Published Berry-Esseen constants surfaced in audit reports.
namespace be_constants {
inline constexpr double uniform_iid_upper = 0.4748;    // c_u, iid case
inline constexpr double uniform_general_upper = 0.56;  // c_u, general case
inline constexpr double uniform_general_alt = 0.5606;
/// (3 + sqrt(10)) / (6 sqrt(2 pi)), lower bound on c_u.
double uniform_lower();
inline constexpr double nagaev_small_n = 4.5;     // c_nu when beta3/sqrt(n) >= 2/3
inline constexpr double small_n_threshold = 2.0 / 3.0;
inline constexpr double nonuniform_envelope = 25.0;
}  // namespace be_constants

/// Exact law of X_1 + ... + X_n for iid X_i ~ base.
///
/// Bases whose atoms sit on an affine integer lattice are convolved on
/// integer indices and mapped to positions once at the end, so atoms never
/// split through rounding drift. Other bases coalesce on exact double
/// equality. Throws DomainError for n < 1 or a support above 10^6 atoms.
DiscreteDist convolve_iid(const DiscreteDist& base, int n);

double normal_pdf(double x);
/// Phi(x). Power series on [-1, 1], Mills-ratio continued fraction outside.
double normal_cdf(double x);
/// 1 - Phi(x) without cancellation.
double normal_sf(double x);

struct DeltaProfile {
  std::string dist_id;
  int n = 1;
  double beta3 = 0.0;  // E|X_1|^3 of the standardized base
  double r_lyapunov = 0.0;
  std::vector<double> z;
  std::vector<double> delta;       // |P(S > B z) - P(Z > z)|
  std::vector<double> normalized;  // delta (1 + z^3) sqrt(n) / beta3
  double max_normalized = 0.0;
  double max_uniform_ratio = 0.0;  // max delta sqrt(n) / beta3
  bool small_n = false;            // beta3 / sqrt(n) >= 2/3
  bool within_small_n_constant = false;
  bool within_envelope = false;
};

/// 81 points on [0, 4] merged with [2.0, 3.5] at step 0.05.
std::vector<double> default_z_grid();

/// Grid values of the nonuniform Berry-Esseen discrepancy of the
/// standardized n-fold sum of `base`, against the normal tail.
DeltaProfile delta_profile(const DiscreteDist& base, int n, const std::vector<double>& z_grid,
                           std::string dist_id = "custom");

}  // namespace bebound
