// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reference.hpp"

#include "bebound/bounds.hpp"
#include "bebound/cf_core.hpp"
#include "bebound/filters.hpp"
#include "bebound/oracle.hpp"

using namespace bebound;

namespace {

constexpr double kTol = 1e-9;            // per-transform tolerance
constexpr double kConstantTol = 1e-8;    // c_{2,2} against 4 pi
constexpr double kIdentityTol = 1e-13;   // structural identities
constexpr double kHRatioLimit = 1.001;   // finite-difference h''' ratio

struct Family {
  std::string name;
  CharFn cf;
  std::optional<DiscreteDist> law;
};

std::vector<Family> families() {
  std::vector<Family> out;
  const DiscreteDist zero = DiscreteDist::point_mass(0.0);
  out.push_back({"point mass at 0", discrete_cf(zero, "point0"), zero});
  for (int n : {4, 16}) {
    out.push_back({"rademacher n=" + std::to_string(n), make_standardized_iid_sum(DiscreteDist::rademacher(), n),
                   standardized_iid_sum_law(DiscreteDist::rademacher(), n)});
  }
  out.push_back({"bernoulli(0.3) n=9", make_standardized_iid_sum(DiscreteDist::bernoulli(0.3), 9),
                 standardized_iid_sum_law(DiscreteDist::bernoulli(0.3), 9)});
  out.push_back({"normal", normal_cf(), std::nullopt});
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("criterion %d [%s]: %s  %s\n", id, title, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void constants() {
  Stopwatch sw;
  const double c22 = c2p_constant(2.0).value;
  const double coef2 = fix_coefficient(3, 2.0, prawitz_filter());
  const double coef1 = fix_coefficient(3, 1.0, prawitz_filter());
  const double x0 = std::cbrt(4.5 / 0.4748 - 1.0);
  const double psi_far = psi(1e6);
  const double psi35 = psi(3.5);
  const double env = (0.8 + 2.0 / 3.0) / (x0 * x0);
  const double t = sw.seconds();
  const bool pass = std::abs(c22 - 4.0 * ref::pi) < kConstantTol && coef2 == 16.0 && coef1 <= 3.6231 &&
                    coef1 > 3.62 && x0 > 2.039 && x0 < 2.040 && std::abs(psi_far - std::sqrt(2.0 / ref::pi)) < 1e-3 &&
                    psi35 >= 0.34 && psi35 <= 0.36 && env < 0.36 && t < 5.0;
  char buf[256];
  std::snprintf(buf, sizeof buf, "c22=%.12f coef(3,2)=%.17g coef(3,1)=%.10f x0=%.10f psi(1e6)=%.6f psi(3.5)=%.6f env=%.6f (%.2fs)",
                c22, coef2, coef1, x0, psi_far, psi35, env, t);
  report(1, "constants reproduction", pass, buf);
}

void cdf_soundness(const std::vector<Family>& fams) {
  Stopwatch sw;
  int evaluations = 0, violations = 0;
  double worst_margin = 1e300;
  BoundOptions opt;
  opt.tol = kTol;
  for (const auto& f : fams) {
    for (double T : {5.0, 10.0, 30.0}) {
      for (double x : linspace(-4.0, 4.0, 41)) {
        const BoundReport r = cdf_bounds(f.cf, 1.0, x, T, opt);
        const double right = f.law ? f.law->cdf(x) : normal_cdf(x);
        const double left = f.law ? f.law->cdf_left(x) : right;
        const double margin = std::min(left - r.lower, r.upper - right);
        worst_margin = std::min(worst_margin, margin);
        if (margin < 0.0) ++violations;
        ++evaluations;
      }
    }
  }
  const double t = sw.seconds();
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d evaluations, %d violations, smallest margin %.3e (%.1fs)", evaluations, violations,
                worst_margin, t);
  report(2, "cdf sandwich soundness", violations == 0 && t < 60.0, buf);
}

void tail_soundness(const std::vector<Family>& fams) {
  Stopwatch sw;
  int evaluations = 0, violations = 0, dominance_failures = 0;
  double worst_margin = 1e300, worst_dominance = 1e300;
  BoundOptions opt;
  opt.tol = kTol;
  for (const auto& f : fams) {
    const DiscreteDist* law = f.law ? &*f.law : nullptr;
    for (double T : {10.0, 30.0}) {
      for (double x : linspace(0.0, 4.0, 21)) {
        const double xk = x * x * x;
        const double ge = xk * (law ? law->tail_ge(x) : normal_sf(x));
        const double gt = xk * (law ? law->tail_gt(x) : normal_sf(x));
        std::optional<double> exact_radius;
        for (TailMode mode : {TailMode::exact_abs, TailMode::surrogate}) {
          if (mode == TailMode::exact_abs && !law) continue;
          const BoundReport r = tail_moment_bound(f.cf, 3, x, T, mode, opt, law);
          for (double v : {ge, gt}) {
            const double margin = r.radius - std::abs(v - r.center);
            worst_margin = std::min(worst_margin, margin);
            if (margin < 0.0) ++violations;
            ++evaluations;
          }
          if (mode == TailMode::exact_abs) {
            exact_radius = r.radius;
          } else if (exact_radius) {
            const double d = r.radius - (*exact_radius - 2.0 * kTol);
            worst_dominance = std::min(worst_dominance, d);
            if (d < 0.0) ++dominance_failures;
          }
        }
      }
    }
  }
  const double t = sw.seconds();
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d containment checks, %d violations (margin %.3e); surrogate dominance failures %d (margin %.3e) "
                "(%.1fs)",
                evaluations, violations, worst_margin, dominance_failures, worst_dominance, t);
  report(3, "tail-moment sandwich soundness", violations == 0 && dominance_failures == 0 && t < 120.0, buf);
}

void swap_error_chain() {
  Stopwatch sw;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ux(0.2, 3.0);
  std::uniform_int_distribution<int> atoms(2, 6);
  int chain_failures = 0, swap_failures = 0, checks = 0;
  double worst_slack = 1e300, worst_ratio = 0.0;
  BoundOptions opt;
  opt.tol = kTol;
  for (int trial = 0; trial < 200; ++trial) {
    const DiscreteDist d = ref::random_dist(rng, atoms(rng));
    const CharFn cf = discrete_cf(d, "random");
    const double x = ux(rng);
    const double T = trial % 2 ? 5.0 : 20.0;
    const QuadratureResult exact = exact_radius_term(d, 3, x, T, opt);
    const QuadratureResult surrogate = surrogate_radius_term(cf, 3, x, T, opt);
    const double swap = std::abs(exact.value - surrogate.value);
    const double budget = exact.abs_error_estimate + surrogate.abs_error_estimate + 2.0 * kTol;
    for (double p : {1.0, 2.0}) {
      const FixCorrection c = fix_correction(d, 3, p, x, T);
      if (!(c.exact_term <= c.moment_min_term)) ++chain_failures;
      const double slack = c.exact_term + budget - swap;
      worst_slack = std::min(worst_slack, slack);
      worst_ratio = std::max(worst_ratio, swap / (c.exact_term + budget));
      if (slack < 0.0) ++swap_failures;
      ++checks;
    }
  }
  const double t = sw.seconds();
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d checks, chain failures %d, swap-error failures %d (slack %.3e, largest error/bound %.4f) (%.1fs)",
                checks, chain_failures, swap_failures, worst_slack, worst_ratio, t);
  report(4, "swap-error correction chain", chain_failures == 0 && swap_failures == 0 && t < 120.0, buf);
}

struct Base {
  std::string name;
  DiscreteDist dist;
};

std::vector<Base> audit_bases() {
  return {
      {"rademacher", DiscreteDist::rademacher()},
      {"bernoulli(0.5)", DiscreteDist::bernoulli(0.5)},
      {"bernoulli(0.3)", DiscreteDist::bernoulli(0.3)},
      {"bernoulli(0.1)", DiscreteDist::bernoulli(0.1)},
      {"bernoulli(0.02)", DiscreteDist::bernoulli(0.02)},
      {"two-point {-1,3}", DiscreteDist({{-1.0, 0.75}, {3.0, 0.25}})},
      {"three-point", DiscreteDist({{-1.0, 0.3}, {0.5, 0.5}, {2.0, 0.2}})},
      {"off-lattice", DiscreteDist({{-1.0, 0.4}, {std::sqrt(2.0), 0.35}, {ref::pi, 0.25}})},
  };
}

void nagaev_audit() {
  Stopwatch sw;
  const std::vector<double> grid = default_z_grid();
  int cases = 0, small_n_cases = 0, bound_failures = 0, envelope_failures = 0, record_failures = 0;
  int markov_only_short = 0;
  double worst = 0.0;
  for (const auto& b : audit_bases()) {
    const int n_max = b.name == "off-lattice" ? 6 : 40;
    for (int n = 1; n <= n_max; ++n) {
      const DeltaProfile p = delta_profile(b.dist, n, grid, b.name);
      ++cases;
      if (!p.within_envelope) ++envelope_failures;
      if (!p.small_n) continue;
      ++small_n_cases;
      worst = std::max(worst, p.max_normalized);
      if (p.max_normalized > 4.5) ++bound_failures;
      const double m3 = standardized_iid_sum_law(b.dist, n).abs_moment(3.0);
      const NagaevResult r = small_n_nagaev(p.beta3, n, 0.0, m3);
      if (!r.derivation_closes) ++record_failures;
      if (!r.derivation[3].holds) ++markov_only_short;
    }
  }
  const double t = sw.seconds();
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%d profiles, %d with beta3/sqrt(n) >= 2/3: max normalized %.4f, violations %d, envelope failures %d, "
                "records not closing %d; Markov-only step short in %d (closed via the uniform bound) (%.1fs)",
                cases, small_n_cases, worst, bound_failures, envelope_failures, record_failures, markov_only_short, t);
  report(5, "small-n nonuniform audit",
         bound_failures == 0 && envelope_failures == 0 && record_failures == 0 && small_n_cases > 0 && t < 30.0, buf);
}

void rosenthal_exactness() {
  Stopwatch sw;
  int cases = 0, failures_here = 0;
  double worst_slack = 1e300;
  for (const auto& b : audit_bases()) {
    const int n_max = b.dist.size() == 2 ? 64 : 12;
    const double beta3 = b.dist.standardized().abs_moment(3.0);
    for (int n = 1; n <= n_max; ++n) {
      const double m3 = standardized_iid_sum_law(b.dist, n).abs_moment(3.0);
      const double slack = rosenthal_ub(beta3, n) - m3;
      worst_slack = std::min(worst_slack, slack);
      if (slack < 0.0) ++failures_here;
      ++cases;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d (base, n) cases, %d violations, smallest slack %.4f (%.1fs)", cases, failures_here,
                worst_slack, sw.seconds());
  report(6, "Rosenthal-type bound", failures_here == 0, buf);
}

void structural_identities() {
  Stopwatch sw;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pos(0.0, 4.0);
  double worst = 0.0;
  int checks = 0;
  auto track = [&](double err) {
    worst = std::max(worst, err);
    ++checks;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const DiscreteDist d = ref::random_dist(rng, 2 + trial % 6);
    std::vector<Atom> nonneg_atoms;
    for (int i = 0; i < 2 + trial % 5; ++i) nonneg_atoms.push_back({pos(rng), 1.0 / (2 + trial % 5)});
    const DiscreteDist nn(nonneg_atoms);
    for (int k = 1; k <= 3; ++k) {
      const auto a = signed_power_eval(d, k);
      const auto m = signed_power_eval(d.negated(), k);
      const double sign = k % 2 ? -1.0 : 1.0;
      for (double x = -4.0; x <= 4.0; x += 0.125) track(std::abs(m.L(x) + sign * a.L(-x)));
      for (double t = -6.0; t <= 6.0; t += 0.5) {
        track(std::abs(m.F_hat(t) - sign * a.F_hat(-t)));
        track(std::abs(m.G_hat(t) - sign * a.G_hat(-t)));
      }
      const auto s = signed_power_eval(nn, k);
      for (double x = 0.0; x <= 5.0; x += 0.125) track(std::abs(s.L(x) - (s.G(x) - s.F(x))));
      track(std::abs(s.F(1e12) - nn.raw_moment(k)));
      track(std::abs(s.G(1e12) - nn.raw_moment(k)));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d checks, largest deviation %.3e (limit %.0e) (%.1fs)", checks, worst, kIdentityTol,
                sw.seconds());
  report(7, "parity and structural identities", worst <= kIdentityTol, buf);
}

void h_bound() {
  Stopwatch sw;
  std::vector<double> grid;
  for (int i = 0; i < 2000; ++i) grid.push_back(-std::pow(10.0, -6.0 + 12.0 * i / 1999.0));
  double worst = 0.0;
  std::string per_x;
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const double r = h_triple_prime_check(x, grid);
    worst = std::max(worst, r);
    per_x += fmt(" x=%g:", x) + fmt("%.6f", r);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "max ratio %.6f (limit %.3f);%s (%.1fs)", worst, kHRatioLimit, per_x.c_str(),
                sw.seconds());
  report(8, "third-derivative bound", worst <= kHRatioLimit, buf);
}

}  // namespace

int main() {
  const std::vector<Family> fams = families();
  const std::vector<std::function<void()>> criteria = {
      constants,
      [&] { cdf_soundness(fams); },
      [&] { tail_soundness(fams); },
      swap_error_chain,
      nagaev_audit,
      rosenthal_exactness,
      structural_identities,
      h_bound,
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
