#include "bebound/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bebound/errors.hpp"

namespace bebound {

namespace {

double neumaier(std::span<const double> values) {
  double s = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = s + v;
    c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return s + c;
}

template <class Pred, class Weight>
double sum_where(std::span<const Atom> atoms, Pred pred, Weight w) {
  std::vector<double> terms;
  terms.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (pred(a.x)) terms.push_back(a.p * w(a.x));
  }
  return neumaier(terms);
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) {
  if (atoms.empty()) throw DomainError("distribution needs at least one atom");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x)) throw DomainError("atom position must be finite");
    if (!std::isfinite(a.p) || a.p < 0.0) {
      throw DomainError("atom probability must be finite and nonnegative, got " + std::to_string(a.p));
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (a.p == 0.0) continue;
    if (!merged.empty() && merged.back().x == a.x) {
      merged.back().p += a.p;
    } else {
      merged.push_back(a);
    }
  }
  std::vector<double> ps;
  for (const Atom& a : merged) ps.push_back(a.p);
  const double total = neumaier(ps);
  if (merged.empty() || std::abs(total - 1.0) > 1e-9) {
    throw DomainError("atom probabilities must sum to 1, got " + std::to_string(total));
  }
  for (Atom& a : merged) a.p /= total;
  atoms_ = std::move(merged);
}

DiscreteDist DiscreteDist::point_mass(double x) { return DiscreteDist({{x, 1.0}}); }

DiscreteDist DiscreteDist::rademacher() { return DiscreteDist({{-1.0, 0.5}, {1.0, 0.5}}); }

DiscreteDist DiscreteDist::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("bernoulli parameter must lie in (0, 1)");
  return DiscreteDist({{0.0, 1.0 - p}, {1.0, p}});
}

double DiscreteDist::mean() const {
  return sum_where(atoms_, [](double) { return true; }, [](double x) { return x; });
}

double DiscreteDist::variance() const {
  const double m = mean();
  return sum_where(atoms_, [](double) { return true; }, [m](double x) { return (x - m) * (x - m); });
}

double DiscreteDist::raw_moment(int k) const {
  return sum_where(atoms_, [](double) { return true; }, [k](double x) { return std::pow(x, k); });
}

double DiscreteDist::abs_moment(double q) const {
  return sum_where(atoms_, [](double) { return true; },
                   [q](double x) { return q == 0.0 ? 1.0 : std::pow(std::abs(x), q); });
}

double DiscreteDist::neg_part_moment(double q) const {
  return sum_where(atoms_, [](double x) { return x < 0.0; }, [q](double x) { return std::pow(-x, q); });
}

double DiscreteDist::neg_part_ratio(double k, double p, double x) const {
  return sum_where(atoms_, [](double v) { return v < 0.0; },
                   [k, p, x](double v) { return std::pow(-v, k) / std::pow(-v + x, p); });
}

double DiscreteDist::max_abs() const {
  return std::max(std::abs(atoms_.front().x), std::abs(atoms_.back().x));
}

double DiscreteDist::cdf(double x) const {
  const double lower = sum_where(atoms_, [x](double v) { return v <= x; }, [](double) { return 1.0; });
  const double upper = sum_where(atoms_, [x](double v) { return v > x; }, [](double) { return 1.0; });
  return lower <= 0.5 ? lower : 1.0 - upper;
}

double DiscreteDist::cdf_left(double x) const {
  const double lower = sum_where(atoms_, [x](double v) { return v < x; }, [](double) { return 1.0; });
  const double upper = sum_where(atoms_, [x](double v) { return v >= x; }, [](double) { return 1.0; });
  return lower <= 0.5 ? lower : 1.0 - upper;
}

double DiscreteDist::tail_ge(double x) const {
  return sum_where(atoms_, [x](double v) { return v >= x; }, [](double) { return 1.0; });
}

double DiscreteDist::tail_gt(double x) const {
  return sum_where(atoms_, [x](double v) { return v > x; }, [](double) { return 1.0; });
}

DiscreteDist DiscreteDist::affine(double a, double b) const {
  if (b == 0.0 || !std::isfinite(b)) throw DomainError("affine scale must be finite and nonzero");
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const Atom& at : atoms_) out.push_back({a + b * at.x, at.p});
  if (b < 0.0) std::reverse(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i - 1].x < out[i].x)) return DiscreteDist(std::move(out));  // rounding merged atoms
  }
  return DiscreteDist(Trusted{}, std::move(out));
}

DiscreteDist DiscreteDist::standardized() const {
  const double var = variance();
  if (!(var > 0.0)) throw DomainError("cannot standardize a zero-variance distribution");
  const double sd = std::sqrt(var);
  const double m = mean();
  return affine(-m / sd, 1.0 / sd);
}

}  // namespace bebound
