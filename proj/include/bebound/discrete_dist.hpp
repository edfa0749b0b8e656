#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bebound {

struct Atom {
  double x;
  double p;
};

/// Finite distribution: atoms sorted strictly increasing, probabilities
/// nonnegative and summing to one (to 1e-14 after normalization).
class DiscreteDist {
 public:
  /// Sorts, merges equal positions, drops zero-probability atoms and
  /// renormalizes. Throws DomainError on an empty list, a negative or
  /// non-finite probability, or total mass off by more than 1e-9.
  explicit DiscreteDist(std::vector<Atom> atoms);

  static DiscreteDist point_mass(double x);
  static DiscreteDist rademacher();
  /// Raw Bernoulli on {0, 1}.
  static DiscreteDist bernoulli(double p);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  double mean() const;
  double variance() const;
  /// E X^k.
  double raw_moment(int k) const;
  /// E |X|^q, any real q >= 0 (0^0 taken as 1).
  double abs_moment(double q) const;
  /// E |X_-|^q where X_- = min(X, 0).
  double neg_part_moment(double q) const;
  /// E [ |X_-|^k / (|X_-| + x)^p ]; atoms with X >= 0 contribute nothing.
  double neg_part_ratio(double k, double p, double x) const;
  double max_abs() const;

  /// P(X <= x), P(X < x), P(X >= x), P(X > x), all summed over the short side.
  double cdf(double x) const;
  double cdf_left(double x) const;
  double tail_ge(double x) const;
  double tail_gt(double x) const;

  /// Law of a + b X for b != 0.
  DiscreteDist affine(double a, double b) const;
  DiscreteDist negated() const { return affine(0.0, -1.0); }
  /// (X - E X) / sd(X); throws DomainError for zero variance.
  DiscreteDist standardized() const;

 private:
  struct Trusted {};
  DiscreteDist(Trusted, std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  std::vector<Atom> atoms_;
};

}  // namespace bebound
