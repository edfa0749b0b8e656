#include <cmath>
#include <random>

#include "doctest.h"
#include "reference.hpp"

#include "bebound/cf_core.hpp"
#include "bebound/dist_spec.hpp"
#include "bebound/errors.hpp"
#include "bebound/oracle.hpp"

using namespace bebound;

namespace {

cplx ipow(int k) {
  static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[((k % 4) + 4) % 4];
}

// int_0^1 k a^(k-1) exp(i a s) da by panels of Gauss-Legendre.
cplx dilation_reference(int k, double s) {
  auto re = [&](double a) { return k * std::pow(a, k - 1) * std::cos(a * s); };
  auto im = [&](double a) { return k * std::pow(a, k - 1) * std::sin(a * s); };
  const double w = ref::panel_width(s);
  return {ref::gauss_panels(re, 0.0, 1.0, w), ref::gauss_panels(im, 0.0, 1.0, w)};
}

// E X^k (W - V)(t) as an atom sum.
cplx w_minus_v_reference(const DiscreteDist& d, int k, double t) {
  cplx sum = 0.0;
  for (const auto& a : d.atoms()) {
    sum += a.p * std::pow(a.x, k) * (dilation_reference(k, a.x * t) - std::exp(cplx(0.0, a.x * t)));
  }
  return sum;
}

}  // namespace

TEST_CASE("sign sums have closed-form characteristic functions") {
  const CharFn one = make_standardized_iid_sum(DiscreteDist::rademacher(), 1);
  const CharFn four = make_standardized_iid_sum(DiscreteDist::rademacher(), 4);
  for (double t = -10.0; t <= 10.0; t += 0.37) {
    CHECK(std::abs(one(t) - std::cos(t)) < 1e-15);
    CHECK(std::abs(four(t) - std::pow(std::cos(t / 2.0), 4)) < 1e-14);
  }
  CHECK(std::abs(one.derivative(3, 0.0)) < 1e-15);
  CHECK(one.moments().abs[3] == 1.0);
  CHECK(four.moments().raw[2] == doctest::Approx(1.0));
}

TEST_CASE("characteristic function basics on a skewed sum") {
  const CharFn f = make_standardized_iid_sum(DiscreteDist::bernoulli(0.3), 2);
  CHECK(f(0.0) == cplx(1.0, 0.0));
  for (double t = -20.0; t <= 20.0; t += 0.41) {
    CHECK(std::abs(f(t)) <= 1.0 + 1e-15);
    CHECK(std::abs(f(-t) - std::conj(f(t))) < 1e-15);
  }
}

TEST_CASE("derivatives agree with finite differences and moments") {
  const DiscreteDist base({{-1.0, 0.2}, {0.3, 0.5}, {2.0, 0.3}});
  const CharFn f = make_standardized_iid_sum(base, 3);
  const DiscreteDist law = standardized_iid_sum_law(base, 3);
  const double h = 1e-3;
  for (double t : {-2.0, -0.4, 0.0, 0.7, 3.1}) {
    for (int j = 1; j <= 3; ++j) {
      auto g = [&](double s) { return f.derivative(j - 1, s); };
      const cplx fd = (-g(t + 2 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2 * h)) / (12.0 * h);
      CHECK(std::abs(fd - f.derivative(j, t)) < 1e-8);
    }
  }
  for (int j = 0; j <= 3; ++j) {
    CHECK(std::abs(f.derivative(j, 0.0) - ipow(j) * law.raw_moment(j)) < 1e-13);
  }
  CHECK_THROWS_AS(f.derivative(4, 0.0), DomainError);
}

TEST_CASE("product route matches the atom sum of the convolved law") {
  const DiscreteDist base = DiscreteDist::bernoulli(0.3);
  const CharFn prod = make_standardized_iid_sum(base, 5);
  const CharFn atoms = discrete_cf(standardized_iid_sum_law(base, 5));
  for (double t = -15.0; t <= 15.0; t += 0.29) {
    for (int j = 0; j <= 3; ++j) CHECK(std::abs(prod.derivative(j, t) - atoms.derivative(j, t)) < 1e-12);
  }
}

TEST_CASE("iid sum argument errors") {
  CHECK_THROWS_AS(make_standardized_iid_sum(DiscreteDist::rademacher(), 0), DomainError);
  CHECK_THROWS_AS(make_standardized_iid_sum(DiscreteDist::point_mass(2.0), 3), DomainError);
}

TEST_CASE("normal characteristic function and Hermite derivatives") {
  const CharFn f = normal_cf();
  for (double t : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
    const double g = std::exp(-t * t / 2.0);
    CHECK(std::abs(f(t) - g) < 1e-16);
    CHECK(std::abs(f.derivative(1, t) - (-t * g)) < 1e-15);
    CHECK(std::abs(f.derivative(3, t) - (3.0 * t - t * t * t) * g) < 1e-14);
  }
  CHECK(normal_neg_part_ratio(3.0, 0.0, 0.0) == doctest::Approx(std::sqrt(2.0 / ref::pi)).epsilon(1e-12));
}

TEST_CASE("dilation integral matches quadrature across both evaluation regimes") {
  for (int k = 1; k <= 4; ++k) {
    for (double s : {0.0, 0.3, 1.9, 1.999999, 2.000001, 2.5, 7.0, 40.0, -3.3}) {
      CHECK(std::abs(dilation_integral(k, cplx(0.0, s)) - dilation_reference(k, s)) < 1e-13);
    }
  }
  const cplx z(1.2, -0.9);
  auto re = [&](double a) { return (3.0 * a * a * std::exp(a * z)).real(); };
  CHECK(dilation_integral(3, z).real() == doctest::Approx(ref::gauss_panels(re, 0.0, 1.0, 0.5)).epsilon(1e-13));
  CHECK(dilation_integral(0, z) == cplx(1.0, 0.0));
}

TEST_CASE("W - V from the characteristic function") {
  const CharFn rad = make_standardized_iid_sum(DiscreteDist::rademacher(), 1);
  CHECK(std::abs(w_minus_v(rad, 3, 0.0)) < 1e-15);

  const DiscreteDist point = DiscreteDist::point_mass(1.7);
  const CharFn pc = discrete_cf(point);
  for (double t : {0.2, 1.0, 5.0, 30.0}) {
    CHECK(std::abs(w_minus_v(pc, 3, t) - w_minus_v_reference(point, 3, t)) < 1e-11);
  }

  const DiscreteDist law = standardized_iid_sum_law(DiscreteDist::bernoulli(0.3), 4);
  const CharFn f = make_standardized_iid_sum(DiscreteDist::bernoulli(0.3), 4);
  for (int k = 1; k <= 3; ++k) {
    for (double t : {0.05, 0.5, 2.0, 9.0, 25.0}) {
      CHECK(std::abs(w_minus_v(f, k, t) - w_minus_v_reference(law, k, t)) < 1e-10);
      CHECK(std::abs(moment_v(f, k, t) * ipow(k) - f.derivative(k, t)) < 1e-15);
    }
  }
}

TEST_CASE("W - V for the normal law against direct quadrature") {
  const CharFn f = normal_cf();
  for (double t : {0.3, 2.0, 7.0}) {
    auto re = [&](double a) { return (3.0 * a * a * ipow(-3) * f.derivative(3, a * t)).real(); };
    auto im = [&](double a) { return (3.0 * a * a * ipow(-3) * f.derivative(3, a * t)).imag(); };
    const cplx w(ref::gauss_panels(re, 0.0, 1.0, 0.05), ref::gauss_panels(im, 0.0, 1.0, 0.05));
    CHECK(std::abs(w_minus_v(f, 3, t) - (w - moment_v(f, 3, t))) < 1e-10);
  }
}

TEST_CASE("E|X|^k (W + V)") {
  const DiscreteDist d({{-1.5, 0.3}, {0.4, 0.45}, {2.2, 0.25}});
  CHECK(abs_w_plus_v(d, 3, 0.0).real() == doctest::Approx(2.0 * d.abs_moment(3.0)));

  const DiscreteDist neg = DiscreteDist::point_mass(-1.0);
  const cplx expect = dilation_reference(3, -ref::pi) + std::exp(cplx(0.0, -ref::pi));
  CHECK(std::abs(abs_w_plus_v(neg, 3, ref::pi) - expect) < 1e-13);

  const DiscreteDist sym = DiscreteDist::rademacher();
  for (double t : {0.4, 3.0, 11.0}) {
    CHECK(std::abs(abs_w_plus_v(d, 3, -t) - std::conj(abs_w_plus_v(d, 3, t))) < 1e-14);
    CHECK(std::abs(abs_w_plus_v(sym, 3, t).imag()) < 1e-15);
  }
}

TEST_CASE("surrogate average of kth derivatives") {
  const CharFn f = normal_cf();
  CHECK(std::abs(cf_surrogate_plus(f, 3, 1.0, 1.3) - 2.0 * ipow(-3) * f.derivative(3, 1.3)) < 1e-15);
  CHECK(std::abs(cf_surrogate_plus(f, 3, 0.5, 0.0) - 2.0 * f.moments().raw[3]) < 1e-15);
  const double g = [](double t) { return (3.0 * t - t * t * t) * std::exp(-t * t / 2.0); }(0.4);
  const double g1 = (3.0 - 1.0) * std::exp(-0.5);
  CHECK(std::abs(cf_surrogate_plus(f, 3, 0.4, 1.0) - ipow(-3) * (g + g1)) < 1e-15);
}

TEST_CASE("signed power functionals on a point mass") {
  const auto sp = signed_power_eval(DiscreteDist::point_mass(1.0), 3);
  CHECK(sp.L(0.5) == doctest::Approx(0.125));
  CHECK(sp.G(0.5) == doctest::Approx(0.125));
  CHECK(sp.F(0.5) == 0.0);
  CHECK(sp.F(1.0) == 1.0);
  CHECK(sp.L(0.0) == 0.0);
}

TEST_CASE("parity identities and mirrored laws") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const DiscreteDist d = ref::random_dist(rng, 2 + trial % 5);
    for (int k = 1; k <= 3; ++k) {
      const auto a = signed_power_eval(d, k);
      const auto b = signed_power_eval(d.negated(), k);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      for (double x = -3.5; x <= 3.5; x += 0.173) {
        CHECK(std::abs(b.L(x) + sign * a.L(-x)) < 1e-13);
      }
      for (double t : {0.3, 1.7, 4.0}) {
        CHECK(std::abs(b.F_hat(t) - sign * a.F_hat(-t)) < 1e-13);
        CHECK(std::abs(b.G_hat(t) - sign * a.G_hat(-t)) < 1e-13);
      }
    }
  }
}

TEST_CASE("nonnegative laws: L = G - F and limits at infinity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 4; ++i) atoms.push_back({pos(rng), 0.25});
    const DiscreteDist d(atoms);
    for (int k = 1; k <= 3; ++k) {
      const auto sp = signed_power_eval(d, k);
      double prev_f = -1.0, prev_g = -1.0;
      for (double x = 0.05; x <= 5.0; x += 0.05) {
        CHECK(std::abs(sp.L(x) - (sp.G(x) - sp.F(x))) < 1e-13);
        CHECK(sp.F(x) >= prev_f);
        CHECK(sp.G(x) >= prev_g);
        prev_f = sp.F(x);
        prev_g = sp.G(x);
      }
      CHECK(std::abs(sp.F(1e9) - d.raw_moment(k)) < 1e-13);
      CHECK(std::abs(sp.G(1e9) - d.raw_moment(k)) < 1e-13);
      for (const auto& a : d.atoms()) {
        CHECK(std::abs(sp.G(a.x * (1 + 1e-12)) - sp.G(a.x * (1 - 1e-12))) < 1e-9);
      }
    }
  }
}

TEST_CASE("distribution grammar") {
  CHECK(parse_dist_spec("rademacher").base->size() == 2);
  CHECK(parse_dist_spec("bernoulli:0.3").base->atoms()[1].p == doctest::Approx(0.3));
  const DistSpec a = parse_dist_spec("atoms:-1,0.25;0.5,0.5;2,0.25");
  CHECK(a.base->size() == 3);
  CHECK(a.base->atoms()[0].x == -1.0);
  CHECK(parse_dist_spec("normal").normal);
  for (const char* bad : {"", "gamma", "bernoulli:x", "atoms:1", "atoms:1,0.5;2", "atoms:1,0.3;2,0.3"}) {
    CHECK_THROWS_AS(parse_dist_spec(bad), DomainError);
  }
}

TEST_CASE("third absolute moment of a standardized sum obeys the Rosenthal-type bound") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscreteDist base = ref::random_dist(rng, 2 + trial % 3);
    const double beta3 = base.standardized().abs_moment(3.0);
    for (int n : {1, 2, 3, 8}) {
      CHECK(standardized_iid_sum_law(base, n).abs_moment(3.0) <= 2.0 + beta3 / std::sqrt(n) + 1e-13);
    }
  }
}
