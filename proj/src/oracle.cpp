#include "bebound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

#include "bebound/errors.hpp"

namespace bebound {

namespace {

constexpr std::size_t kMaxSupport = 1'000'000;

struct Lattice {
  double origin;
  double step;
  std::vector<long long> index;
};

std::optional<Lattice> detect_lattice(std::span<const Atom> atoms) {
  if (atoms.size() < 2) return std::nullopt;
  double gap = atoms[1].x - atoms[0].x;
  for (std::size_t i = 2; i < atoms.size(); ++i) gap = std::min(gap, atoms[i].x - atoms[i - 1].x);
  for (int divisor = 1; divisor <= 64; ++divisor) {
    const double step = gap / divisor;
    Lattice lat{atoms[0].x, step, {}};
    bool ok = true;
    for (const Atom& a : atoms) {
      const double m = (a.x - lat.origin) / step;
      const double r = std::round(m);
      if (std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(m)) || r > 1e6) {
        ok = false;
        break;
      }
      lat.index.push_back(static_cast<long long>(r));
    }
    if (ok) return lat;
  }
  return std::nullopt;
}

// Compensated accumulator for one probability cell.
struct Cell {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

DiscreteDist convolve_lattice(const DiscreteDist& base, const Lattice& lat, int n) {
  const long long width = lat.index.back();
  const long long support = width * n + 1;
  if (support > static_cast<long long>(kMaxSupport)) throw DomainError("convolution support exceeds 10^6 atoms");
  std::vector<double> probs(base.size());
  for (std::size_t j = 0; j < base.size(); ++j) probs[j] = base.atoms()[j].p;

  std::vector<double> current = {1.0};
  for (int step = 0; step < n; ++step) {
    std::vector<Cell> next(current.size() + width);
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i] == 0.0) continue;
      for (std::size_t j = 0; j < probs.size(); ++j) next[i + lat.index[j]].add(current[i] * probs[j]);
    }
    current.assign(next.size(), 0.0);
    for (std::size_t i = 0; i < next.size(); ++i) current[i] = next[i].value();
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (current[i] > 0.0) atoms.push_back({n * lat.origin + lat.step * static_cast<double>(i), current[i]});
  }
  return DiscreteDist(std::move(atoms));
}

DiscreteDist convolve_generic(const DiscreteDist& base, int n) {
  std::map<double, Cell> current{{0.0, Cell{1.0, 0.0}}};
  for (int step = 0; step < n; ++step) {
    std::map<double, Cell> next;
    for (const auto& [x, cell] : current) {
      const double p = cell.value();
      for (const Atom& a : base.atoms()) next[x + a.x].add(p * a.p);
      if (next.size() > kMaxSupport) throw DomainError("convolution support exceeds 10^6 atoms");
    }
    current = std::move(next);
  }
  std::vector<Atom> atoms;
  atoms.reserve(current.size());
  for (const auto& [x, cell] : current) atoms.push_back({x, cell.value()});
  return DiscreteDist(std::move(atoms));
}

// sum_{m>=0} x^(2m+1) / (2m+1)!!
double odd_double_factorial_series(double x) {
  double term = x;
  double sum = x;
  const double x2 = x * x;
  for (int m = 1; m < 200; ++m) {
    term *= x2 / (2 * m + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Q(x) = phi(x) / (x + 1/(x + 2/(x + 3/(x + ...)))), x > 1, modified Lentz.
double mills_tail(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int j = 1; j < 5000; ++j) {
    d = x + j * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = x + j / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return normal_pdf(x) / f;
}

}  // namespace

double be_constants::uniform_lower() {
  return (3.0 + std::sqrt(10.0)) / (6.0 * std::sqrt(2.0 * std::numbers::pi));
}

DiscreteDist convolve_iid(const DiscreteDist& base, int n) {
  if (n < 1) throw DomainError("convolution count n must be positive");
  if (n == 1) return base;
  if (base.size() == 1) return DiscreteDist::point_mass(n * base.atoms()[0].x);
  if (auto lat = detect_lattice(base.atoms())) return convolve_lattice(base, *lat, n);
  return convolve_generic(base, n);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_sf(double x) {
  if (std::isnan(x)) return x;
  if (x > 40.0) return 0.0;
  if (x < -40.0) return 1.0;
  if (x > 1.0) return mills_tail(x);
  if (x < -1.0) return 1.0 - mills_tail(-x);
  return 0.5 - normal_pdf(x) * odd_double_factorial_series(x);
}

double normal_cdf(double x) { return normal_sf(-x); }

std::vector<double> default_z_grid() {
  std::vector<double> z;
  for (int i = 0; i <= 80; ++i) z.push_back(0.05 * i);
  for (int i = 0; i <= 30; ++i) z.push_back(2.0 + 0.05 * i);
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), z.end());
  return z;
}

DeltaProfile delta_profile(const DiscreteDist& base, int n, const std::vector<double>& z_grid, std::string dist_id) {
  const DiscreteDist std_base = base.standardized();
  const DiscreteDist sum = convolve_iid(base, n);
  // S standardized by B = sqrt(n) sd(X_1) around its mean.
  const DiscreteDist x = sum.standardized();

  DeltaProfile prof;
  prof.dist_id = std::move(dist_id);
  prof.n = n;
  prof.beta3 = std_base.abs_moment(3.0);
  prof.r_lyapunov = prof.beta3 / std::sqrt(static_cast<double>(n));
  prof.small_n = prof.r_lyapunov >= be_constants::small_n_threshold;
  prof.z = z_grid;
  for (double z : z_grid) {
    const double d = std::abs(x.tail_gt(z) - normal_sf(z));
    prof.delta.push_back(d);
    const double norm = d * (1.0 + z * z * z) / prof.r_lyapunov;
    prof.normalized.push_back(norm);
    prof.max_normalized = std::max(prof.max_normalized, norm);
    prof.max_uniform_ratio = std::max(prof.max_uniform_ratio, d / prof.r_lyapunov);
  }
  prof.within_small_n_constant = prof.max_normalized <= be_constants::nagaev_small_n;
  prof.within_envelope = prof.max_normalized <= be_constants::nonuniform_envelope;
  return prof;
}

}  // namespace bebound
