#include "bebound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace bebound::quad {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  std::complex<double> value;
  double error;
  double abs_value;
};

struct LargerError {
  bool operator()(const Panel& l, const Panel& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.a > r.a;
  }
};

Panel make_panel(const ComplexIntegrand& f, double a, double b) {
  const PanelEstimate e = gauss_kronrod_15(f, a, b);
  const double err = std::abs(e.kronrod - e.gauss) + 50.0 * kEps * e.abs_kronrod;
  return {a, b, e.kronrod, err, e.abs_kronrod};
}

// Neumaier summation of complex values.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    add_part(v.real(), re_, re_c_);
    add_part(v.imag(), im_, im_c_);
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double v, double& s, double& c) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

}  // namespace

PanelEstimate gauss_kronrod_15(const ComplexIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(center);
  std::complex<double> k = fc * kWgk[7];
  std::complex<double> g = fc * kWg[3];
  double abs_k = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const std::complex<double> f1 = f(center - dx);
    const std::complex<double> f2 = f(center + dx);
    k += kWgk[j] * (f1 + f2);
    abs_k += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  const double scale = std::abs(half);
  return {k * half, g * half, abs_k * scale};
}

ComplexResult integrate(const ComplexIntegrand& f, double a, double b, const Options& opt) {
  ComplexResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double length = b - a;
  int pieces = 1;
  if (opt.initial_panel_width > 0.0) {
    const double n = std::ceil(std::abs(length) / opt.initial_panel_width);
    pieces = static_cast<int>(std::clamp(n, 1.0, static_cast<double>(opt.max_subdivisions)));
  }

  std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
  double total_error = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + length * i / pieces;
    const double hi = (i + 1 == pieces) ? b : a + length * (i + 1) / pieces;
    Panel p = make_panel(f, lo, hi);
    total_error += p.error;
    queue.push(p);
  }

  int count = pieces;
  while (total_error > opt.abs_tol && count < opt.max_subdivisions) {
    Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    queue.pop();
    Panel left = make_panel(f, worst.a, mid);
    Panel right = make_panel(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++count;
  }

  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  CompensatedSum sum;
  double err = 0.0;
  double abs_sum = 0.0;
  for (const Panel& p : panels) {
    sum.add(p.value);
    err += p.error;
    abs_sum += p.abs_value;
  }
  out.value = sum.value();
  out.abs_error = err;
  out.abs_integral = abs_sum;
  out.subdivisions = count;
  out.converged = err <= opt.abs_tol;
  return out;
}

RealResult integrate_real(const RealIntegrand& f, double a, double b, const Options& opt) {
  const ComplexResult r = integrate([&f](double t) { return std::complex<double>(f(t), 0.0); }, a, b, opt);
  return {r.value.real(), r.abs_error, r.subdivisions, r.converged};
}

}  // namespace bebound::quad
