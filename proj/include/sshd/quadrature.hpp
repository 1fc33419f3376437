#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "sshd/errors.hpp"

namespace sshd {

using cplx = std::complex<double>;

struct QuadratureSpec {
  double relTol = 1e-8;
  double absTol = 1e-13;
  int maxPanels = 200000;
  int panelOrder = 7; // Gauss nodes per panel; Kronrod extension uses 2n+1
  bool splitAtCriticalPoints = true;
  double pvExcision = 0.0; // > 0 selects symmetric excision of this relative half-width

  QuadratureSpec tightened(double factor) const {
    QuadratureSpec s = *this;
    s.relTol *= factor;
    s.absTol *= factor;
    return s;
  }
};

void validate(const QuadratureSpec &spec);

template <class V> struct QuadResult {
  V value;
  double error = 0.0;
  int panels = 0;
  int evaluations = 0;
};

namespace detail {

struct GKRule {
  std::vector<double> x;  // Kronrod abscissae on [-1, 1], ascending
  std::vector<double> wk; // Kronrod weights
  std::vector<double> wg; // Gauss weights aligned with x, zero for Kronrod-only nodes
};

const GKRule &gauss_kronrod_rule(int gaussOrder);

inline double qnorm(double v) { return std::abs(v); }
inline double qnorm(const cplx &v) { return std::abs(v); }
template <class Derived> double qnorm(const Eigen::MatrixBase<Derived> &v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

template <class V> V zeroLike(const V &v) {
  if constexpr (std::is_arithmetic_v<V> || std::is_same_v<V, cplx>)
    return V(0);
  else
    return V::Zero(v.rows(), v.cols());
}

template <class V> struct Panel {
  double a, b;
  V value;
  double error;
  double floor; // roundoff level 50 eps int |f| over the panel
  bool operator<(const Panel &o) const { return error < o.error; }
};

template <class V, class F> Panel<V> evalPanel(F &f, double a, double b, const GKRule &r) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const std::size_t n = r.x.size();
  std::vector<V> vals;
  vals.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    vals.push_back(f(c + h * r.x[j]));
  V k = zeroLike(vals[0]);
  V g = zeroLike(vals[0]);
  for (std::size_t j = 0; j < n; ++j) {
    k += r.wk[j] * vals[j];
    if (r.wg[j] != 0.0)
      g += r.wg[j] * vals[j];
  }
  const V mean = (0.5 * k);
  double resasc = 0.0, resabs = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    resasc += r.wk[j] * qnorm(vals[j] - mean);
    resabs += r.wk[j] * qnorm(vals[j]);
  }
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  k *= h;
  g *= h;
  double err = qnorm(k - g);
  if (resasc > 0.0 && err > 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (!std::isfinite(resabs))
    throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                      std::to_string(b) + "]");
  const double floor = 50.0 * 2.220446049250313e-16 * resabs;
  err = std::max(err, floor);
  return {a, b, k, err, floor};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod integration of a scalar, complex or
// Eigen-vector valued integrand over [points.front(), points.back()], with the
// interior points as mandatory panel boundaries. Each segment is pre-split into
// `minPanels` equal panels.
template <class F>
auto integrate(F &&f, std::vector<double> points, const QuadratureSpec &spec, int minPanels = 1)
    -> QuadResult<std::decay_t<decltype(f(0.0))>> {
  using V = std::decay_t<decltype(f(0.0))>;
  const auto &rule = detail::gauss_kronrod_rule(spec.panelOrder);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  QuadResult<V> res;
  if (points.size() < 2) {
    res.value = detail::zeroLike(f(points.empty() ? 0.0 : points[0]));
    return res;
  }
  std::priority_queue<detail::Panel<V>> queue;
  std::vector<detail::Panel<V>> done;
  double totalErr = 0.0, totalFloor = 0.0, doneErr = 0.0;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const double a = points[s], b = points[s + 1];
    const int m = std::max(1, minPanels);
    for (int j = 0; j < m; ++j) {
      const double pa = a + (b - a) * j / m, pb = (j + 1 == m) ? b : a + (b - a) * (j + 1) / m;
      auto pan = detail::evalPanel<V>(f, pa, pb, rule);
      totalErr += pan.error;
      totalFloor += pan.floor;
      queue.push(std::move(pan));
    }
  }
  auto total = [&]() {
    auto copy = queue;
    std::vector<detail::Panel<V>> tmp;
    while (!copy.empty()) {
      tmp.push_back(copy.top());
      copy.pop();
    }
    for (const auto &d : done)
      tmp.push_back(d);
    std::sort(tmp.begin(), tmp.end(), [](const auto &x, const auto &y) { return x.a < y.a; });
    V v = detail::zeroLike(tmp.front().value);
    double e = 0.0;
    for (const auto &t : tmp) {
      v += t.value;
      e += t.error;
    }
    return std::make_pair(v, e);
  };
  // Running sum for the stopping test; the reported value is re-summed in
  // positional order at the end for reproducibility.
  V running = detail::zeroLike(queue.top().value);
  {
    auto copy = queue;
    while (!copy.empty()) {
      running += copy.top().value;
      copy.pop();
    }
  }
  int panels = static_cast<int>(queue.size());
  const double width = points.back() - points.front();
  while (!queue.empty()) {
    const double target =
        std::max({spec.absTol, spec.relTol * detail::qnorm(running), 4.0 * totalFloor});
    if (totalErr - doneErr <= target)
      break;
    if (panels >= spec.maxPanels)
    {
      std::ostringstream msg;
      msg << "adaptive quadrature hit maxPanels = " << spec.maxPanels << " (error "
          << totalErr - doneErr << ", target " << target << ")";
      throw BudgetExceeded(msg.str());
    }
    auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a <= 1e-15 * std::max(1.0, width) || mid <= worst.a || mid >= worst.b) {
      // Too narrow to split further; its error is reported but no longer drives refinement.
      doneErr += worst.error;
      done.push_back(std::move(worst));
      continue;
    }
    auto left = detail::evalPanel<V>(f, worst.a, mid, rule);
    auto right = detail::evalPanel<V>(f, mid, worst.b, rule);
    totalErr += left.error + right.error - worst.error;
    totalFloor += left.floor + right.floor - worst.floor;
    running += left.value + right.value - worst.value;
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++panels;
  }
  auto [v, e] = total();
  res.value = v;
  res.error = e;
  res.panels = panels;
  res.evaluations = panels * static_cast<int>(rule.x.size());
  return res;
}

// Total variation of phase(y) over [a, b], estimated on a uniform grid.
double phase_variation(const std::function<double(double)> &phase, double a, double b,
                       int samples = 64);

// Number of equal panels per unit length so that each panel carries at most
// about one period of exp(-i phase t).
int oscillation_panels(const std::function<double(double)> &phase, double a, double b, double t);

// Sorted panel boundaries: the given points with each segment split into
// oscillation_panels equal pieces.
std::vector<double> oscillation_points(const std::function<double(double)> &phase, double t,
                                       std::vector<double> points);

// int_a^b amplitude(y) exp(-i phase(y) t) dy.
QuadResult<cplx> oscillatory_integral(const std::function<cplx(double)> &amplitude,
                                      const std::function<double(double)> &phase, double t,
                                      double a, double b, const QuadratureSpec &spec,
                                      const std::vector<double> &breakpoints = {});

// Principal value of int_a^b density(u)/(u - pole) du by singularity subtraction:
// int (density(u) - density(pole))/(u - pole) du + density(pole) ln((b - pole)/(pole - a)).
// With spec.pvExcision > 0 uses symmetric excision instead.
template <class F>
auto pv_integral(F &&density, double a, double b, double pole, const QuadratureSpec &spec,
                 std::vector<double> breakpoints = {})
    -> QuadResult<std::decay_t<decltype(density(0.0))>> {
  using V = std::decay_t<decltype(density(0.0))>;
  if (!(pole > a && pole < b))
    throw PoleAtEndpoint("pv_integral: pole must lie strictly inside (a, b)");
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  if (spec.pvExcision > 0.0) {
    const double d = spec.pvExcision * (b - a);
    if (!(pole - d > a && pole + d < b))
      throw PoleAtEndpoint("pv_integral: excision window reaches an endpoint");
    auto g = [&](double u) -> V { return density(u) / (u - pole); };
    std::vector<double> left{a, pole - d}, right{pole + d, b};
    for (double x : breakpoints) {
      if (x > a && x < pole - d)
        left.push_back(x);
      if (x > pole + d && x < b)
        right.push_back(x);
    }
    auto r1 = integrate(g, left, spec);
    auto r2 = integrate(g, right, spec);
    QuadResult<V> r;
    r.value = r1.value + r2.value;
    r.error = r1.error + r2.error;
    r.panels = r1.panels + r2.panels;
    return r;
  }
  const V atPole = density(pole);
  auto g = [&](double u) -> V { return (density(u) - atPole) / (u - pole); };
  std::vector<double> pts;
  for (double x : breakpoints)
    if (x >= a && x <= b)
      pts.push_back(x);
  pts.push_back(pole);
  auto r = integrate(g, pts, spec);
  r.value += std::log((b - pole) / (pole - a)) * atPole;
  return r;
}

// Principal value over a full period of g(u)/(cos u - cos theta), theta in (0, pi),
// by subtracting a + b sin u matched to g at the two poles u = +-theta.
template <class F>
auto periodic_cosine_pv(F &&g, double theta, const QuadratureSpec &spec,
                        std::vector<double> breakpoints = {})
    -> QuadResult<std::decay_t<decltype(g(0.0))>> {
  using V = std::decay_t<decltype(g(0.0))>;
  constexpr double pi = 3.14159265358979323846;
  if (!(theta > 0.0 && theta < pi))
    throw PoleAtEndpoint("periodic_cosine_pv: theta must lie in (0, pi)");
  const V gp = g(theta), gm = g(-theta);
  const V a = 0.5 * (gp + gm);
  const V b = (0.5 / std::sin(theta)) * (gp - gm);
  auto reg = [&](double u) -> V {
    const double den = -2.0 * std::sin(0.5 * (u + theta)) * std::sin(0.5 * (u - theta));
    return (g(u) - a - std::sin(u) * b) / den;
  };
  breakpoints.push_back(-pi);
  breakpoints.push_back(pi);
  breakpoints.push_back(theta);
  breakpoints.push_back(-theta);
  std::vector<double> pts;
  for (double x : breakpoints)
    if (x >= -pi && x <= pi)
      pts.push_back(x);
  return integrate(reg, pts, spec);
}

// PV int_{-Ayt}^{Byt} e^{-iu}/u du by contour deformation into the lower half plane.
struct ContourPieces {
  cplx value;      // the principal value
  cplx arcB;       // int over C1 (radius Byt)
  cplx arcA;       // int over C2 (radius Ayt)
  double vertical; // int_{min}^{max} e^{-x}/x dx
};

ContourPieces pv_oscillatory_contour_pieces(double Ayt, double Byt);
cplx pv_oscillatory_contour(double Ayt, double Byt);

// Sorted panel boundaries for an integrand carrying exp(-i phase t) and an
// extra linear oscillation of `freq` radians per unit length.
std::vector<double> phase_panels(std::vector<double> points,
                                 const std::function<double(double)> &phase, double t, double freq);

// int_0^{(upper-kY)^{1/alpha}} e^{-i u^alpha t} N(u) du with
// N(u) = (F(kY + u^alpha) - F(kY))/u, i.e. u^{-1} int_{kY}^{kY+u^alpha} F'(s) ds.
// F is called as F(lambda), or as F(lambda, lambda - kY) when it accepts the
// exact offset as a second argument (for data that is ill-conditioned in lambda).
namespace detail {
template <class T, class = void> struct ComplexPlain {
  using type = cplx;
};
template <class T> struct ComplexPlain<T, std::void_t<typename T::PlainObject>> {
  using type = Eigen::Matrix<cplx, T::RowsAtCompileTime, T::ColsAtCompileTime>;
};
double alpha_power(double u, double alpha);

template <class F> decltype(auto) callWithOffset(F &f, double kY, double v) {
  if constexpr (std::is_invocable_v<F &, double, double>)
    return f(kY + v, v);
  else
    return f(kY + v);
}
template <class F>
using OffsetResult = std::decay_t<decltype(callWithOffset(std::declval<F &>(), 0.0, 0.0))>;
} // namespace detail

template <class F>
QuadResult<typename detail::ComplexPlain<detail::OffsetResult<F>>::type>
alpha_substitution_integral(F &&Fn, double kY, double upper, double alpha, double t,
                            const QuadratureSpec &spec) {
  using V = typename detail::ComplexPlain<detail::OffsetResult<F>>::type;
  if (!(alpha > 2.0 && alpha <= 3.0))
    throw AlphaOutOfRange("alpha must lie in (2, 3]");
  if (!(kY >= 0.0 && kY < upper))
    throw DomainError("alpha_substitution_integral requires 0 <= kY < upper");
  const double span = upper - kY;
  const double U = std::pow(span, 1.0 / alpha);
  const V F0 = detail::callWithOffset(Fn, kY, 0.0);
  auto g = [&](double u) -> V {
    if (u <= 0.0)
      return detail::zeroLike(F0);
    const double ua = std::pow(u, alpha);
    const V diff = detail::callWithOffset(Fn, kY, std::min(span, ua)) - F0;
    return std::exp(cplx(0.0, -ua * t)) * diff / u;
  };
  const std::function<double(double)> phase =
      std::bind(&detail::alpha_power, std::placeholders::_1, alpha);
  return integrate(g, phase_panels({0.0, U}, phase, t, 0.0), spec);
}

// alpha = 2 + 1/ln sqrt(2 + t^2)
double default_alpha(double t);

} // namespace sshd
