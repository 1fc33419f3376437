#include "sshd/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

namespace sshd {

namespace {

constexpr double pi = std::numbers::pi;

template <unsigned N> detail::GKRule buildRule() {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned K = 2 * N + 1;
  const auto &kx = gauss_kronrod<double, K>::abscissa();
  const auto &kw = gauss_kronrod<double, K>::weights();
  const auto &gx = gauss<double, N>::abscissa();
  const auto &gw = gauss<double, N>::weights();
  detail::GKRule r;
  for (std::size_t i = 0; i < kx.size(); ++i) {
    double wg = 0.0;
    for (std::size_t j = 0; j < gx.size(); ++j)
      if (std::abs(gx[j] - kx[i]) < 1e-12)
        wg = gw[j];
    r.x.push_back(kx[i]);
    r.wk.push_back(kw[i]);
    r.wg.push_back(wg);
    if (kx[i] != 0.0) {
      r.x.push_back(-kx[i]);
      r.wk.push_back(kw[i]);
      r.wg.push_back(wg);
    }
  }
  std::vector<std::size_t> idx(r.x.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return r.x[a] < r.x[b]; });
  detail::GKRule s;
  for (auto i : idx) {
    s.x.push_back(r.x[i]);
    s.wk.push_back(r.wk[i]);
    s.wg.push_back(r.wg[i]);
  }
  return s;
}

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet gslQuiet;

double expintE1(double x) {
  gsl_sf_result r;
  const int status = gsl_sf_expint_E1_e(x, &r);
  if (status == GSL_EUNDRFLW)
    return 0.0;
  if (status != GSL_SUCCESS)
    throw DomainError("expint E1 failed at x = " + std::to_string(x));
  return r.val;
}

// int_0^{pi/2} exp(-i s X cos(phi) - X sin(phi)) dphi, s = +-1
cplx arcIntegral(double X, double s) {
  QuadratureSpec spec;
  spec.relTol = 1e-13;
  spec.absTol = 1e-15;
  spec.panelOrder = 10;
  std::vector<double> pts{0.0, pi / 2};
  for (double m = 1.0; m < 1e3 && m / X < pi / 2; m *= 4.0)
    pts.push_back(m / X);
  auto f = [X, s](double ph) {
    return std::exp(cplx(-X * std::sin(ph), -s * X * std::cos(ph)));
  };
  const int panels = 1 + static_cast<int>(std::min(64.0, X / 8.0));
  return integrate(f, pts, spec, panels).value;
}

} // namespace

namespace detail {

const GKRule &gauss_kronrod_rule(int gaussOrder) {
  static std::mutex mu;
  static std::map<int, GKRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(gaussOrder);
  if (it != cache.end())
    return it->second;
  GKRule r;
  switch (gaussOrder) {
  case 7: r = buildRule<7>(); break;
  case 10: r = buildRule<10>(); break;
  case 15: r = buildRule<15>(); break;
  case 20: r = buildRule<20>(); break;
  case 25: r = buildRule<25>(); break;
  case 30: r = buildRule<30>(); break;
  default:
    throw DomainError("panelOrder must be one of 7, 10, 15, 20, 25, 30");
  }
  return cache.emplace(gaussOrder, std::move(r)).first->second;
}

} // namespace detail

void validate(const QuadratureSpec &spec) {
  if (!(spec.relTol > 0.0))
    throw DomainError("QuadratureSpec.relTol must be positive");
  if (spec.panelOrder < 4)
    throw DomainError("QuadratureSpec.panelOrder must be >= 4");
  detail::gauss_kronrod_rule(spec.panelOrder);
  if (spec.maxPanels < 1)
    throw DomainError("QuadratureSpec.maxPanels must be positive");
}

double phase_variation(const std::function<double(double)> &phase, double a, double b,
                       int samples) {
  double tv = 0.0, prev = phase(a);
  for (int j = 1; j <= samples; ++j) {
    const double cur = phase(a + (b - a) * j / samples);
    tv += std::abs(cur - prev);
    prev = cur;
  }
  return tv;
}

int oscillation_panels(const std::function<double(double)> &phase, double a, double b, double t) {
  const double tv = phase_variation(phase, a, b) * std::abs(t);
  return 1 + static_cast<int>(std::ceil(tv / (2.0 * pi)));
}

std::vector<double> oscillation_points(const std::function<double(double)> &phase, double t,
                                       std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<double> out;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const double a = points[s], b = points[s + 1];
    const int m = oscillation_panels(phase, a, b, t);
    for (int j = 0; j < m; ++j)
      out.push_back(a + (b - a) * j / m);
  }
  out.push_back(points.back());
  return out;
}

QuadResult<cplx> oscillatory_integral(const std::function<cplx(double)> &amplitude,
                                      const std::function<double(double)> &phase, double t,
                                      double a, double b, const QuadratureSpec &spec,
                                      const std::vector<double> &breakpoints) {
  std::vector<double> pts{a, b};
  for (double x : breakpoints)
    if (x > a && x < b)
      pts.push_back(x);
  pts = oscillation_points(phase, t, pts);
  auto f = [&](double y) { return amplitude(y) * std::exp(cplx(0.0, -phase(y) * t)); };
  return integrate(f, pts, spec);
}

ContourPieces pv_oscillatory_contour_pieces(double Ayt, double Byt) {
  if (!(Ayt > 0.0) || !(Byt > 0.0))
    throw DegenerateInterval("pv_oscillatory_contour: Ayt and Byt must be positive");
  ContourPieces c;
  c.arcB = cplx(0.0, -1.0) * arcIntegral(Byt, +1.0);
  c.arcA = cplx(0.0, -1.0) * arcIntegral(Ayt, -1.0);
  c.vertical = expintE1(Ayt) - expintE1(Byt);
  c.value = cplx(0.0, -pi) - c.arcB - c.arcA + c.vertical;
  return c;
}

cplx pv_oscillatory_contour(double Ayt, double Byt) {
  return pv_oscillatory_contour_pieces(Ayt, Byt).value;
}

std::vector<double> phase_panels(std::vector<double> points,
                                 const std::function<double(double)> &phase, double t, double freq) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<double> out;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const double a = points[s], b = points[s + 1];
    const double cycles = (phase_variation(phase, a, b) * std::abs(t) + std::abs(freq) * (b - a)) /
                          (2.0 * pi);
    const int m = 1 + static_cast<int>(std::ceil(cycles));
    for (int j = 0; j < m; ++j)
      out.push_back(a + (b - a) * j / m);
  }
  if (!points.empty())
    out.push_back(points.back());
  return out;
}

double detail::alpha_power(double u, double alpha) { return std::pow(u, alpha); }

double default_alpha(double t) {
  return std::min(3.0, 2.0 + 1.0 / std::log(std::sqrt(2.0 + t * t)));
}

} // namespace sshd
