#include "sshd/dispersion.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/tools/roots.hpp>

namespace sshd {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kClampSlop = 1e-12;

double clampUnit(double x) {
  if (x > 1.0 && x <= 1.0 + kClampSlop)
    return 1.0;
  if (x < -1.0 && x >= -1.0 - kClampSlop)
    return -1.0;
  return x;
}

double bisect(const std::function<double(double)> &f, double lo, double hi) {
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13; };
  const auto r = boost::math::tools::bisect(f, lo, hi, tol);
  return 0.5 * (r.first + r.second);
}

} // namespace

double k2_of(double y, const HoppingParams &p) {
  const double c = std::cos(0.5 * y);
  return p.gammaMinus * p.gammaMinus + 4.0 * p.gamma1 * p.absGamma2 * c * c;
}

double k_of(double y, const HoppingParams &p) { return std::sqrt(std::max(0.0, k2_of(y, p))); }

cplx k2_of(cplx q, const HoppingParams &p) {
  return p.gamma1 * p.gamma1 + p.absGamma2 * p.absGamma2 +
         2.0 * p.gamma1 * p.absGamma2 * std::cos(q);
}

cplx h_of(cplx q, const HoppingParams &p) {
  return p.gamma1 + p.gamma2 * std::exp(cplx(0.0, -1.0) * q);
}

cplx h_bar(cplx q, const HoppingParams &p) {
  return p.gamma1 + std::conj(p.gamma2) * std::exp(cplx(0.0, 1.0) * q);
}

int winding_number(const HoppingParams &p, int samples) {
  double total = 0.0;
  cplx prev = h_of(-pi, p);
  for (int j = 1; j <= samples; ++j) {
    const double q = -pi + 2.0 * pi * j / samples;
    const cplx cur = h_of(q, p);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(std::abs(total) / (2.0 * pi)));
}

double eta_of(double lambda, const HoppingParams &p) {
  const double lo = p.gammaMinus, hi = p.gammaPlus;
  const double slop = 1e-12 * hi;
  if (lambda < lo - slop || lambda > hi + slop)
    throw DomainError("eta_of: lambda outside [gamma-, gamma+]");
  const double eta = (lambda * lambda - p.gamma1 * p.gamma1 - p.absGamma2 * p.absGamma2) /
                     (2.0 * p.gamma1 * p.absGamma2);
  return std::clamp(eta, -1.0, 1.0);
}

cplx eta_of_omega(cplx omega, const HoppingParams &p) {
  return (omega - p.gamma1 * p.gamma1 - p.absGamma2 * p.absGamma2) /
         (2.0 * p.gamma1 * p.absGamma2);
}

cplx eta_of_energy(cplx z, const HoppingParams &p) { return eta_of_omega(z * z, p); }

double q_star_lambda(double lambda, const HoppingParams &p) {
  const double a = std::abs(lambda);
  if (a < p.gammaMinus - 1e-12 * p.gammaPlus || a > p.gammaPlus * (1.0 + 1e-12))
    throw DomainError("q_star_lambda: |lambda| outside the bands");
  const double q = std::acos(clampUnit(eta_of(std::clamp(a, p.gammaMinus, p.gammaPlus), p)));
  return lambda < 0.0 ? -q : q;
}

cplx q_star_complex(cplx omega, const HoppingParams &p) {
  const double lo = p.gammaMinus * p.gammaMinus, hi = p.gammaPlus * p.gammaPlus;
  if (omega.imag() == 0.0 && omega.real() >= lo && omega.real() <= hi)
    throw OnBandCut("q_star_complex: omega lies on [gamma-^2, gamma+^2]");
  const cplx eta = eta_of_omega(omega, p);
  const cplx s = std::sqrt(eta * eta - 1.0);
  // The two candidates i ln(eta +- s) are negatives of each other; form the
  // larger root directly and invert it to avoid cancellation.
  const cplx wPlus = eta + s, wMinus = eta - s;
  const cplx wBig = std::abs(wPlus) >= std::abs(wMinus) ? wPlus : wMinus;
  const double mag = std::abs(wBig);
  if (!(mag > 1.0))
    throw OnBandCut("q_star_complex: no candidate in the open lower half-strip");
  // q = i ln(1/wBig) = arg(wBig) - i ln|wBig|
  double re = std::arg(wBig);
  if (re <= -pi)
    re = pi;
  return {re, -std::log(mag)};
}

double q_star_boundary(double lambda, Side side, const HoppingParams &p) {
  const double q = q_star_lambda(lambda, p);
  return side == Side::Plus ? q : -q;
}

double k_derivative(double y, int order, const HoppingParams &p) {
  const double a = p.gamma1 * p.absGamma2;
  const double k = k_of(y, p);
  const double s = std::sin(y), c = std::cos(y);
  switch (order) {
  case 1:
    return -a * s / k;
  case 2:
    return -a * (c / k + a * s * s / (k * k * k));
  case 3:
    return -a * (3.0 * a * c * s / std::pow(k, 3) + 3.0 * a * a * s * s * s / std::pow(k, 5) -
                 s / k);
  case 4:
    return -a * (15.0 * a * a * a * std::pow(s, 4) / std::pow(k, 7) +
                 18.0 * a * a * s * s * c / std::pow(k, 5) +
                 a * (3.0 * c * c - 4.0 * s * s) / std::pow(k, 3) - c / k);
  default:
    throw DomainError("k_derivative: order must be 1..4");
  }
}

double A_of(double y, const HoppingParams &p) {
  const double c = std::cos(0.5 * y);
  return 4.0 * p.gamma1 * p.absGamma2 * c * c / (k_of(y, p) + p.gammaMinus);
}

double B_of(double y, const HoppingParams &p) {
  const double s = std::sin(0.5 * y);
  return 4.0 * p.gamma1 * p.absGamma2 * s * s / (p.gammaPlus + k_of(y, p));
}

double abs_k_prime(double y, const HoppingParams &p) {
  return p.gamma1 * p.absGamma2 * std::abs(std::sin(y)) / k_of(y, p);
}

PhaseGeometry phase_geometry(const HoppingParams &p) {
  if (p.gapless())
    throw GaplessModel("phase_geometry requires gamma1 != |gamma2|");
  const double G = p.G;
  const double mn = p.minHopping(), mx = std::max(p.gamma1, p.absGamma2);
  PhaseGeometry g;
  g.yM = std::acos(-mn / mx);
  g.vMax = mn;
  g.cA = g.cB = 2.0 * mn / (pi * pi);

  using std::cos;
  using std::sin;
  using std::sqrt;
  auto eqL12 = [G](double y) {
    return (1.0 + cos(y) * cos(y) - sin(2.0 * y)) / (sin(y) - cos(y)) - G;
  };
  auto eqR12 = [G](double y) {
    return -(1.0 + cos(y) * cos(y) + sin(2.0 * y)) / (sin(y) + cos(y)) - G;
  };
  auto eqL23 = [G](double y) {
    return sin(y) * (sin(y) + 3.0 * cos(y) + sqrt(9.0 + 4.0 * sin(y) * sin(y) - 3.0 * sin(2.0 * y))) /
               (2.0 * (sin(y) - cos(y))) -
           2.0 * cos(y) - G;
  };
  auto eqR23 = [G](double y) {
    return sin(y) * (3.0 * cos(y) - sin(y) - sqrt(9.0 + 4.0 * sin(y) * sin(y) + 3.0 * sin(2.0 * y))) /
               (2.0 * (sin(y) + cos(y))) -
           2.0 * cos(y) - G;
  };
  const double inset = 1e-9;
  g.yL12 = bisect(eqL12, pi / 4 + inset, pi / 2 - inset);
  g.yR12 = bisect(eqR12, 3 * pi / 4 + inset, pi - inset);
  g.yL23 = bisect(eqL23, pi / 4 + inset, 3 * pi / 4 - inset);
  g.yR23 = bisect(eqR23, 3 * pi / 4 + inset, pi - inset);
  return g;
}

double chebyshev_T(int n, double x) {
  if (std::abs(x) > 1.0 + kClampSlop)
    throw DomainError("chebyshev_T: |x| > 1");
  return std::cos(n * std::acos(std::clamp(x, -1.0, 1.0)));
}

} // namespace sshd
