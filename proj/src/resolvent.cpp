#include "sshd/resolvent.hpp"

#include <cmath>
#include <numbers>

namespace sshd {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

double wrapToPi(double x) {
  x = std::remainder(x, 2.0 * pi);
  return x;
}

void requireOffSpectrum(cplx z, const HoppingParams &p) {
  if (z.imag() == 0.0) {
    const double a = std::abs(z.real());
    if (a >= p.gammaMinus && a <= p.gammaPlus)
      throw OnSpectrum("z lies in the essential spectrum");
  }
}

// Panel boundaries for integrands with poles at q = phi +- q*(z^2) and
// oscillation e^{inq} up to |n| = maxFreq.
std::vector<double> resolventPoints(cplx qs, double phi, long maxFreq) {
  std::vector<double> pts{-pi, pi};
  for (double sgn : {1.0, -1.0}) {
    const double c = wrapToPi(phi + sgn * qs.real());
    const double w = std::max(std::abs(qs.imag()), 1e-12);
    pts.push_back(c);
    for (double m : {1.0, 4.0, 16.0})
      for (double s2 : {-1.0, 1.0}) {
        const double x = c + s2 * m * w;
        if (x > -pi && x < pi)
          pts.push_back(x);
      }
  }
  auto linear = [](double q) { return q; };
  return oscillation_points(linear, static_cast<double>(maxFreq) / 2.0, pts);
}

long maxFrequency(CellWindow window, std::size_t support) {
  return std::max(std::abs(window.first), std::abs(window.last)) + static_cast<long>(support) + 2;
}

LatticeWave unpack(const Eigen::VectorXcd &v, CellWindow window, double scale) {
  LatticeWave out;
  out.first = window.first;
  out.cells.resize(window.size());
  for (std::size_t j = 0; j < window.size(); ++j)
    out.cells[j] = scale * v.segment<2>(2 * j);
  return out;
}

// Fills v with e^{i(n + offset) q} * base for n across the window.
void spread(Eigen::VectorXcd &v, const Cell &base, double q, CellWindow window, long offset) {
  const cplx step = std::exp(I * q);
  cplx ph = std::exp(I * (static_cast<double>(window.first + offset) * q));
  for (std::size_t j = 0; j < window.size(); ++j) {
    v.segment<2>(2 * j) = ph * base;
    ph *= step;
    if ((j & 63u) == 63u)
      ph = std::exp(I * (static_cast<double>(window.first + offset + static_cast<long>(j) + 1) * q));
  }
}

Cell edgeMatrixTimes(cplx hq, cplx z, cplx hw, cplx hbw, const Cell &c) {
  return Cell(z * hq / hw * c(0) + hq * c(1), hbw * c(0) + z * c(1));
}

LatticeWave positiveBandJump(double lambda, const WaveFunction &f, CellWindow window,
                             const HoppingParams &p, const QuadratureSpec &spec) {
  const double theta = q_star_lambda(lambda, p);
  const double a = p.gamma1 * p.absGamma2;
  const double s = 2.0 * a * std::sin(theta);
  const FLFunction ft = fourier_laplace(f);
  const FLFunction st = fourier_laplace(right_shift(f));

  LatticeWave out;
  out.first = window.first;
  out.cells.assign(window.size(), Cell::Zero());

  // Bulk part: the delta function of k^2 - lambda^2 at q = phi +- theta.
  for (double sg : {1.0, -1.0}) {
    const double qs = p.phi + sg * theta;
    const cplx h = h_of(qs, p);
    Eigen::Matrix2cd M;
    M << lambda, h, std::conj(h), lambda;
    const Cell base = M * ft(qs) / s;
    for (std::size_t j = 0; j < window.size(); ++j) {
      const double n = static_cast<double>(window.first + static_cast<long>(j));
      out.cells[j] += I * std::exp(I * (n * qs)) * base;
    }
  }

  // Edge part: principal value plus the +-i pi delta contributions.
  const double wp = p.phi + theta, wm = p.phi - theta;
  const Cell cp = st(wp), cm = st(wm);
  const cplx hwp = h_of(wp, p), hwm = h_of(wm, p);
  const cplx hbp = h_bar(cplx(wp), p), hbm = h_bar(cplx(wm), p);
  if (window.first < 0)
    throw DomainError("edge jump requires window.first >= 0");

  auto g = [&](double u) -> Eigen::VectorXcd {
    const double q = u + p.phi;
    const cplx hq = h_of(q, p);
    const Cell base = (edgeMatrixTimes(hq, lambda, hwp, hbp, cp) -
                       edgeMatrixTimes(hq, lambda, hwm, hbm, cm)) /
                      (2.0 * a);
    Eigen::VectorXcd v(2 * window.size());
    spread(v, base, q, window, 1);
    return v;
  };
  const long maxFreq = window.last + 2;
  std::vector<double> bp;
  auto linear = [](double q) { return q; };
  for (double x : oscillation_points(linear, static_cast<double>(maxFreq) / 2.0, {-pi, pi}))
    bp.push_back(x);
  const auto pv = periodic_cosine_pv(g, theta, spec, bp).value;

  for (std::size_t j = 0; j < window.size(); ++j) {
    const double n1 = static_cast<double>(window.first + static_cast<long>(j) + 1);
    Cell delta = Cell::Zero();
    for (double sg : {1.0, -1.0}) {
      const double q = p.phi + sg * theta;
      const cplx hq = h_of(q, p);
      delta += std::exp(I * (n1 * q)) *
               (edgeMatrixTimes(hq, lambda, hwp, hbp, cp) + edgeMatrixTimes(hq, lambda, hwm, hbm, cm)) /
               s;
    }
    const Cell edge = (pv.segment<2>(2 * j) + I * pi * delta) / (2.0 * pi);
    out.cells[j] -= edge;
  }
  return out;
}

} // namespace

FLFunction::FLFunction(WaveFunction coefficients) : coeffs_(std::move(coefficients)) {}

FLFunction FLFunction::fromCallable(std::function<Cell(cplx)> fn) {
  FLFunction r;
  r.fn_ = std::move(fn);
  return r;
}

Cell FLFunction::operator()(cplx q) const {
  if (fn_)
    return fn_(q);
  // Horner in w = e^{-iq}; |w| <= 1 for Im q <= 0.
  const cplx w = std::exp(-I * q);
  Cell acc = Cell::Zero();
  for (std::size_t m = coeffs_.size(); m-- > 0;)
    acc = acc * w + coeffs_.cells[m];
  return acc;
}

WaveFunction right_shift(const WaveFunction &f) {
  WaveFunction r(f.size() + 1);
  for (std::size_t n = 0; n < f.size(); ++n)
    r.cells[n + 1] = f.cells[n];
  return r;
}

FLFunction fourier_laplace(const WaveFunction &f) { return FLFunction(f); }

WaveFunction inverse_fourier_laplace(const FLFunction &ft, std::size_t nCells, int samples) {
  if (samples < 1)
    throw DomainError("inverse_fourier_laplace: samples must be positive");
  WaveFunction out(nCells);
  std::vector<Cell> vals(samples);
  for (int j = 0; j < samples; ++j)
    vals[j] = ft(-pi + 2.0 * pi * j / samples);
  for (std::size_t m = 0; m < nCells; ++m) {
    Cell acc = Cell::Zero();
    for (int j = 0; j < samples; ++j) {
      const double q = -pi + 2.0 * pi * j / samples;
      acc += std::exp(I * (static_cast<double>(m) * q)) * vals[j];
    }
    out.cells[m] = acc / static_cast<double>(samples);
  }
  return out;
}

cplx J_closed(int n, cplx z, const HoppingParams &p) {
  requireOffSpectrum(z, p);
  const cplx qs = q_star_complex(z * z, p);
  const double a = p.gamma1 * p.absGamma2;
  return std::exp(I * (static_cast<double>(n) * p.phi)) * I *
         std::exp(-I * (static_cast<double>(std::abs(n)) * qs)) / (2.0 * a * std::sin(qs));
}

cplx K_closed(int n, cplx z, const HoppingParams &p) {
  return p.gamma1 * J_closed(n, z, p) + p.gamma2 * J_closed(n - 1, z, p);
}

Eigen::Matrix2cd I_plus_VU(cplx z, const HoppingParams &p) {
  const cplx g2b = std::conj(p.gamma2);
  Eigen::Matrix2cd M;
  M << 1.0 - g2b * K_closed(1, z, p), 0.0, -g2b * z * J_closed(1, z, p), 1.0;
  return M;
}

cplx det_I_plus_VU(cplx z, const HoppingParams &p) {
  requireOffSpectrum(z, p);
  const cplx qs = q_star_complex(z * z, p);
  return 1.0 - I * (std::exp(-I * qs) + p.absGamma2 / p.gamma1) / (2.0 * std::sin(qs));
}

LatticeWave bulk_resolvent_apply(cplx z, const WaveFunction &f, CellWindow window,
                                 const HoppingParams &p, const QuadratureSpec &spec) {
  requireOffSpectrum(z, p);
  if (window.last < window.first)
    throw DomainError("empty window");
  const cplx z2 = z * z;
  const cplx qs = q_star_complex(z2, p);
  const FLFunction ft = fourier_laplace(f);
  auto integrand = [&](double q) -> Eigen::VectorXcd {
    const cplx h = h_of(q, p);
    Eigen::Matrix2cd M;
    M << z, h, std::conj(h), z;
    const Cell base = M * ft(q) / (k2_of(q - p.phi, p) - z2);
    Eigen::VectorXcd v(2 * window.size());
    spread(v, base, q, window, 0);
    return v;
  };
  const auto pts = resolventPoints(qs, p.phi, maxFrequency(window, f.size()));
  const auto r = integrate(integrand, pts, spec);
  return unpack(r.value, window, 1.0 / (2.0 * pi));
}

LatticeWave edge_resolvent_apply(cplx z, const WaveFunction &f, CellWindow window,
                                 const HoppingParams &p, const QuadratureSpec &spec) {
  requireOffSpectrum(z, p);
  if (window.first < 0 || window.last < window.first)
    throw DomainError("edge resolvent window must satisfy 0 <= first <= last");
  if (z == 0.0 && p.topological())
    throw SingularBoundary("z = 0 is the edge eigenvalue");
  const cplx z2 = z * z;
  const cplx qs = q_star_complex(z2, p);
  const cplx w = qs + p.phi;
  const Cell c = fourier_laplace(right_shift(f))(w);
  const cplx hw = h_of(w, p), hbw = h_bar(w, p);
  auto integrand = [&](double q) -> Eigen::VectorXcd {
    const Cell base = edgeMatrixTimes(h_of(q, p), z, hw, hbw, c) / (k2_of(q - p.phi, p) - z2);
    Eigen::VectorXcd v(2 * window.size());
    spread(v, base, q, window, 1);
    return v;
  };
  const auto pts = resolventPoints(qs, p.phi, maxFrequency(window, 1));
  const auto r = integrate(integrand, pts, spec);
  return unpack(r.value, window, 1.0 / (2.0 * pi));
}

LatticeWave resolvent_apply(cplx z, const WaveFunction &f, CellWindow window,
                            const HoppingParams &p, const QuadratureSpec &spec) {
  if (window.first < 0)
    throw DomainError("resolvent window must start at cell 0 or later");
  const LatticeWave b = bulk_resolvent_apply(z, f, window, p, spec);
  const LatticeWave e = edge_resolvent_apply(z, f, window, p, spec);
  LatticeWave out = b;
  for (std::size_t j = 0; j < out.cells.size(); ++j)
    out.cells[j] -= e.cells[j];
  return out;
}

LatticeWave resolvent_boundary_jump(double lambda, const WaveFunction &f, CellWindow window,
                                    const HoppingParams &p, const QuadratureSpec &spec) {
  const double a = std::abs(lambda);
  const double tol = 1e-9;
  if (std::abs(a - p.gammaMinus) <= tol || std::abs(a - p.gammaPlus) <= tol)
    throw EndpointSingularity("lambda within 1e-9 of a band edge");
  if (a < p.gammaMinus || a > p.gammaPlus)
    throw DomainError("lambda must lie inside a band");
  if (window.first < 0 || window.last < window.first)
    throw DomainError("jump window must satisfy 0 <= first <= last");
  if (lambda > 0.0)
    return positiveBandJump(lambda, f, window, p, spec);
  return chiral_conjugate(positiveBandJump(a, chiral_conjugate(f), window, p, spec));
}

} // namespace sshd
