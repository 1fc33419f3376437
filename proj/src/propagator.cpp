#include "sshd/propagator.hpp"

#include <cmath>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_expint.h>

#include "sshd/parallel.hpp"

namespace sshd {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Nearest-neighbour chain of nCells cells with zero amplitude outside; cell 0
// carries the Dirichlet convention. Amplitudes are interleaved A0, B0, A1, ...
class ChainOperator {
public:
  ChainOperator(const HoppingParams &p, std::size_t nCells, Termination term)
      : g1_(p.gamma1), g2_(p.gamma2), n_(nCells),
        dropLastB_(term == Termination::StrongBond && p.topological()) {}

  std::size_t dim() const { return 2 * n_; }
  std::size_t cells() const { return n_; }

  // s * (H v) at cell c; v must vanish outside the chain.
  Cell at(const Eigen::VectorXcd &v, std::size_t c, double s) const {
    const cplx bPrev = c > 0 ? v[2 * c - 1] : cplx(0.0);
    const cplx aNext = c + 1 < n_ ? v[2 * c + 2] : cplx(0.0);
    Cell out(s * (g1_ * v[2 * c + 1] + g2_ * bPrev), s * (g1_ * v[2 * c] + std::conj(g2_) * aNext));
    if (dropLastB_ && c + 1 == n_)
      out[1] = 0.0;
    return out;
  }

private:
  double g1_;
  cplx g2_;
  std::size_t n_;
  bool dropLastB_;
};

// v <- e^{-iH dt} v with ||H|| <= scale. Work is restricted to the support of
// v, widened by one cell per Chebyshev term; tails below 1e-22 |v| are cut
// first, which also keeps the far field out of subnormal arithmetic.
void chebyshevStep(const ChainOperator &H, double scale, double dt, Eigen::VectorXcd &v) {
  if (dt == 0.0)
    return;
  const double tau = scale * dt;
  const double atau = std::abs(tau);
  const int K = static_cast<int>(std::ceil(1.1 * atau + 40.0 + 8.0 * std::cbrt(atau)));
  std::vector<double> J(K + 1);
  if (gsl_sf_bessel_Jn_array(0, K, atau, J.data()) != GSL_SUCCESS)
    throw DomainError("Bessel array evaluation failed");
  int last = K;
  while (last > static_cast<int>(atau) + 1 && std::abs(J[last]) < 1e-17)
    --last;

  const long n = static_cast<long>(H.cells());
  const double cut = 1e-22 * v.cwiseAbs().maxCoeff();
  long lo = 0, hi = n - 1;
  while (lo < hi && v.segment<2>(2 * lo).norm() <= cut)
    v.segment<2>(2 * lo++).setZero();
  while (hi > lo && v.segment<2>(2 * hi).norm() <= cut)
    v.segment<2>(2 * hi--).setZero();

  // J_k(-x) = (-1)^k J_k(x)
  const double sgn = tau < 0.0 ? -1.0 : 1.0;
  auto coeff = [&](int k) {
    static const cplx powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return (k == 0 ? 1.0 : 2.0) * (k % 2 == 1 ? sgn : 1.0) * J[k] * powers[k % 4];
  };
  Eigen::VectorXcd t0 = v, t1 = Eigen::VectorXcd::Zero(v.size()), t2 = Eigen::VectorXcd::Zero(v.size());
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
  const cplx c0 = coeff(0);
  for (long c = lo; c <= hi; ++c)
    acc.segment<2>(2 * c) = c0 * t0.segment<2>(2 * c);
  if (last >= 1) {
    lo = std::max(0L, lo - 1);
    hi = std::min(n - 1, hi + 1);
    const cplx c1 = coeff(1);
    for (long c = lo; c <= hi; ++c) {
      const Cell h = H.at(t0, static_cast<std::size_t>(c), 1.0 / scale);
      t1.segment<2>(2 * c) = h;
      acc.segment<2>(2 * c) += c1 * h;
    }
  }
  for (int k = 2; k <= last; ++k) {
    lo = std::max(0L, lo - 1);
    hi = std::min(n - 1, hi + 1);
    const cplx ck = coeff(k);
    for (long c = lo; c <= hi; ++c) {
      const Cell h = H.at(t1, static_cast<std::size_t>(c), 2.0 / scale) - t0.segment<2>(2 * c);
      t2.segment<2>(2 * c) = h;
      acc.segment<2>(2 * c) += ck * h;
    }
    std::swap(t0, t1);
    std::swap(t1, t2);
  }
  v = std::move(acc);
}

std::vector<Eigen::VectorXcd> chainEvolve(const ChainOperator &H, double scale,
                                          const Eigen::VectorXcd &v0,
                                          const std::vector<double> &times) {
  const double maxTau = 400.0;
  std::vector<std::size_t> order(times.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  std::vector<Eigen::VectorXcd> out(times.size());
  Eigen::VectorXcd v = v0;
  double now = 0.0;
  for (std::size_t i : order) {
    double remaining = times[i] - now;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(remaining) * scale / maxTau)));
    for (int s = 0; s < steps; ++s)
      chebyshevStep(H, scale, remaining / steps, v);
    now = times[i];
    out[i] = v;
  }
  return out;
}

std::vector<double> kBreakpoints(const HoppingParams &p, const QuadratureSpec &spec) {
  std::vector<double> pts{0.0, pi};
  const PhaseGeometry g = phase_geometry(p);
  pts.push_back(g.yM);
  if (spec.splitAtCriticalPoints)
    for (double y : {g.yL12, g.yR12, g.yL23, g.yR23})
      if (y > 0.0 && y < pi)
        pts.push_back(y);
  return pts;
}

void requireGapped(const HoppingParams &p, const char *what) {
  if (p.gapless())
    throw GaplessModel(std::string(what) + " requires gamma- > 0");
}

// max |f~(q)| on a coarse grid of [0, pi].
double dataScale(const FLFunction &ft) {
  double m = 0.0;
  for (int j = 0; j <= 64; ++j)
    m = std::max(m, ft(pi * j / 64.0).norm());
  return m;
}

// F(k(y) + v) with the distances to both band edges formed without cancellation:
// 1 - eta = (B - v)(gamma+ + k + v)/(2a), 1 + eta = (A + v)(gamma- + k + v)/(2a).
Cell bandDataNear(const FLFunction &ft, double kY, double A, double B, double v,
                  const HoppingParams &p) {
  const double lambda = kY + v;
  const double minus = std::max(0.0, (B - v) * (p.gammaPlus + lambda));
  const double plus = std::max(0.0, (A + v) * (p.gammaMinus + lambda));
  return ft(2.0 * std::atan2(std::sqrt(minus), std::sqrt(plus)));
}

// int_{(gamma- + k)t}^{(gamma+ + k)t} e^{-iu}/u du
cplx expIntegralBetween(double kY, double t, const HoppingParams &p) {
  if (t == 0.0)
    return std::log((p.gammaPlus + kY) / (p.gammaMinus + kY));
  const double at = std::abs(t);
  const double a = (p.gammaMinus + kY) * at, b = (p.gammaPlus + kY) * at;
  const cplx v(gsl_sf_Ci(b) - gsl_sf_Ci(a), -(gsl_sf_Si(b) - gsl_sf_Si(a)));
  return t > 0.0 ? v : std::conj(v);
}

// PV int_{gamma-}^{gamma+} e^{-i(lambda - k(y))t}/(lambda - k(y)) dlambda
cplx innerPrincipalValue(double y, double t, const HoppingParams &p) {
  const double A = A_of(y, p), B = B_of(y, p);
  if (t == 0.0)
    return std::log(B / A);
  const double at = std::abs(t);
  const cplx v = pv_oscillatory_contour(A * at, B * at);
  return t > 0.0 ? v : std::conj(v);
}

// (y - x)/(k(y) - k(x)), finite at y = x.
double inverseSlope(double y, double x, const HoppingParams &p) {
  const double a = p.gamma1 * p.absGamma2;
  const double s = 0.5 * (y - x);
  const double sinc = std::abs(s) < 1e-4 ? 1.0 - s * s / 6.0 : std::sin(s) / s;
  return -(k_of(y, p) + k_of(x, p)) / (2.0 * a * std::sin(0.5 * (y + x)) * sinc);
}

struct InnerIntegrals {
  Eigen::VectorXd pv; // PV int_0^pi cos(my)/(k(y) - k(x)) dy
  Eigen::VectorXd r;  // int_0^pi cos(my)/(k(y) + k(x)) dy
};

InnerIntegrals innerIntegrals(double x, long mlo, long mhi, const HoppingParams &p,
                              const QuadratureSpec &spec, const std::vector<double> &bps) {
  const long W = mhi - mlo + 1;
  const double kx = k_of(x, p);
  auto cosines = [&](double y) {
    Eigen::VectorXd c(W);
    for (long j = 0; j < W; ++j)
      c[j] = std::cos(static_cast<double>(mlo + j) * y);
    return c;
  };
  std::vector<double> pts = bps;
  for (double f : {0.5, 2.0}) {
    if (x * f < pi)
      pts.push_back(x * f);
    if ((pi - x) * f < pi)
      pts.push_back(pi - (pi - x) * f);
  }
  const double freq = static_cast<double>(std::max(std::abs(mlo), std::abs(mhi)));
  auto flat = [](double) { return 0.0; };
  const auto panels = phase_panels(pts, flat, 0.0, freq);
  auto density = [&](double y) -> Eigen::VectorXd { return cosines(y) * inverseSlope(y, x, p); };
  InnerIntegrals out;
  std::vector<double> interior;
  for (double b : panels)
    if (b > 0.0 && b < pi && std::abs(b - x) > 1e-12)
      interior.push_back(b);
  out.pv = pv_integral(density, 0.0, pi, x, spec, interior).value;
  auto plus = [&](double y) -> Eigen::VectorXd { return cosines(y) / (k_of(y, p) + kx); };
  out.r = integrate(plus, panels, spec).value;
  return out;
}

LatticeWave emptyWave(CellWindow w) {
  LatticeWave out;
  out.first = w.first;
  out.cells.assign(w.size(), Cell::Zero());
  return out;
}

} // namespace

std::size_t causal_cells(const HoppingParams &p, std::size_t support, long outLast, double tMax) {
  const double reach = p.vMax() * std::abs(tMax);
  const double margin = 40.0 + 15.0 * std::cbrt(reach);
  const double base = std::max<double>(static_cast<double>(outLast + 1), static_cast<double>(support));
  return static_cast<std::size_t>(std::ceil(base + reach + margin));
}

std::vector<WaveFunction> oracle_evolve(const EvolutionRequest &req, std::size_t nCells,
                                        Termination term) {
  double tMax = 0.0;
  for (double t : req.times) {
    if (!(t >= 0.0))
      throw DomainError("oracle_evolve: times must be nonnegative");
    tMax = std::max(tMax, t);
  }
  const std::size_t need = causal_cells(req.params, req.initial.size(), req.cells.last, tMax);
  if (nCells < need)
    throw CausalityBudget("need at least " + std::to_string(need) + " cells, got " +
                          std::to_string(nCells));
  const ChainOperator H(req.params, nCells, term);
  const auto vs = chainEvolve(H, req.params.gammaPlus, to_vector(req.initial, nCells), req.times);
  std::vector<WaveFunction> out;
  out.reserve(vs.size());
  for (const auto &v : vs)
    out.push_back(from_vector(v));
  return out;
}

std::vector<LatticeWave> oracle_evolve_bulk(const LatticeWave &f, const HoppingParams &p,
                                            const std::vector<double> &times, long nHalf) {
  if (f.first < -nHalf || f.last() > nHalf)
    throw CausalityBudget("two-sided window does not contain the data");
  const std::size_t n = static_cast<std::size_t>(2 * nHalf + 1);
  const ChainOperator H(p, n, Termination::Plain);
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(2 * n);
  for (std::size_t j = 0; j < f.cells.size(); ++j)
    v0.segment<2>(2 * (f.first + static_cast<long>(j) + nHalf)) = f.cells[j];
  const auto vs = chainEvolve(H, p.gammaPlus, v0, times);
  std::vector<LatticeWave> out;
  for (const auto &v : vs) {
    LatticeWave w;
    w.first = -nHalf;
    for (std::size_t c = 0; c < n; ++c)
      w.cells.push_back(v.segment<2>(2 * c));
    out.push_back(std::move(w));
  }
  return out;
}

LatticeWave bulk_propagate(const LatticeWave &f, CellWindow window, double t,
                           const HoppingParams &p, const QuadratureSpec &spec, Band band) {
  if (band != Band::Both)
    requireGapped(p, "single-band bulk propagation");
  if (window.last < window.first)
    throw DomainError("empty window");
  const long W = static_cast<long>(window.size());
  auto fhat = [&](double q) -> Cell {
    const cplx w = std::exp(-I * q);
    Cell acc = Cell::Zero();
    for (std::size_t m = f.cells.size(); m-- > 0;)
      acc = acc * w + f.cells[m];
    return std::exp(-I * (static_cast<double>(f.first) * q)) * acc;
  };
  auto integrand = [&](double q) -> Eigen::VectorXcd {
    const cplx h = h_of(q, p);
    const double k = std::abs(h);
    const Cell fh = fhat(q);
    const Cell Hf(h * fh(1), std::conj(h) * fh(0));
    Cell base;
    switch (band) {
    case Band::Both: {
      const double sinc = k * std::abs(t) < 1e-8 ? t : std::sin(k * t) / k;
      base = std::cos(k * t) * fh - I * sinc * Hf;
      break;
    }
    case Band::Positive:
      base = 0.5 * std::exp(-I * (k * t)) * (fh + Hf / k);
      break;
    case Band::Negative:
      base = 0.5 * std::exp(I * (k * t)) * (fh - Hf / k);
      break;
    }
    Eigen::VectorXcd v(2 * W);
    const cplx step = std::exp(I * q);
    cplx ph;
    for (long j = 0; j < W; ++j) {
      if (j % 64 == 0)
        ph = std::exp(I * (static_cast<double>(window.first + j) * q));
      v.segment<2>(2 * j) = ph * base;
      ph *= step;
    }
    return v;
  };
  std::vector<double> pts{-pi, pi, std::remainder(p.phi, 2.0 * pi),
                          std::remainder(p.phi + pi, 2.0 * pi)};
  if (!p.gapless()) {
    const double yM = phase_geometry(p).yM;
    pts.push_back(std::remainder(p.phi + yM, 2.0 * pi));
    pts.push_back(std::remainder(p.phi - yM, 2.0 * pi));
  }
  const double freq = static_cast<double>(
      std::max(std::abs(window.last - f.first), std::abs(window.first - f.last())));
  auto phase = [&](double q) { return k_of(q - p.phi, p); };
  const auto r = integrate(integrand, phase_panels(pts, phase, t, freq), spec);
  LatticeWave out = emptyWave(window);
  for (long j = 0; j < W; ++j)
    out.cells[j] = r.value.segment<2>(2 * j) / (2.0 * pi);
  return out;
}

std::string to_string(TermKind k) {
  switch (k) {
  case TermKind::I: return "I";
  case TermKind::II: return "II";
  case TermKind::IIa: return "IIa";
  case TermKind::IIb: return "IIb";
  case TermKind::III: return "III";
  case TermKind::IIIa: return "IIIa";
  case TermKind::IIIb: return "IIIb";
  }
  return "?";
}

TypeIntegralTerm type_I(long n, double t, const FLFunction &fTilde, const HoppingParams &p,
                        const QuadratureSpec &spec) {
  requireGapped(p, "type_I");
  auto g = [&](double y) -> Cell {
    return std::exp(-I * (k_of(y, p) * t)) * std::cos(static_cast<double>(n) * y) * fTilde(y);
  };
  auto phase = [&](double y) { return k_of(y, p); };
  const auto r =
      integrate(g, phase_panels(kBreakpoints(p, spec), phase, t, static_cast<double>(std::abs(n))), spec);
  TypeIntegralTerm out;
  out.kind = TermKind::I;
  out.n = n;
  out.t = t;
  out.value = r.value;
  out.errorEstimate = r.error;
  return out;
}

TypeIntegralTerm type_II(long n, double t, const FLFunction &fTilde, const HoppingParams &p,
                         const QuadratureSpec &spec) {
  requireGapped(p, "type_II");
  const auto bps = kBreakpoints(p, spec);
  const double nn = static_cast<double>(n);
  auto phase = [&](double y) { return k_of(y, p); };

  auto ga = [&](double y) -> Cell {
    const double kY = k_of(y, p);
    return std::cos(nn * y) * std::exp(I * (kY * t)) * expIntegralBetween(kY, t, p) * fTilde(y);
  };
  const auto ra = integrate(ga, phase_panels(bps, phase, t, std::abs(nn)), spec);

  const auto innerPts = phase_panels(bps, phase, t, 0.0);
  auto gb = [&](double y) -> Cell {
    const double kY = k_of(y, p);
    const Cell fy = fTilde(y);
    auto inner = [&](double x) -> Cell {
      const double kx = k_of(x, p);
      return std::exp(-I * (kx * t)) * abs_k_prime(x, p) / (kx + kY) * (fTilde(x) - fy);
    };
    return std::cos(nn * y) * integrate(inner, innerPts, spec).value;
  };
  auto flat = [](double) { return 0.0; };
  const auto rb = integrate(gb, phase_panels(bps, flat, 0.0, std::abs(nn)), spec);

  TypeIntegralTerm out;
  out.kind = TermKind::II;
  out.n = n;
  out.t = t;
  out.value = ra.value + rb.value;
  out.errorEstimate = ra.error + rb.error;
  out.parts = {{TermKind::IIa, ra.value}, {TermKind::IIb, rb.value}};
  return out;
}

TypeIntegralTerm type_III(long n, double t, const FLFunction &fTilde, const HoppingParams &p,
                          const QuadratureSpec &spec, double alpha) {
  requireGapped(p, "type_III");
  if (alpha == 0.0)
    alpha = default_alpha(t);
  const auto bps = kBreakpoints(p, spec);
  const double nn = static_cast<double>(n);
  auto phase = [&](double y) { return k_of(y, p); };
  const auto outerPts = phase_panels(bps, phase, t, std::abs(nn));

  auto ga = [&](double y) -> Cell {
    const double kY = k_of(y, p);
    return std::cos(nn * y) * std::exp(-I * (kY * t)) * innerPrincipalValue(y, t, p) * fTilde(y);
  };
  const auto ra = integrate(ga, outerPts, spec);

  QuadratureSpec innerSpec = spec.tightened(1e-3);
  innerSpec.absTol = std::max(innerSpec.absTol, innerSpec.relTol * dataScale(fTilde));
  auto gb = [&](double y) -> Cell {
    const double kY = k_of(y, p);
    const double A = A_of(y, p), B = B_of(y, p);
    Cell inner = Cell::Zero();
    if (B > 0.0) {
      auto F = [&](double, double v) -> Cell { return bandDataNear(fTilde, kY, A, B, v, p); };
      inner += alpha * alpha_substitution_integral(F, kY, p.gammaPlus, alpha, t, innerSpec).value;
    }
    if (A > 0.0) {
      auto G = [&](double, double v) -> Cell { return -bandDataNear(fTilde, kY, A, B, -v, p); };
      inner += alpha * alpha_substitution_integral(G, kY, kY + A, alpha, -t, innerSpec).value;
    }
    return std::cos(nn * y) * std::exp(-I * (kY * t)) * inner;
  };
  const auto rb = integrate(gb, outerPts, spec);

  TypeIntegralTerm out;
  out.kind = TermKind::III;
  out.n = n;
  out.t = t;
  out.value = -(ra.value + rb.value);
  out.errorEstimate = ra.error + rb.error;
  out.parts = {{TermKind::IIIa, ra.value}, {TermKind::IIIb, rb.value}};
  return out;
}

LatticeWave EdgeCorrectionGroups::total() const {
  LatticeWave out = iPi;
  for (std::size_t j = 0; j < out.cells.size(); ++j)
    out.cells[j] += plusLambda.cells[j] + principalValue.cells[j];
  return out;
}

EdgeCorrectionGroups edge_correction_groups(const WaveFunction &f, CellWindow window, double t,
                                            const HoppingParams &p, const QuadratureSpec &spec) {
  requireGapped(p, "edge_correction");
  if (window.first < 0 || window.last < window.first)
    throw DomainError("edge correction window must satisfy 0 <= first <= last");
  const long W = static_cast<long>(window.size());
  const long mlo = window.first, mhi = window.last + 1;
  const FLFunction st = fourier_laplace(right_shift(f));
  const auto bps = kBreakpoints(p, spec);
  const cplx g2 = p.gamma2;
  const double g1 = p.gamma1;
  const cplx eiphi = p.expIPhi();
  const cplx norm = 1.0 / (4.0 * pi * pi * I);

  // Stacked as [iPi | plusLambda | principalValue], each 2W long.
  auto integrand = [&](double x) -> Eigen::VectorXcd {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6 * W);
    const double lambda = k_of(x, p);
    const double kp = abs_k_prime(x, p);
    const auto inner = innerIntegrals(x, mlo, mhi, p, spec, bps);
    const cplx e = std::exp(-I * (lambda * t));
    for (int sigma : {+1, -1}) {
      const double sg = sigma;
      const cplx hs = g1 + p.absGamma2 * std::exp(-I * (sg * x));
      const Cell c = st(p.phi + sg * x);
      Eigen::Matrix2cd P1, P2;
      P1 << g1 / hs, g1 / lambda, std::conj(hs) / lambda, 1.0;
      P2 << g2 / hs, g2 / lambda, 0.0, 0.0;
      const Cell v1 = P1 * c, v2 = P2 * c;
      // (U^- - U^+)/(4 pi^2 i)
      const cplx weight = (sigma > 0 ? -1.0 : 1.0) * norm * e;
      for (long j = 0; j < W; ++j) {
        const long n = window.first + j;
        const long i1 = n + 1 - mlo, i2 = n - mlo;
        const cplx ph1 = std::pow(eiphi, static_cast<double>(n + 1));
        const cplx ph2 = std::pow(eiphi, static_cast<double>(n));
        const double c1 = std::cos(static_cast<double>(n + 1) * x);
        const double c2 = std::cos(static_cast<double>(n) * x);
        const cplx ipi1 = sg * I * pi * c1, ipi2 = sg * I * pi * c2;
        const double pl1 = -kp * inner.r[i1], pl2 = -kp * inner.r[i2];
        const double pv1 = kp * inner.pv[i1], pv2 = kp * inner.pv[i2];
        v.segment<2>(2 * j) += weight * (ph1 * ipi1 * v1 + ph2 * ipi2 * v2);
        v.segment<2>(2 * W + 2 * j) += weight * (ph1 * pl1 * v1 + ph2 * pl2 * v2);
        v.segment<2>(4 * W + 2 * j) += weight * (ph1 * pv1 * v1 + ph2 * pv2 * v2);
      }
    }
    return v;
  };
  auto phase = [&](double y) { return k_of(y, p); };
  const auto r = integrate(integrand, phase_panels(bps, phase, t, static_cast<double>(mhi)), spec);
  EdgeCorrectionGroups out{emptyWave(window), emptyWave(window), emptyWave(window)};
  for (long j = 0; j < W; ++j) {
    out.iPi.cells[j] = r.value.segment<2>(2 * j);
    out.plusLambda.cells[j] = r.value.segment<2>(2 * W + 2 * j);
    out.principalValue.cells[j] = r.value.segment<2>(4 * W + 2 * j);
  }
  return out;
}

LatticeWave edge_correction(const WaveFunction &f, CellWindow window, double t,
                            const HoppingParams &p, const QuadratureSpec &spec) {
  return edge_correction_groups(f, window, t, p, spec).total();
}

LatticeWave positive_band_propagate(const WaveFunction &f, CellWindow window, double t,
                                    const HoppingParams &p, const QuadratureSpec &spec) {
  requireGapped(p, "positive_band_propagate");
  LatticeWave out = bulk_propagate(LatticeWave::fromHalfLine(f), window, t, p, spec, Band::Positive);
  const LatticeWave e = edge_correction(f, window, t, p, spec);
  for (std::size_t j = 0; j < out.cells.size(); ++j)
    out.cells[j] += e.cells[j];
  return out;
}

std::vector<LatticeWave> evolve_ac(const EvolutionRequest &req, const QuadratureSpec &spec) {
  requireGapped(req.params, "evolve_ac");
  for (double t : req.times)
    if (!(t >= 0.0))
      throw DomainError("evolve_ac: times must be nonnegative");
  const WaveFunction gf = chiral_conjugate(req.initial);
  std::vector<LatticeWave> out(req.times.size());
  parallel_for(req.times.size(), [&](std::size_t i) {
    const double t = req.times[i];
    LatticeWave plus = positive_band_propagate(req.initial, req.cells, t, req.params, spec);
    const LatticeWave minus =
        chiral_conjugate(positive_band_propagate(gf, req.cells, -t, req.params, spec));
    for (std::size_t j = 0; j < plus.cells.size(); ++j)
      plus.cells[j] += minus.cells[j];
    out[i] = std::move(plus);
  });
  return out;
}

} // namespace sshd
