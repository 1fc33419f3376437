#include "sshd/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "sshd/decay.hpp"
#include "sshd/dispersion.hpp"
#include "sshd/propagator.hpp"
#include "sshd/resolvent.hpp"

namespace sshd {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Pinned tolerances.
constexpr double kEdgeKernelTol = 1e-12;
constexpr double kSymmetryTol = 1e-12;
constexpr double kIdentityTol = 1e-12;
constexpr double kDerivativeTol = 1e-6;
constexpr double kRoundtripTol = 1e-12;
constexpr double kSlopeTarget = 0.5, kSlopeTol = 0.1;
constexpr double kClosedFormRelTol = 1e-8;
constexpr double kResolventRelTol = 1e-8;
constexpr double kMinSpectralDistance = 0.1;
constexpr double kPropagatorTol = 1e-5;
constexpr double kPropagatorQuadRelTol = 1e-8;
constexpr double kTypeIRelTol = 1e-7;
constexpr double kTypeIIRelTol = 1e-6;
constexpr double kTypeIIIAbsTol = 1e-5;
constexpr double kDecaySlopeSlack = 0.05;
constexpr double kEnvelopeDrift = 1.2; // late-half over early-half envelope constant
constexpr double kPrefactorRatioBound = 1.0;
constexpr double kBandEdgeSlack = 1.0; // eigenvalues within kBandEdgeSlack/N of a band count as band

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

double kDirect(double y, double g1, double g2) {
  return std::sqrt(g1 * g1 + g2 * g2 + 2.0 * g1 * g2 * std::cos(y));
}

WaveFunction randomState(std::mt19937 &rng, std::size_t n) {
  std::normal_distribution<double> d;
  WaveFunction f(n);
  for (auto &c : f.cells)
    c = Cell(cplx(d(rng), d(rng)), cplx(d(rng), d(rng)));
  return f;
}

HoppingParams randomParams(std::mt19937 &rng, double minGap) {
  std::uniform_real_distribution<double> u(0.2, 3.0), ph(-pi, pi);
  for (;;) {
    const auto p = HoppingParams::make(u(rng), std::polar(u(rng), ph(rng)));
    if (p.gammaMinus >= minGap)
      return p;
  }
}

double gslReal(const std::function<double(double)> &fn, double a, double b, double rel,
               const double *pole = nullptr) {
  gsl_integration_workspace *ws = gsl_integration_workspace_alloc(4000);
  gsl_function F;
  F.function = [](double x, void *ctx) {
    return (*static_cast<const std::function<double(double)> *>(ctx))(x);
  };
  F.params = const_cast<std::function<double(double)> *>(&fn);
  double r = 0.0, e = 0.0;
  gsl_error_handler_t *old = gsl_set_error_handler_off();
  if (pole)
    gsl_integration_qawc(&F, a, b, *pole, 0.0, rel, 4000, ws, &r, &e);
  else
    gsl_integration_qags(&F, a, b, 0.0, rel, 4000, ws, &r, &e);
  gsl_set_error_handler(old);
  gsl_integration_workspace_free(ws);
  return r;
}

cplx gslComplex(const std::function<cplx(double)> &fn, double a, double b, double rel,
                const double *pole = nullptr) {
  return {gslReal([&](double x) { return fn(x).real(); }, a, b, rel, pole),
          gslReal([&](double x) { return fn(x).imag(); }, a, b, rel, pole)};
}

// F(lambda) = e^{-i m q*(lambda)} for delta data at cell m, from the defining formula.
cplx deltaBandData(long m, double lambda, double g1, double g2) {
  const double eta = (lambda * lambda - g1 * g1 - g2 * g2) / (2.0 * g1 * g2);
  return std::exp(-I * (static_cast<double>(m) * std::acos(std::clamp(eta, -1.0, 1.0))));
}

template <class G> cplx circleAverage(G g) {
  QuadratureSpec s;
  s.relTol = 1e-12;
  s.panelOrder = 15;
  return integrate(g, {-pi, -pi / 2, 0.0, pi / 2, pi}, s, 8).value / (2.0 * pi);
}

double leastSquaresSlope(const std::vector<double> &x, const std::vector<double> &y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sx += x[j];
    sy += y[j];
    sxx += x[j] * x[j];
    sxy += x[j] * y[j];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double windowDiff(const LatticeWave &w, const WaveFunction &ref) {
  double err = 0.0;
  for (long n = w.first; n <= w.last(); ++n)
    err = std::max(err, (w.at(n) - ref.at(n)).norm());
  return err;
}

Outcome edgeKernel(const AcceptanceOptions &) {
  const auto p = HoppingParams::make(1.0, 2.0);
  const WaveFunction phi = edge_state(p, 200);
  const double r = apply_edge_hamiltonian(phi, p).norm() / phi.norm();
  return {r < kEdgeKernelTol, "|H phi|/|phi| = " + sci(r)};
}

Outcome symmetries(const AcceptanceOptions &opts) {
  std::mt19937 rng(opts.seed);
  double anti = 0.0, herm = 0.0;
  for (cplx g2 : {cplx(0.5), cplx(2.0), cplx(0.7, 1.1)}) {
    const auto p = HoppingParams::make(1.0, g2);
    for (int rep = 0; rep < 50; ++rep) {
      const WaveFunction a = randomState(rng, 30), b = randomState(rng, 30);
      const WaveFunction ga = chiral_conjugate(apply_edge_hamiltonian(chiral_conjugate(a), p));
      anti = std::max(anti, maxDiff(ga, -1.0 * apply_edge_hamiltonian(a, p)));
      const cplx lhs = inner(apply_edge_hamiltonian(a, p), b);
      const cplx rhs = inner(a, apply_edge_hamiltonian(b, p));
      herm = std::max(herm, std::abs(lhs - rhs) / (a.norm() * b.norm()));
    }
  }
  return {anti == 0.0 && herm < kSymmetryTol,
          "max |GHG + H| = " + sci(anti) + ", max Hermiticity defect = " + sci(herm)};
}

Outcome dispersion(const AcceptanceOptions &opts) {
  std::mt19937 rng(opts.seed + 1);
  double ident = 0.0, deriv = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const auto p = randomParams(rng, 0.0);
    for (int j = 0; j <= 1000; ++j) {
      const double q = -pi + 2.0 * pi * j / 1000;
      ident = std::max(ident, std::abs(std::abs(h_of(q, p)) - k_of(q - p.phi, p)));
      const double y = pi * j / 1000.0;
      const double lam = k_of(y, p);
      const double eta = eta_of(lam, p);
      const double rhs = (p.gammaPlus * p.gammaPlus - lam * lam) *
                         (lam * lam - p.gammaMinus * p.gammaMinus) /
                         std::pow(2.0 * p.gamma1 * p.absGamma2, 2);
      ident = std::max(ident, std::abs(1.0 - eta * eta - rhs));
    }
    // Derivatives on sets whose gap keeps the fourth derivative moderate.
    const auto pd = randomParams(rng, 0.3);
    const double h = 1e-3;
    auto kd = [&](int order, double x) { return order == 0 ? k_of(x, pd) : k_derivative(x, order, pd); };
    for (int j = 1; j < 50; ++j) {
      const double y = pi * j / 50.0;
      for (int order = 1; order <= 3; ++order) {
        auto g = [&](double x) { return kd(order - 1, x); };
        const double fd = (g(y - 2 * h) - 8.0 * g(y - h) + 8.0 * g(y + h) - g(y + 2 * h)) / (12.0 * h);
        deriv = std::max(deriv, std::abs(fd - k_derivative(y, order, pd)));
      }
    }
  }
  return {ident < kIdentityTol && deriv < kDerivativeTol,
          "identity defect " + sci(ident) + ", derivative defect " + sci(deriv)};
}

Outcome qStar(const AcceptanceOptions &opts) {
  std::mt19937 rng(opts.seed + 2);
  std::uniform_real_distribution<double> re(-12.0, 12.0), im(-6.0, 6.0);
  const auto p = HoppingParams::make(1.0, cplx(1.3, 0.4));
  double round = 0.0;
  int checked = 0;
  while (checked < 1000) {
    const cplx w(re(rng), im(rng));
    if (std::abs(w.imag()) < 1e-3)
      continue;
    round = std::max(round, std::abs(k2_of(q_star_complex(w, p), p) - w) / std::max(1.0, std::abs(w)));
    ++checked;
  }
  // Boundary limit at the upper band edge, where the rate is sqrt(eps).
  std::vector<double> lx, ly;
  const double edge = p.gammaPlus * p.gammaPlus;
  const double limit = q_star_lambda(p.gammaPlus, p);
  for (int j = 0; j <= 12; ++j) {
    const double eps = std::pow(10.0, -8.0 + 0.5 * j);
    lx.push_back(std::log(eps));
    ly.push_back(std::log(std::abs(q_star_complex(cplx(edge, eps), p) - limit)));
  }
  const double slope = leastSquaresSlope(lx, ly);
  return {round < kRoundtripTol && std::abs(slope - kSlopeTarget) <= kSlopeTol,
          "roundtrip defect " + sci(round) + ", boundary-limit slope " + fmt("%.4f", slope)};
}

Outcome closedForms(const AcceptanceOptions &opts) {
  std::mt19937 rng(opts.seed + 3);
  std::uniform_real_distribution<double> re(-4.0, 4.0), im(0.05, 2.0), sg(-1.0, 1.0);
  double worst = 0.0;
  int count = 0;
  for (cplx g2 : {cplx(0.6, 0.2), cplx(1.3, -1.0)}) {
    const auto p = HoppingParams::make(1.0, g2);
    const auto bands = spectrum_bands(p);
    while (count < (g2 == cplx(0.6, 0.2) ? 10 : 20)) {
      const cplx z(re(rng), (sg(rng) < 0 ? -1.0 : 1.0) * im(rng));
      if (bands.distance(z) < 0.05)
        continue;
      for (int n : {0, 1}) {
        const cplx quad = circleAverage(
            [&](double q) { return std::exp(I * (n * q)) / (k2_of(q - p.phi, p) - z * z); });
        worst = std::max(worst, std::abs(J_closed(n, z, p) - quad) / std::abs(quad));
      }
      const cplx g2b = std::conj(p.gamma2);
      auto U = [&](double q, int row) {
        const cplx pre = g2b * std::exp(I * q) / (z * z - k2_of(q - p.phi, p));
        return row == 0 ? pre * h_of(q, p) : pre * z;
      };
      Eigen::Matrix2cd quad;
      quad << 1.0 + circleAverage([&](double q) { return U(q, 0); }), 0.0,
          circleAverage([&](double q) { return U(q, 1); }), 1.0;
      const cplx d = quad.determinant();
      worst = std::max(worst, std::abs(det_I_plus_VU(z, p) - d) / std::max(std::abs(d), 1e-300));
      ++count;
    }
  }
  return {worst < kClosedFormRelTol, "20 points, worst relative defect " + sci(worst)};
}

Outcome resolventOracle(const AcceptanceOptions &opts) {
  std::mt19937 rng(opts.seed + 4);
  std::uniform_real_distribution<double> re(-3.5, 3.5), im(-1.0, 1.0);
  QuadratureSpec spec;
  spec.relTol = 1e-11;
  const std::size_t N = 400;
  double worst = 0.0;
  for (cplx g2 : {cplx(0.5, 0.3), cplx(1.5, 1.0)}) {
    const auto p = HoppingParams::make(1.0, g2);
    const auto bands = spectrum_bands(p);
    const auto H = edge_hamiltonian_matrix(p, N);
    for (int rep = 0; rep < 5;) {
      const cplx z(re(rng), im(rng));
      if (bands.distance(z) < kMinSpectralDistance)
        continue;
      const WaveFunction f = randomState(rng, 4);
      const auto psi = resolvent_apply(z, f, {0, 60}, p, spec);
      const Eigen::VectorXcd ref =
          (H - z * Eigen::MatrixXcd::Identity(2 * N, 2 * N)).partialPivLu().solve(to_vector(f, N));
      double err = 0.0, mx = 0.0;
      for (long n = 0; n <= 60; ++n) {
        err = std::max(err, (psi.at(n) - ref.segment<2>(2 * n)).norm());
        mx = std::max(mx, ref.segment<2>(2 * n).norm());
      }
      worst = std::max(worst, err / mx);
      ++rep;
    }
  }
  return {worst < kResolventRelTol, "10 draws, worst interior relative error " + sci(worst)};
}

Outcome propagatorOracle(const AcceptanceOptions &opts) {
  const std::vector<double> times{1.0, 5.0, 10.0};
  std::string detail;
  double worst = 0.0;
  for (cplx g2 : {cplx(0.5), cplx(2.0)}) {
    const auto p = HoppingParams::make(1.0, g2);
    const WaveFunction f0 = WaveFunction::delta(0, Site::A);
    const std::size_t N0 = 400;
    const WaveFunction f = project_ac(f0, p, N0);
    EvolutionRequest req{p, f0, times, {0, 30}, Method::Analytic};
    const auto analytic = evolve_ac(req, opts.spec);
    EvolutionRequest oreq{p, f, times, {0, 30}, Method::Oracle};
    const auto oracle = oracle_evolve(oreq, std::max(N0, causal_cells(p, N0, 30, 10.0)),
                                      Termination::StrongBond);
    double d = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
      d = std::max(d, windowDiff(analytic[i], oracle[i]));
    worst = std::max(worst, d);
    detail += (detail.empty() ? "" : ", ") + std::string("gamma2=") + fmt("%g", std::abs(g2)) +
              ": " + sci(d);
  }
  const bool tolOk = opts.spec.relTol <= kPropagatorQuadRelTol;
  if (!tolOk)
    detail += "; quadrature relTol " + sci(opts.spec.relTol) + " looser than the required " +
              sci(kPropagatorQuadRelTol);
  return {worst < kPropagatorTol && tolOk, "max |analytic - oracle| " + detail};
}

Outcome typeTerms(const AcceptanceOptions &opts) {
  QuadratureSpec spec = opts.spec;
  std::ostringstream detail;
  bool ok = true;

  {
    const auto p = HoppingParams::make(1.0, 2.0);
    const auto ft = fourier_laplace(WaveFunction::delta(0, Site::A));
    const double t = 5.0;
    const long n = 3;
    const auto term = type_I(n, t, ft, p, spec);
    // Gauss-Chebyshev nodes in eta = cos y.
    cplx ref = 0.0;
    const int M = 4000;
    for (int j = 0; j < M; ++j) {
      const double y = pi * (j + 0.5) / M;
      ref += std::exp(-I * (kDirect(y, 1.0, 2.0) * t)) * std::cos(n * y);
    }
    ref *= pi / M;
    const double rel = std::abs(term.value[0] - ref) / std::abs(ref);
    ok = ok && rel < kTypeIRelTol;
    detail << "I rel " << sci(rel);
  }

  const double g1 = 1.0, g2 = 0.5;
  const auto p = HoppingParams::make(g1, g2);
  {
    double worst = 0.0;
    for (double t : {0.0, 5.0}) {
      const long m = 1, n = 2;
      const auto term = type_II(n, t, fourier_laplace(WaveFunction::delta(m, Site::A)), p, spec);
      auto inner = [&](double y) {
        const double k = kDirect(y, g1, g2);
        return gslComplex(
            [&](double l) { return std::exp(-I * (l * t)) * deltaBandData(m, l, g1, g2) / (l + k); },
            p.gammaMinus, p.gammaPlus, 1e-11);
      };
      const cplx ref = gslComplex([&](double y) { return std::cos(n * y) * inner(y); }, 0.0, pi, 1e-10);
      worst = std::max(worst, std::abs(term.value[0] - ref) / std::abs(ref));
    }
    ok = ok && worst < kTypeIIRelTol;
    detail << ", II rel " << sci(worst);
  }
  {
    double worst = 0.0;
    for (long m : {0, 1}) {
      const double t = 5.0;
      const long n = 2;
      const auto term = type_III(n, t, fourier_laplace(WaveFunction::delta(m, Site::A)), p, spec);
      auto inner = [&](double y) -> cplx {
        const double k = kDirect(y, g1, g2);
        if (k - p.gammaMinus < 1e-9 || p.gammaPlus - k < 1e-9)
          return 0.0;
        return -gslComplex([&](double l) { return std::exp(-I * (l * t)) * deltaBandData(m, l, g1, g2); },
                           p.gammaMinus, p.gammaPlus, 1e-11, &k);
      };
      const cplx ref = gslComplex([&](double y) { return std::cos(n * y) * inner(y); }, 0.0, pi, 1e-9);
      worst = std::max(worst, std::abs(term.value[0] - ref));
    }
    ok = ok && worst < kTypeIIIAbsTol;
    detail << ", III abs " << sci(worst);
  }
  return {ok, detail.str()};
}

// Largest ratio |psi_n(t)|/shape(n, t) over rows [r0, r1) of a per-cell trace.
double envelopeOverRows(const DecayTrace &tr, Envelope e, std::size_t r0, std::size_t r1) {
  const auto &M = *tr.perCell;
  double c = 0.0;
  for (std::size_t j = r0; j < r1; ++j)
    for (long k = 0; k < M.cols(); ++k)
      c = std::max(c, M(static_cast<long>(j), k) / envelope_shape(e, tr.times[j], tr.firstCell + k));
  return c;
}

Outcome decayEnvelopes(const AcceptanceOptions &opts) {
  const auto p = HoppingParams::make(1.0, 0.5);
  const WaveFunction f = WaveFunction::delta(0, Site::A);
  const auto times = geometric_grid(100.0, 1e4, 25);
  const long last = static_cast<long>(p.vMax() * 1e4 + 200.0);
  const auto tr = trace_decay(EvolutionRequest{p, f, times, {0, last}, Method::Oracle}, true);
  const std::size_t half = times.size() / 2;
  bool ok = true;
  std::ostringstream d;

  const auto fit = fit_power_law(tr, Envelope::PowerThird);
  double early = 0.0, late = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double r = tr.supNorm[j] / envelope_shape(Envelope::PowerThird, times[j]);
    (j < half ? early : late) = std::max(j < half ? early : late, r);
  }
  ok = ok && fit.exponent <= -1.0 / 3.0 + kDecaySlopeSlack && late <= kEnvelopeDrift * early;
  d << "slope " << fmt("%.4f", fit.exponent) << ", C1 " << fmt("%.4f", fit.envelopeConstant)
    << " (late/early " << fmt("%.3f", late / early) << ")";

  for (Envelope e : {Envelope::Mixed, Envelope::MixedNoLog}) {
    const double c = mixed_envelope_constant(tr, e);
    const double ce = envelopeOverRows(tr, e, 0, half), cl = envelopeOverRows(tr, e, half, times.size());
    ok = ok && std::isfinite(c) && cl <= kEnvelopeDrift * ce;
    d << ", " << (e == Envelope::Mixed ? "C2 " : "C2(no log) ") << fmt("%.4f", c) << " (late/early "
      << fmt("%.3f", cl / ce) << ")";
  }

  if (opts.analyticAvailable) {
    const std::vector<double> spots =
        opts.tier == Tier::Full ? std::vector<double>{100.0, 1000.0, 10000.0}
                                : std::vector<double>{100.0, 316.0, 1000.0};
    EvolutionRequest req{p, f, spots, {0, 30}, Method::Analytic};
    const auto analytic = evolve_ac(req, opts.spec);
    const auto oracle = oracle_evolve(req, causal_cells(p, 1, 30, spots.back()));
    double worst = 0.0;
    for (std::size_t i = 0; i < spots.size(); ++i)
      worst = std::max(worst, windowDiff(analytic[i], oracle[i]));
    ok = ok && worst < kPropagatorTol;
    d << ", analytic spot checks " << sci(worst);
  } else {
    d << ", analytic spot checks skipped: gamma- = 0";
  }
  return {ok, d.str()};
}

Outcome prefactorBound(const AcceptanceOptions &) {
  std::vector<HoppingParams> grid;
  for (double g2 : {0.5, 0.9, 0.99})
    grid.push_back(HoppingParams::make(1.0, g2));
  const auto times = geometric_grid(100.0, 1e4, 25);
  const long last = static_cast<long>(1e4 + 200.0);
  const auto rows = constant_dependence_scan(grid, WaveFunction::delta(0, Site::A),
                                             Envelope::PowerThird, times, {0, last});
  double worst = 0.0;
  std::ostringstream d;
  d << "ratios";
  for (const auto &r : rows) {
    worst = std::max(worst, r.ratio);
    d << " " << fmt("%.4f", r.ratio);
  }
  d << " (bound " << kPrefactorRatioBound << ")";
  return {worst <= kPrefactorRatioBound, d.str()};
}

Outcome arcBounds(const AcceptanceOptions &opts) {
  std::mt19937 rng(opts.seed + 5);
  std::uniform_real_distribution<double> uy(0.0, pi), ut(-1.0, 3.0);
  const auto p = HoppingParams::make(1.0, 0.5);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const double y = uy(rng), t = std::pow(10.0, ut(rng));
    const double A = A_of(y, p), B = B_of(y, p);
    const auto pieces = pv_oscillatory_contour_pieces(A * t, B * t);
    worst = std::max(worst, std::abs(pieces.arcB) * (1.0 + B * t) / pi);
    worst = std::max(worst, std::abs(pieces.arcA) * (1.0 + A * t) / pi);
  }
  return {worst <= 1.0, "max |arc| / bound = " + fmt("%.4f", worst)};
}

Outcome noEmbedded(const AcceptanceOptions &opts) {
  const std::vector<std::size_t> sizes = opts.tier == Tier::Full
                                             ? std::vector<std::size_t>{50, 100, 200, 400}
                                             : std::vector<std::size_t>{40, 80, 160};
  bool ok = true;
  std::ostringstream d;
  auto outside = [](const Eigen::VectorXd &ev, const SpectrumBands &b, double slack) {
    std::vector<double> out;
    for (long j = 0; j < ev.size(); ++j) {
      const double a = std::abs(ev[j]);
      if (a < b.posLo - slack || a > b.posHi + slack)
        out.push_back(ev[j]);
    }
    return out;
  };
  const auto top = HoppingParams::make(1.0, 2.0), triv = HoppingParams::make(1.0, 0.5);
  std::size_t topCounts = 0, trivCounts = 0;
  double zeroMax = 0.0;
  for (std::size_t N : sizes) {
    const double slack = kBandEdgeSlack / static_cast<double>(N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> et(
        edge_hamiltonian_matrix(top, N, Termination::StrongBond), Eigen::EigenvaluesOnly);
    const auto ot = outside(et.eigenvalues(), spectrum_bands(top), slack);
    ok = ok && ot.size() == 1;
    topCounts = std::max(topCounts, ot.size());
    if (ot.size() == 1)
      zeroMax = std::max(zeroMax, std::abs(ot[0]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ev(edge_hamiltonian_matrix(triv, N),
                                                      Eigen::EigenvaluesOnly);
    const auto ov = outside(ev.eigenvalues(), spectrum_bands(triv), slack);
    ok = ok && ov.empty();
    trivCounts = std::max(trivCounts, ov.size());
  }
  ok = ok && zeroMax < 1e-12;
  // Convergence of the isolated eigenvalue with the plain cut: the two edge
  // modes split by ~(gamma1/|gamma2|)^N.
  std::vector<double> nx, ly;
  for (std::size_t N : {8, 12, 16, 20, 24}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(edge_hamiltonian_matrix(top, N),
                                                      Eigen::EigenvaluesOnly);
    nx.push_back(static_cast<double>(N));
    ly.push_back(std::log(es.eigenvalues().cwiseAbs().minCoeff()));
  }
  const double rate = -leastSquaresSlope(nx, ly);
  const double expected = std::log(top.absGamma2 / top.gamma1);
  ok = ok && std::abs(rate - expected) < 0.1 * expected;
  d << "topological: " << topCounts << " isolated (|lambda| <= " << sci(zeroMax)
    << "), plain-cut convergence rate " << fmt("%.4f", rate) << " vs " << fmt("%.4f", expected)
    << "; trivial: " << trivCounts << " isolated";
  return {ok, d.str()};
}

struct Criterion {
  int id;
  const char *name;
  double budget;
  bool needsAnalytic;
  Outcome (*run)(const AcceptanceOptions &);
};

const Criterion kCriteria[] = {
    {1, "edge-state kernel", 1.0, false, edgeKernel},
    {2, "Hermiticity and chiral symmetry", 1.0, false, symmetries},
    {3, "dispersion identities", 5.0, false, dispersion},
    {4, "q* roundtrip and boundary rate", 10.0, false, qStar},
    {5, "closed forms vs quadrature", 30.0, false, closedForms},
    {6, "resolvent vs truncated solve", 60.0, false, resolventOracle},
    {7, "propagator vs oracle", 600.0, true, propagatorOracle},
    {8, "type-term oracles", 300.0, true, typeTerms},
    {9, "decay envelopes", 900.0, false, decayEnvelopes},
    {10, "prefactor boundedness", 1800.0, false, prefactorBound},
    {11, "contour arc bounds", 5.0, false, arcBounds},
    {12, "no embedded eigenvalues", 60.0, false, noEmbedded},
};

} // namespace

std::string to_string(Tier t) { return t == Tier::Full ? "full" : "quick"; }

Tier tier_from_string(const std::string &s) {
  if (s == "quick")
    return Tier::Quick;
  if (s == "full")
    return Tier::Full;
  throw ConfigError("tier must be 'quick' or 'full', got '" + s + "'");
}

std::string to_string(Status s) {
  switch (s) {
  case Status::Pass: return "pass";
  case Status::Fail: return "fail";
  case Status::Skipped: return "skipped";
  }
  return "?";
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts,
                                            const std::function<void(const CriterionResult &)> &onResult) {
  std::vector<CriterionResult> out;
  for (const auto &c : kCriteria) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end())
      continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budgetSeconds = c.budget;
    if (c.needsAnalytic && !opts.analyticAvailable) {
      r.status = Status::Skipped;
      r.detail = "skipped: gamma- = 0";
    } else {
      const auto start = std::chrono::steady_clock::now();
      try {
        const Outcome o = c.run(opts);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.status = o.ok && r.seconds <= c.budget ? Status::Pass : Status::Fail;
        r.detail = o.detail;
        if (o.ok && r.seconds > c.budget)
          r.detail += "; runtime over budget";
      } catch (const std::exception &e) {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.status = Status::Fail;
        r.detail = std::string("error: ") + e.what();
      }
    }
    if (onResult)
      onResult(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult &r) {
  std::string tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP";
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-32s", tag.c_str(), r.id, r.name.c_str());
  return std::string(head) + " " + r.detail + " (" + fmt("%.2f", r.seconds) + " s, budget " +
         fmt("%g", r.budgetSeconds) + " s)";
}

bool all_passed(const std::vector<CriterionResult> &results) {
  for (const auto &r : results)
    if (r.status == Status::Fail)
      return false;
  return true;
}

} // namespace sshd
