#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <gsl/gsl_integration.h>

#include "sshd/propagator.hpp"

using namespace sshd;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

double kDirect(double y, double g1, double g2) {
  return std::sqrt(g1 * g1 + g2 * g2 + 2.0 * g1 * g2 * std::cos(y));
}

WaveFunction deltaA(long n) { return WaveFunction::delta(n, Site::A); }

double windowDiff(const LatticeWave &w, const WaveFunction &ref) {
  double err = 0.0;
  for (long n = w.first; n <= w.last(); ++n)
    err = std::max(err, (w.at(n) - ref.at(n)).norm());
  return err;
}

double gslIntegrate(const std::function<double(double)> &fn, double a, double b, double rel) {
  gsl_integration_workspace *ws = gsl_integration_workspace_alloc(2000);
  gsl_function F;
  F.function = [](double x, void *ctx) { return (*static_cast<const std::function<double(double)> *>(ctx))(x); };
  F.params = const_cast<std::function<double(double)> *>(&fn);
  double r = 0.0, e = 0.0;
  gsl_integration_qags(&F, a, b, 0.0, rel, 2000, ws, &r, &e);
  gsl_integration_workspace_free(ws);
  return r;
}

// PV int_a^b g(x)/(x - c) dx
double gslCauchy(const std::function<double(double)> &fn, double a, double b, double c, double rel) {
  gsl_integration_workspace *ws = gsl_integration_workspace_alloc(2000);
  gsl_function F;
  F.function = [](double x, void *ctx) { return (*static_cast<const std::function<double(double)> *>(ctx))(x); };
  F.params = const_cast<std::function<double(double)> *>(&fn);
  double r = 0.0, e = 0.0;
  gsl_integration_qawc(&F, a, b, c, 0.0, rel, 2000, ws, &r, &e);
  gsl_integration_workspace_free(ws);
  return r;
}

cplx complexIntegrate(const std::function<cplx(double)> &fn, double a, double b, double rel) {
  return {gslIntegrate([&](double x) { return fn(x).real(); }, a, b, rel),
          gslIntegrate([&](double x) { return fn(x).imag(); }, a, b, rel)};
}

// Midpoint rule in y = arccos(eta): Gauss-Chebyshev quadrature of an eta-space integral.
template <class G> cplx chebyshevNodes(G g, int N) {
  cplx s = 0.0;
  for (int j = 0; j < N; ++j)
    s += g(pi * (j + 0.5) / N);
  return s * (pi / N);
}

} // namespace

TEST_CASE("oracle evolution: identity, unitarity, semigroup, light cone") {
  const auto p = HoppingParams::make(1.0, 0.5);
  EvolutionRequest req{p, deltaA(0), {0.0}, {0, 10}, Method::Oracle};
  const auto id = oracle_evolve(req, causal_cells(p, 1, 10, 0.0));
  CHECK(maxDiff(id[0], deltaA(0)) == 0.0);

  req.times = {100.0};
  const auto far = oracle_evolve(req, causal_cells(p, 1, 10, 100.0));
  CHECK(std::abs(far[0].norm() - 1.0) < 1e-10);

  req.times = {50.0};
  const auto t50 = oracle_evolve(req, causal_cells(p, 1, 10, 50.0));
  const double reach = p.vMax() * 50.0;
  const double radius = reach + 10.0 * std::cbrt(reach);
  double outside = 0.0;
  for (std::size_t n = 0; n < t50[0].size(); ++n)
    if (static_cast<double>(n) > radius)
      outside += t50[0].cells[n].squaredNorm();
  CHECK(outside < 1e-6);

  const std::size_t N = causal_cells(p, 1, 10, 7.0);
  req.times = {3.0, 7.0};
  const auto both = oracle_evolve(req, N);
  EvolutionRequest second{p, both[0], {4.0}, {0, 10}, Method::Oracle};
  const auto chained = oracle_evolve(second, causal_cells(p, N, 10, 4.0));
  CHECK(maxDiff(chained[0], both[1]) < 1e-10);
}

TEST_CASE("oracle evolution matches the dense exponential") {
  for (cplx g2 : {cplx(0.5), cplx(1.2, 1.1)}) {
    const auto p = HoppingParams::make(1.0, g2);
    WaveFunction f(3);
    f.cells[0] = Cell(1.0, 0.5 * I);
    f.cells[2] = Cell(-0.25, 1.0);
    const double t = 4.0;
    const std::size_t N = causal_cells(p, 3, 5, t);
    EvolutionRequest req{p, f, {t}, {0, 5}, Method::Oracle};
    const auto out = oracle_evolve(req, N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(edge_hamiltonian_matrix(p, N));
    const Eigen::VectorXcd phases = (-I * t * es.eigenvalues().cast<cplx>()).array().exp();
    const Eigen::VectorXcd ref =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * to_vector(f, N);
    CHECK(maxDiff(out[0], from_vector(ref)) < 1e-11);
  }
}

TEST_CASE("oracle evolution rejects truncations inside the light cone") {
  const auto p = HoppingParams::make(1.0, 0.5);
  EvolutionRequest req{p, deltaA(0), {20.0}, {0, 10}, Method::Oracle};
  CHECK_THROWS_AS(oracle_evolve(req, 15), CausalityBudget);
  CHECK_THROWS_AS(oracle_evolve(EvolutionRequest{p, deltaA(0), {-1.0}, {0, 1}, Method::Oracle}, 100),
                  DomainError);
}

TEST_CASE("bulk propagation: inversion and two-sided oracle") {
  const auto p = HoppingParams::make(1.0, cplx(0.3, 0.4));
  LatticeWave f;
  f.first = -2;
  f.cells = {Cell(0.5, 0.0), Cell(0.0, 1.0), Cell(1.0, -I), Cell(0.0, 0.0), Cell(0.25, 0.25)};
  QuadratureSpec spec;
  spec.relTol = 1e-10;
  const LatticeWave zero = bulk_propagate(f, {-4, 4}, 0.0, p, spec);
  for (long n = -4; n <= 4; ++n)
    CHECK((zero.at(n) - f.at(n)).norm() < 1e-10);

  const auto ref = oracle_evolve_bulk(f, p, {10.0}, 80);
  const LatticeWave w = bulk_propagate(f, {-20, 20}, 10.0, p, spec);
  double err = 0.0;
  for (long n = -20; n <= 20; ++n)
    err = std::max(err, (w.at(n) - ref[0].at(n)).norm());
  CHECK(err < 1e-6);

  // The two bands add up to the full propagator and are gapless-safe.
  const auto gapless = HoppingParams::make(1.0, 1.0);
  const auto refGapless = oracle_evolve_bulk(f, gapless, {6.0}, 60);
  const LatticeWave wg = bulk_propagate(f, {-10, 10}, 6.0, gapless, spec);
  double errG = 0.0;
  for (long n = -10; n <= 10; ++n)
    errG = std::max(errG, (wg.at(n) - refGapless[0].at(n)).norm());
  CHECK(errG < 1e-6);

  const LatticeWave plus = bulk_propagate(f, {-10, 10}, 6.0, p, spec, Band::Positive);
  const LatticeWave minus = bulk_propagate(f, {-10, 10}, 6.0, p, spec, Band::Negative);
  const LatticeWave all = bulk_propagate(f, {-10, 10}, 6.0, p, spec);
  for (long n = -10; n <= 10; ++n)
    CHECK((plus.at(n) + minus.at(n) - all.at(n)).norm() < 1e-9);
}

TEST_CASE("Type I term") {
  const auto p = HoppingParams::make(1.0, 2.0);
  const auto ft = fourier_laplace(deltaA(0));
  QuadratureSpec spec;
  CHECK(std::abs(type_I(0, 0.0, ft, p, spec).value[0] - pi) < 1e-12);
  for (long n : {1, 2, 5})
    CHECK(std::abs(type_I(n, 0.0, ft, p, spec).value[0]) < 1e-12);

  spec.relTol = 1e-10;
  const auto term = type_I(3, 20.0, ft, p, spec);
  const cplx ref = chebyshevNodes(
      [&](double y) { return std::exp(-I * (kDirect(y, 1.0, 2.0) * 20.0)) * std::cos(3.0 * y); }, 4000);
  CHECK(std::abs(term.value[0] - ref) < 1e-7 * std::abs(ref));
  CHECK(term.errorEstimate >= 0.0);
  CHECK(term.value[1] == cplx(0.0));

  // Non-constant data f = delta_1: f~(y) = e^{-iy}.
  const auto ft1 = fourier_laplace(deltaA(1));
  const auto term1 = type_I(2, 7.0, ft1, p, spec);
  const cplx ref1 = complexIntegrate(
      [&](double y) {
        return std::exp(-I * (kDirect(y, 1.0, 2.0) * 7.0)) * std::cos(2.0 * y) * std::exp(-I * y);
      },
      0.0, pi, 1e-12);
  CHECK(std::abs(term1.value[0] - ref1) < 1e-8);
}

TEST_CASE("Type I term decays like t^{-1/3} along the fastest ray") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const auto ft = fourier_laplace(deltaA(0));
  QuadratureSpec spec;
  double early = 0.0, late = 0.0;
  for (double t : {20.0, 40.0, 80.0, 160.0, 320.0, 640.0}) {
    const long n = std::lround(p.vMax() * t);
    const double r = std::abs(type_I(n, t, ft, p, spec).value[0]) * std::cbrt(t);
    (t < 100.0 ? early : late) = std::max(t < 100.0 ? early : late, r);
  }
  CHECK(early > 0.0);
  CHECK(late <= 1.25 * early);
}

TEST_CASE("Type II term") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const double g1 = 1.0, g2 = 0.5;
  QuadratureSpec spec;
  spec.relTol = 1e-10;
  for (long m : {0, 1}) {
    const auto ft = fourier_laplace(deltaA(m));
    for (long n : {0, 2}) {
      const auto term = type_II(n, 0.0, ft, p, spec);
      // 2D brute force in (y, lambda); F(lambda) = e^{-i m q*(lambda)}.
      auto inner = [&](double y) -> cplx {
        const double k = kDirect(y, g1, g2);
        return complexIntegrate(
            [&](double l) {
              const double eta = (l * l - g1 * g1 - g2 * g2) / (2.0 * g1 * g2);
              const double q = std::acos(std::clamp(eta, -1.0, 1.0));
              return std::exp(-I * (static_cast<double>(m) * q)) / (l + k);
            },
            p.gammaMinus, p.gammaPlus, 1e-11);
      };
      const cplx ref = complexIntegrate([&](double y) { return std::cos(n * y) * inner(y); }, 0.0, pi, 1e-10);
      CHECK(std::abs(term.value[0] - ref) < 1e-6 * std::abs(ref));
    }
  }

  const auto ft = fourier_laplace(deltaA(0));
  const cplx v0 = type_II(1, 0.0, ft, p, spec).value[0];
  std::vector<double> ratios;
  for (double t : {1e-2, 1e-3, 1e-4})
    ratios.push_back(std::abs(type_II(1, t, ft, p, spec).value[0] - v0) / t);
  CHECK(ratios[0] > 0.0);
  CHECK(ratios[1] == doctest::Approx(ratios[0]).epsilon(0.02));
  CHECK(ratios[2] == doctest::Approx(ratios[1]).epsilon(0.002));
}

TEST_CASE("Type II term decays like t^{-1/2}") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const auto ft = fourier_laplace(deltaA(0));
  QuadratureSpec spec;
  double early = 0.0, late = 0.0;
  for (double t : {20.0, 30.0, 45.0, 70.0, 100.0, 150.0, 230.0, 350.0}) {
    const double r = std::abs(type_II(2, t, ft, p, spec).value[0]) * std::sqrt(p.gammaMinus * t);
    (t < 80.0 ? early : late) = std::max(t < 80.0 ? early : late, r);
  }
  CHECK(early > 0.0);
  CHECK(late <= 1.25 * early);
}

TEST_CASE("Type III term against a principal-value brute force") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const double g1 = 1.0, g2 = 0.5;
  QuadratureSpec spec;
  for (long m : {0, 1}) {
    const auto ft = fourier_laplace(deltaA(m));
    const double t = 5.0;
    const long n = 2;
    const auto term = type_III(n, t, ft, p, spec);
    // PV int e^{-i lambda t} F(lambda)/(k - lambda) = -PV int g(lambda)/(lambda - k).
    auto inner = [&](double y) -> cplx {
      const double k = kDirect(y, g1, g2);
      auto g = [&](double l) -> cplx {
        const double eta = (l * l - g1 * g1 - g2 * g2) / (2.0 * g1 * g2);
        const double q = std::acos(std::clamp(eta, -1.0, 1.0));
        return std::exp(-I * (l * t + static_cast<double>(m) * q));
      };
      if (k - p.gammaMinus < 1e-9 || p.gammaPlus - k < 1e-9)
        return 0.0;
      return -cplx(gslCauchy([&](double l) { return g(l).real(); }, p.gammaMinus, p.gammaPlus, k, 1e-11),
                   gslCauchy([&](double l) { return g(l).imag(); }, p.gammaMinus, p.gammaPlus, k, 1e-11));
    };
    const cplx ref = complexIntegrate([&](double y) { return std::cos(n * y) * inner(y); }, 0.0, pi, 1e-9);
    CHECK(std::abs(term.value[0] - ref) < 1e-5);
    CHECK(term.parts.size() == 2);
    CHECK(std::abs(term.value[0] + term.parts[0].second[0] + term.parts[1].second[0]) < 1e-12);
  }
}

TEST_CASE("Type III term at t = 0 and its envelope") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const auto ft = fourier_laplace(deltaA(0));
  QuadratureSpec spec;
  // F = 1: PV int dlambda/(k - lambda) = log(A/B).
  const cplx ref = complexIntegrate(
      [&](double y) {
        const double k = kDirect(y, 1.0, 0.5);
        return cplx(std::cos(2.0 * y) * std::log((k - p.gammaMinus) / (p.gammaPlus - k)));
      },
      0.0, pi, 1e-11);
  CHECK(std::abs(type_III(2, 0.0, ft, p, spec).value[0] - ref) < 1e-7);

  double early = 0.0, late = 0.0;
  for (double t : {20.0, 30.0, 45.0, 70.0, 100.0, 150.0, 230.0, 350.0}) {
    const double shape = std::log(std::sqrt(2.0 + t * t)) / std::sqrt(t) + 2.0 / t;
    const double r = std::abs(type_III(2, t, ft, p, spec).value[0]) / shape;
    (t < 80.0 ? early : late) = std::max(t < 80.0 ? early : late, r);
  }
  CHECK(early > 0.0);
  CHECK(late <= 1.25 * early);
}

TEST_CASE("Type terms refuse the gapless model") {
  const auto p = HoppingParams::make(1.0, 1.0);
  const auto ft = fourier_laplace(deltaA(0));
  CHECK_THROWS_AS(type_I(0, 1.0, ft, p, {}), GaplessModel);
  CHECK_THROWS_AS(type_II(0, 1.0, ft, p, {}), GaplessModel);
  CHECK_THROWS_AS(type_III(0, 1.0, ft, p, {}), GaplessModel);
  CHECK_THROWS_AS(edge_correction(deltaA(0), {0, 2}, 1.0, p, {}), GaplessModel);
}

TEST_CASE("edge correction: zero data and principal-value witness") {
  const auto p = HoppingParams::make(1.0, 0.5);
  QuadratureSpec spec;
  const auto zero = edge_correction(WaveFunction(2), {0, 3}, 1.0, p, spec);
  for (const auto &c : zero.cells)
    CHECK(c.norm() == 0.0);

  const auto groups = edge_correction_groups(deltaA(1), {0, 3}, 1.0, p, spec);
  double pvSize = 0.0;
  for (const auto &c : groups.principalValue.cells)
    pvSize = std::max(pvSize, c.norm());
  CHECK(pvSize > 10.0 * spec.relTol);
  const auto total = groups.total();
  double withoutPv = 0.0;
  for (std::size_t j = 0; j < total.cells.size(); ++j)
    withoutPv = std::max(withoutPv, (total.cells[j] - groups.principalValue.cells[j]).norm());
  CHECK(withoutPv > 0.0);
}

namespace {

// Midpoint tensor oracle of the three edge-correction groups for data f on
// window [0, W-1]; the inner principal value is replaced through
// |k'|(p_m - r_m) = pi sin(mx) when `collapsePv` is set, and by a GSL Cauchy
// quadrature otherwise.
std::array<std::vector<Cell>, 3> edgeGroupsOracle(const WaveFunction &f, long W, double t,
                                                  const HoppingParams &p, int Nx, int Ny,
                                                  bool collapsePv) {
  const double g1 = p.gamma1, a2 = p.absGamma2;
  const cplx g2 = p.gamma2, eiphi = p.expIPhi();
  std::array<std::vector<Cell>, 3> out;
  for (auto &g : out)
    g.assign(W, Cell::Zero());
  for (int ix = 0; ix < Nx; ++ix) {
    const double x = pi * (ix + 0.5) / Nx;
    const double lambda = kDirect(x, g1, a2);
    const double kp = g1 * a2 * std::sin(x) / lambda;
    std::vector<double> r(W + 1), pv(W + 1);
    for (long m = 0; m <= W; ++m) {
      double s = 0.0;
      for (int iy = 0; iy < Ny; ++iy) {
        const double y = pi * (iy + 0.5) / Ny;
        s += std::cos(m * y) / (kDirect(y, g1, a2) + lambda);
      }
      r[m] = s * pi / Ny;
      if (collapsePv) {
        pv[m] = (pi * std::sin(m * x) + kp * r[m]) / kp;
      } else {
        // k(y) - lambda in terms of eta: dy = -d eta/sqrt(1-eta^2), pole at cos x.
        const double ex = std::cos(x);
        std::function<double(double)> g = [&](double eta) {
          const double y = std::acos(eta);
          const double k = kDirect(y, g1, a2);
          // (k(y) - lambda) = 2 g1 a2 (eta - ex)/(k + lambda)
          return std::cos(m * y) * (k + lambda) / (2.0 * g1 * a2 * std::sqrt(1.0 - eta * eta));
        };
        pv[m] = gslCauchy(g, -1.0 + 1e-14, 1.0 - 1e-14, ex, 1e-11);
      }
    }
    const cplx e = std::exp(-I * (lambda * t));
    for (int sigma : {+1, -1}) {
      const double sg = sigma;
      const cplx hs = g1 + a2 * std::exp(-I * (sg * x));
      Cell c = Cell::Zero();
      for (std::size_t m = 0; m < f.size(); ++m)
        c += std::exp(-I * (static_cast<double>(m + 1) * (p.phi + sg * x))) * f.cells[m];
      Eigen::Matrix2cd P1, P2;
      P1 << g1 / hs, g1 / lambda, std::conj(hs) / lambda, 1.0;
      P2 << g2 / hs, g2 / lambda, 0.0, 0.0;
      const Cell v1 = P1 * c, v2 = P2 * c;
      const cplx w = (sigma > 0 ? -1.0 : 1.0) * e / (4.0 * pi * pi * I) * (pi / Nx);
      for (long n = 0; n < W; ++n) {
        const cplx ph1 = std::pow(eiphi, static_cast<double>(n + 1));
        const cplx ph2 = std::pow(eiphi, static_cast<double>(n));
        out[0][n] += w * sg * I * pi * (ph1 * std::cos((n + 1) * x) * v1 + ph2 * std::cos(n * x) * v2);
        out[1][n] += w * (-kp) * (ph1 * r[n + 1] * v1 + ph2 * r[n] * v2);
        out[2][n] += w * kp * (ph1 * pv[n + 1] * v1 + ph2 * pv[n] * v2);
      }
    }
  }
  return out;
}

double groupDiff(const LatticeWave &w, const std::vector<Cell> &ref) {
  double d = 0.0;
  for (std::size_t j = 0; j < ref.size(); ++j)
    d = std::max(d, (w.cells[j] - ref[j]).norm());
  return d;
}

} // namespace

TEST_CASE("edge correction groups against independent tensor oracles") {
  QuadratureSpec spec;
  spec.relTol = 1e-10;
  WaveFunction f(2);
  f.cells[0] = Cell(1.0, 0.0);
  f.cells[1] = Cell(0.5 * I, -0.3);
  for (cplx g2 : {cplx(0.5), cplx(1.2, 1.6)}) {
    const auto p = HoppingParams::make(1.0, g2);
    const auto groups = edge_correction_groups(f, {0, 3}, 2.0, p, spec);
    const auto collapsed = edgeGroupsOracle(f, 4, 2.0, p, 600, 600, true);
    CHECK(groupDiff(groups.iPi, collapsed[0]) < 1e-9);
    CHECK(groupDiff(groups.plusLambda, collapsed[1]) < 1e-9);
    CHECK(groupDiff(groups.principalValue, collapsed[2]) < 1e-9);
    const auto cauchy = edgeGroupsOracle(f, 4, 2.0, p, 60, 200, false);
    const auto coarse = edgeGroupsOracle(f, 4, 2.0, p, 60, 200, true);
    for (long n = 0; n < 4; ++n)
      CHECK((cauchy[2][n] - coarse[2][n]).norm() < 1e-7);
  }
}

TEST_CASE("analytic propagator at t = 0 is the continuous projection") {
  QuadratureSpec spec;
  spec.relTol = 1e-10;
  for (cplx g2 : {cplx(0.5), cplx(2.0)}) {
    const auto p = HoppingParams::make(1.0, g2);
    WaveFunction f(2);
    f.cells[0] = Cell(1.0, 0.0);
    f.cells[1] = Cell(0.0, 0.5);
    const auto out = evolve_ac(EvolutionRequest{p, f, {0.0}, {0, 6}, Method::Analytic}, spec);
    const auto ref = project_ac(f, p, 200);
    CHECK(windowDiff(out[0], ref) < 1e-8);
  }
}

TEST_CASE("analytic propagator agrees with the oracle in both phases") {
  QuadratureSpec spec;
  for (cplx g2 : {cplx(0.5), cplx(2.0)}) {
    const auto p = HoppingParams::make(1.0, g2);
    const std::size_t N0 = 400;
    const WaveFunction f = project_ac(deltaA(0), p, N0);
    EvolutionRequest req{p, deltaA(0), {1.0, 5.0}, {0, 30}, Method::Analytic};
    const auto analytic = evolve_ac(req, spec);
    EvolutionRequest oreq{p, f, req.times, req.cells, Method::Oracle};
    const auto oracle = oracle_evolve(oreq, std::max<std::size_t>(N0, causal_cells(p, N0, 30, 5.0)),
                                      Termination::StrongBond);
    for (std::size_t i = 0; i < req.times.size(); ++i)
      CHECK(windowDiff(analytic[i], oracle[i]) < 1e-5);
    if (p.topological()) {
      const WaveFunction phi = normalized_edge_state(p, 31);
      for (const auto &w : analytic) {
        WaveFunction h(31);
        for (long n = 0; n <= 30; ++n)
          h.cells[n] = w.at(n);
        CHECK(std::abs(inner(phi, h)) < 1e-6);
      }
    }
  }
}

TEST_CASE("analytic propagator: unitarity and chiral covariance") {
  QuadratureSpec spec;
  const auto p = HoppingParams::make(1.0, 0.5);
  const double t = 2.0;
  const long last = static_cast<long>(p.vMax() * t + 30.0);
  const auto out = evolve_ac(EvolutionRequest{p, deltaA(0), {t}, {0, last}, Method::Analytic}, spec);
  CHECK(out[0].norm() == doctest::Approx(1.0).epsilon(1e-7));

  const WaveFunction g = chiral_conjugate(deltaA(0));
  const auto outG = evolve_ac(EvolutionRequest{p, g, {t}, {0, 8}, Method::Analytic}, spec);
  const auto ref = chiral_conjugate(evolve_ac(EvolutionRequest{p, deltaA(0), {t}, {0, 8}, Method::Analytic}, spec)[0]);
  for (long n = 0; n <= 8; ++n)
    CHECK((outG[0].at(n) - ref.at(n).conjugate()).norm() < 1e-8);
}

TEST_CASE("analytic propagator gates") {
  QuadratureSpec spec;
  CHECK_THROWS_AS(evolve_ac(EvolutionRequest{HoppingParams::make(1.0, 1.0), deltaA(0), {1.0}, {0, 2},
                                             Method::Analytic},
                            spec),
                  GaplessModel);
  CHECK_THROWS_AS(evolve_ac(EvolutionRequest{HoppingParams::make(1.0, 0.5), deltaA(0), {-1.0}, {0, 2},
                                             Method::Analytic},
                            spec),
                  DomainError);
}
