#include "doctest.h"

#include <cmath>

#include "sshd/decay.hpp"

using namespace sshd;

namespace {

WaveFunction deltaA(long n) { return WaveFunction::delta(n, Site::A); }

DecayTrace oracleTrace(const HoppingParams &p, const WaveFunction &f, std::vector<double> times,
                       CellWindow cells, bool perCell = false) {
  return trace_decay(EvolutionRequest{p, f, std::move(times), cells, Method::Oracle}, perCell);
}

} // namespace

TEST_CASE("power-law fits recover synthetic models") {
  const auto times = geometric_grid(100.0, 1e4, 25);
  std::vector<double> half, logHalf;
  for (double t : times) {
    half.push_back(3.7 / std::sqrt(t));
    logHalf.push_back(2.0 * std::log(std::sqrt(2.0 + t * t)) / std::sqrt(t));
  }
  const auto fit = fit_power_law(synthetic_trace(times, half), Envelope::PowerHalf);
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK(fit.constant == doctest::Approx(3.7).epsilon(1e-3));
  CHECK(fit.residual < 1e-10);
  CHECK(fit.points == 25);

  const auto fitLog = fit_power_law(synthetic_trace(times, logHalf), Envelope::LogHalf);
  CHECK(fitLog.constant == doctest::Approx(2.0).epsilon(0.01));
  CHECK(fitLog.envelopeConstant == doctest::Approx(2.0).epsilon(1e-10));

  const auto windowed = fit_power_law(synthetic_trace(times, half), Envelope::PowerHalf, 200.0, 5000.0);
  CHECK(windowed.tLo >= 200.0);
  CHECK(windowed.tHi <= 5000.0);

  const std::vector<double> few(times.begin(), times.begin() + 7), fewV(half.begin(), half.begin() + 7);
  CHECK_THROWS_AS(fit_power_law(synthetic_trace(few, fewV), Envelope::PowerHalf), InsufficientData);
  CHECK_THROWS_AS(fit_power_law(synthetic_trace(times, half), Envelope::PowerHalf, 100.0, 200.0),
                  InsufficientData);
}

TEST_CASE("envelope names round-trip") {
  for (Envelope e : {Envelope::PowerThird, Envelope::LogHalf, Envelope::PowerHalf, Envelope::Mixed,
                     Envelope::MixedNoLog})
    CHECK(envelope_from_string(to_string(e)) == e);
  CHECK(envelope_from_string("power_third") == Envelope::PowerThird);
  CHECK_THROWS_AS(envelope_from_string("t^-2"), ConfigError);
  CHECK(envelope_shape(Envelope::MixedNoLog, 4.0, 2) == doctest::Approx(1.0));
}

TEST_CASE("the edge state does not move") {
  const auto p = HoppingParams::make(1.0, 2.0);
  const WaveFunction phi = normalized_edge_state(p, 60);
  const auto tr = oracleTrace(p, phi, {1.0, 10.0, 50.0, 100.0}, {0, 20});
  for (double s : tr.supNorm)
    CHECK(std::abs(s - phi.supNorm()) < 1e-10);
}

TEST_CASE("delta data disperses in the trivial phase") {
  const auto p = HoppingParams::make(1.0, 0.5);
  // The sup norm oscillates from interference; its running maxima over
  // successive blocks of the geometric grid decrease.
  const auto times = geometric_grid(10.0, 1000.0, 24);
  const auto tr = oracleTrace(p, deltaA(0), times, {0, 600});
  std::vector<double> blockMax(4, 0.0);
  for (std::size_t j = 0; j < times.size(); ++j)
    blockMax[j / 6] = std::max(blockMax[j / 6], tr.supNorm[j]);
  for (std::size_t b = 1; b < blockMax.size(); ++b)
    CHECK(blockMax[b] < blockMax[b - 1]);
  for (std::size_t j = 0; j < tr.supNorm.size(); ++j)
    CHECK(tr.weightedNorm[j] <= tr.supNorm[j]);
  CHECK(tr.dataNorms.l1 == 1.0);
  CHECK(tr.dataNorms.l11 == 1.0);
}

TEST_CASE("gapless models trace with the oracle only") {
  const auto p = HoppingParams::make(1.0, 1.0);
  const auto tr = oracleTrace(p, deltaA(0), {1.0, 2.0}, {0, 10});
  CHECK(tr.supNorm.size() == 2);
  CHECK_THROWS_AS(trace_decay(EvolutionRequest{p, deltaA(0), {1.0}, {0, 10}, Method::Analytic}),
                  GaplessModel);
  CHECK_THROWS_AS(oracleTrace(p, deltaA(0), {2.0, 1.0}, {0, 10}), DomainError);
}

TEST_CASE("doubling the hoppings halves the time scale") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const auto q = HoppingParams::make(2.0, 1.0);
  const std::vector<double> times{4.0, 16.0, 64.0};
  std::vector<double> halved;
  for (double t : times)
    halved.push_back(0.5 * t);
  const auto a = oracleTrace(p, deltaA(0), times, {0, 60});
  const auto b = oracleTrace(q, deltaA(0), halved, {0, 60});
  for (std::size_t j = 0; j < times.size(); ++j)
    CHECK(std::abs(a.supNorm[j] - b.supNorm[j]) < 1e-10);
}

TEST_CASE("the phase of gamma2 does not change A-site delta traces") {
  const auto real = HoppingParams::make(1.0, 0.5);
  const auto complex = HoppingParams::make(1.0, std::polar(0.5, 0.7));
  const auto times = geometric_grid(1.0, 100.0, 6);
  const auto a = oracleTrace(real, deltaA(0), times, {0, 80});
  const auto b = oracleTrace(complex, deltaA(0), times, {0, 80});
  for (std::size_t j = 0; j < times.size(); ++j)
    CHECK(std::abs(a.supNorm[j] - b.supNorm[j]) < 1e-10);
}

TEST_CASE("analytic and oracle traces agree") {
  const auto p = HoppingParams::make(1.0, 0.5);
  EvolutionRequest req{p, deltaA(0), {2.0, 6.0}, {0, 12}, Method::Analytic};
  const auto analytic = trace_decay(req);
  req.method = Method::Oracle;
  const auto oracle = trace_decay(req);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(std::abs(analytic.supNorm[j] - oracle.supNorm[j]) < 1e-6);
}

TEST_CASE("mixed envelope constant bounds every cell") {
  const auto p = HoppingParams::make(1.0, 0.5);
  const auto times = geometric_grid(20.0, 200.0, 8);
  const auto tr = oracleTrace(p, deltaA(0), times, {0, 150}, true);
  REQUIRE(tr.perCell);
  const double c = mixed_envelope_constant(tr, Envelope::Mixed);
  CHECK(c > 0.0);
  for (long j = 0; j < tr.perCell->rows(); ++j)
    for (long k = 0; k < tr.perCell->cols(); ++k)
      CHECK((*tr.perCell)(j, k) <= c * envelope_shape(Envelope::Mixed, times[j], k) * (1.0 + 1e-12));
  CHECK_THROWS_AS(mixed_envelope_constant(synthetic_trace(times, tr.supNorm), Envelope::Mixed),
                  InsufficientData);
}

TEST_CASE("bulk free evolution decays at least like t^{-1/3}") {
  const auto p = HoppingParams::make(1.0, 2.0);
  LatticeWave f;
  f.first = 0;
  f.cells = {Cell(1.0, 0.0)};
  const auto times = geometric_grid(100.0, 2000.0, 10);
  const long nHalf = static_cast<long>(p.vMax() * 2000.0 + 200.0);
  const auto states = oracle_evolve_bulk(f, p, times, nHalf);
  std::vector<double> sup;
  for (const auto &s : states) {
    double m = 0.0;
    for (const auto &c : s.cells)
      m = std::max(m, c.norm());
    sup.push_back(m);
  }
  const auto fit = fit_power_law(synthetic_trace(times, sup), Envelope::PowerThird);
  CHECK(fit.exponent <= -1.0 / 3.0 + 0.05);
}

TEST_CASE("constant dependence scan") {
  std::vector<HoppingParams> grid{HoppingParams::make(1.0, 0.5), HoppingParams::make(1.0, 0.9)};
  const auto times = geometric_grid(20.0, 400.0, 8);
  const auto rows = constant_dependence_scan(grid, deltaA(0), Envelope::PowerThird, times, {0, 300});
  REQUIRE(rows.size() == 2);
  for (const auto &r : rows) {
    CHECK(r.fittedConstant > 0.0);
    CHECK(r.ratio == doctest::Approx(r.fittedConstant / r.prefactor));
  }
  CHECK(rows[1].prefactor > rows[0].prefactor);
  CHECK(prefactor(grid[0], Envelope::PowerThird) ==
        doctest::Approx(1.0 + std::pow(0.5, -2.0 / 3.0) + std::pow(0.5, -1.0 / 3.0)));
  CHECK_THROWS_AS(constant_dependence_scan({HoppingParams::make(1.0, 1.0)}, deltaA(0),
                                           Envelope::PowerThird, times, {0, 10}),
                  GaplessModel);
}
