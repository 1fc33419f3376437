#include "doctest.h"

#include <random>

#include "sshd/dispersion.hpp"
#include "sshd/model.hpp"

using namespace sshd;

namespace {

WaveFunction randomState(std::mt19937 &rng, std::size_t n) {
  std::normal_distribution<double> d;
  WaveFunction f(n);
  for (auto &c : f.cells)
    c = Cell(cplx(d(rng), d(rng)), cplx(d(rng), d(rng)));
  return f;
}

LatticeWave randomLattice(std::mt19937 &rng, long first, std::size_t n) {
  LatticeWave w;
  w.first = first;
  w.cells = randomState(rng, n).cells;
  return w;
}

} // namespace

TEST_CASE("hopping parameters and derived constants") {
  const auto p = HoppingParams::make(1.0, cplx(1.2, -0.7));
  CHECK(p.gammaPlus * p.gammaPlus - p.gammaMinus * p.gammaMinus ==
        doctest::Approx(4.0 * p.gamma1 * p.absGamma2).epsilon(1e-14));
  CHECK(std::abs(std::exp(cplx(0.0, p.phi)) * p.absGamma2 - p.gamma2) < 1e-15);
  CHECK(p.G >= 2.0);
  CHECK(HoppingParams::make(1.0, 1.0).G == doctest::Approx(2.0));
  CHECK(HoppingParams::make(1.0, 1.0).gapless());
  CHECK_THROWS_AS(HoppingParams::make(0.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(HoppingParams::make(1.0, 0.0), InvalidParams);
  CHECK_THROWS_AS(HoppingParams::make(-1.0, 1.0), InvalidParams);
}

TEST_CASE("edge Hamiltonian stencil") {
  const auto p = HoppingParams::make(1.0, 2.0);
  const auto out = apply_edge_hamiltonian(WaveFunction::delta(0, Site::A), p);
  CHECK(std::abs(out.at(0)(0)) == 0.0);
  CHECK(std::abs(out.at(0)(1) - 1.0) == 0.0);
  CHECK(out.size() <= 2);
  CHECK(out.at(1).norm() == 0.0);
}

TEST_CASE("bulk Hamiltonian stencil") {
  const auto p = HoppingParams::make(1.0, cplx(0.0, 2.0));
  LatticeWave d;
  d.first = 0;
  d.cells = {Cell(1.0, 0.0)};
  const auto out = apply_bulk_hamiltonian(d, p);
  CHECK(std::abs(out.at(-1)(0)) == 0.0);
  CHECK(std::abs(out.at(-1)(1) - std::conj(p.gamma2)) < 1e-15);
  CHECK(std::abs(out.at(0)(1) - 1.0) < 1e-15);
  CHECK(std::abs(out.at(0)(0)) == 0.0);
}

TEST_CASE("bulk plane wave is an eigenvector of the symbol") {
  const auto p = HoppingParams::make(0.8, cplx(0.3, 1.1));
  const double q = 0.7;
  const cplx h = h_of(q, p);
  const double k = k_of(q - p.phi, p);
  CHECK(std::abs(std::abs(h) - k) < 1e-14);
  const Cell vplus = Cell(h / k, 1.0) / std::sqrt(2.0);
  LatticeWave w;
  w.first = -60;
  for (long n = -60; n <= 60; ++n)
    w.cells.push_back(std::exp(cplx(0.0, n * q)) * vplus);
  const auto hw = apply_bulk_hamiltonian(w, p);
  for (long n = -50; n <= 50; ++n)
    CHECK((hw.at(n) - k * w.at(n)).norm() < 1e-13);
}

TEST_CASE("Hermiticity and chiral anticommutation") {
  std::mt19937 rng(7);
  const auto p = HoppingParams::make(0.9, cplx(0.4, -1.3));
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = randomState(rng, 17), b = randomState(rng, 23);
    const auto ha = apply_edge_hamiltonian(a, p), hb = apply_edge_hamiltonian(b, p);
    CHECK(std::abs(inner(ha, b) - inner(a, hb)) < 1e-12);
    const auto lhs = chiral_conjugate(apply_edge_hamiltonian(chiral_conjugate(a), p));
    CHECK(maxDiff(lhs, -1.0 * ha) == 0.0);
    CHECK(maxDiff(chiral_conjugate(chiral_conjugate(a)), a) == 0.0);

    const auto la = randomLattice(rng, -5, 12), lb = randomLattice(rng, -9, 15);
    const auto hla = apply_bulk_hamiltonian(la, p), hlb = apply_bulk_hamiltonian(lb, p);
    CHECK(std::abs(inner(hla, lb) - inner(la, hlb)) < 1e-12);
    const auto lc = chiral_conjugate(apply_bulk_hamiltonian(chiral_conjugate(la), p));
    for (long n = hla.first; n <= hla.last(); ++n)
      CHECK((lc.at(n) + hla.at(n)).norm() == 0.0);
  }
}

TEST_CASE("edge state") {
  const auto p = HoppingParams::make(1.0, 2.0);
  const auto phi = edge_state(p, 200);
  CHECK(std::abs(phi.at(0)(0) - 1.0) == 0.0);
  CHECK(std::abs(phi.at(1)(0) + 0.5) < 1e-15);
  CHECK(apply_edge_hamiltonian(phi, p).norm() / phi.norm() < 1e-12);
  CHECK(maxDiff(chiral_conjugate(phi), phi) == 0.0);
  CHECK_THROWS_AS(edge_state(HoppingParams::make(2.0, 1.0), 10), NotInTopologicalPhase);
  CHECK_THROWS_AS(edge_state(HoppingParams::make(1.0, 1.0), 10), NotInTopologicalPhase);

  const auto pc = HoppingParams::make(1.0, cplx(0.0, 2.0));
  const auto e = edge_state(pc, 5);
  CHECK(std::abs(e.at(1)(0) / e.at(0)(0) - cplx(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(normalized_edge_state(pc, 100).norm() - 1.0) < 1e-14);
}

TEST_CASE("continuous-spectrum projection") {
  const auto p = HoppingParams::make(1.0, 2.0);
  const auto phiHat = normalized_edge_state(p, 80);
  CHECK(project_ac(phiHat, p, 80).norm() < 1e-10);
  std::mt19937 rng(3);
  const auto f = randomState(rng, 10);
  const auto once = project_ac(f, p, 80);
  CHECK(maxDiff(project_ac(once, p, 80), once) < 1e-13);
  CHECK(std::abs(inner(phiHat, once)) < 1e-13);
  const auto trivial = HoppingParams::make(2.0, 1.0);
  CHECK(maxDiff(project_ac(f, trivial, 80), f) == 0.0);
}

TEST_CASE("spectrum bands") {
  auto b = spectrum_bands(HoppingParams::make(1.0, 2.0));
  CHECK(b.negLo == -3.0);
  CHECK(b.negHi == -1.0);
  CHECK(b.posLo == 1.0);
  CHECK(b.posHi == 3.0);
  REQUIRE(b.edgeEigenvalue.has_value());
  CHECK(*b.edgeEigenvalue == 0.0);
  CHECK(b.bandsDisjoint());

  b = spectrum_bands(HoppingParams::make(1.0, 1.0));
  CHECK(b.posLo == 0.0);
  CHECK(b.posHi == 2.0);
  CHECK_FALSE(b.edgeEigenvalue.has_value());
  CHECK_FALSE(b.bandsDisjoint());

  b = spectrum_bands(HoppingParams::make(3.0, 1.0));
  CHECK(b.posLo == 2.0);
  CHECK(b.posHi == 4.0);
  CHECK_FALSE(b.edgeEigenvalue.has_value());
}

TEST_CASE("truncated matrix agrees with the stencil and its spectrum lies in [-g+, g+]") {
  const auto p = HoppingParams::make(1.0, cplx(0.6, 0.5));
  std::mt19937 rng(11);
  const auto f = randomState(rng, 30);
  const auto H = edge_hamiltonian_matrix(p, 30);
  CHECK((H - H.adjoint()).norm() == 0.0);
  const auto hf = from_vector(H * to_vector(f, 30));
  const auto stencil = apply_edge_hamiltonian(f, p);
  for (long n = 0; n < 29; ++n)
    CHECK((hf.at(n) - stencil.at(n)).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= p.gammaPlus + 1e-12);
}
