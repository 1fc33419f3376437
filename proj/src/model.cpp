#include "sshd/model.hpp"

#include <algorithm>
#include <cmath>

namespace sshd {

HoppingParams HoppingParams::make(double gamma1, cplx gamma2) {
  if (!(gamma1 > 0.0) || !std::isfinite(gamma1))
    throw InvalidParams("gamma1 must be a positive finite number");
  const double a2 = std::abs(gamma2);
  if (!(a2 > 0.0) || !std::isfinite(a2))
    throw InvalidParams("gamma2 must be nonzero and finite");
  HoppingParams p;
  p.gamma1 = gamma1;
  p.gamma2 = gamma2;
  p.absGamma2 = a2;
  p.gammaPlus = gamma1 + a2;
  p.gammaMinus = std::abs(a2 - gamma1);
  p.phi = std::arg(gamma2);
  p.G = a2 / gamma1 + gamma1 / a2;
  return p;
}

bool HoppingParams::gapless() const {
  return gammaMinus <= 1e-13 * gammaPlus;
}

WaveFunction WaveFunction::delta(long cell, Site site, std::size_t minCells) {
  if (cell < 0)
    throw DomainError("half-line cells are indexed from 0");
  WaveFunction f(std::max<std::size_t>(minCells, static_cast<std::size_t>(cell) + 1));
  f.cells[cell](static_cast<int>(site)) = 1.0;
  return f;
}

Cell WaveFunction::at(long n) const {
  if (n < 0 || n >= static_cast<long>(cells.size()))
    return Cell::Zero();
  return cells[n];
}

double WaveFunction::norm() const {
  double s = 0.0;
  for (const auto &c : cells)
    s += c.squaredNorm();
  return std::sqrt(s);
}

double WaveFunction::supNorm() const {
  double s = 0.0;
  for (const auto &c : cells)
    s = std::max(s, c.norm());
  return s;
}

double WaveFunction::l1Norm(int sigma) const {
  double s = 0.0;
  for (std::size_t n = 0; n < cells.size(); ++n)
    s += std::pow(1.0 + static_cast<double>(n), sigma) * cells[n].norm();
  return s;
}

WaveFunction operator+(const WaveFunction &a, const WaveFunction &b) {
  WaveFunction r(std::max(a.size(), b.size()));
  for (std::size_t n = 0; n < r.size(); ++n)
    r.cells[n] = a.at(n) + b.at(n);
  return r;
}

WaveFunction operator-(const WaveFunction &a, const WaveFunction &b) {
  WaveFunction r(std::max(a.size(), b.size()));
  for (std::size_t n = 0; n < r.size(); ++n)
    r.cells[n] = a.at(n) - b.at(n);
  return r;
}

WaveFunction operator*(cplx s, const WaveFunction &a) {
  WaveFunction r = a;
  for (auto &c : r.cells)
    c *= s;
  return r;
}

cplx inner(const WaveFunction &a, const WaveFunction &b) {
  cplx s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j)
    s += a.cells[j].dot(b.cells[j]);
  return s;
}

double maxDiff(const WaveFunction &a, const WaveFunction &b) {
  double d = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j)
    d = std::max(d, (a.at(j) - b.at(j)).cwiseAbs().maxCoeff());
  return d;
}

LatticeWave LatticeWave::fromHalfLine(const WaveFunction &f) {
  LatticeWave w;
  w.first = 0;
  w.cells = f.cells;
  return w;
}

Cell LatticeWave::at(long n) const {
  const long j = n - first;
  if (j < 0 || j >= static_cast<long>(cells.size()))
    return Cell::Zero();
  return cells[j];
}

double LatticeWave::norm() const {
  double s = 0.0;
  for (const auto &c : cells)
    s += c.squaredNorm();
  return std::sqrt(s);
}

cplx inner(const LatticeWave &a, const LatticeWave &b) {
  cplx s = 0.0;
  for (long n = std::max(a.first, b.first); n <= std::min(a.last(), b.last()); ++n)
    s += a.at(n).dot(b.at(n));
  return s;
}

bool SpectrumBands::contains(double lambda, double tol) const {
  const double a = std::abs(lambda);
  return a >= posLo - tol && a <= posHi + tol;
}

double SpectrumBands::distance(cplx z) const {
  auto distInterval = [&](double lo, double hi) {
    const double x = std::clamp(z.real(), lo, hi);
    return std::abs(z - cplx(x, 0.0));
  };
  double d = std::min(distInterval(negLo, negHi), distInterval(posLo, posHi));
  if (edgeEigenvalue)
    d = std::min(d, std::abs(z - *edgeEigenvalue));
  return d;
}

WaveFunction apply_edge_hamiltonian(const WaveFunction &psi, const HoppingParams &p) {
  const long N = static_cast<long>(psi.size());
  WaveFunction out(psi.size() + 1);
  const cplx g2c = std::conj(p.gamma2);
  for (long n = 0; n <= N; ++n) {
    const Cell c = psi.at(n);
    const Cell prev = psi.at(n - 1); // psi_{-1} = 0 through at()
    const Cell next = psi.at(n + 1);
    out.cells[n](0) = p.gamma1 * c(1) + p.gamma2 * prev(1);
    out.cells[n](1) = p.gamma1 * c(0) + g2c * next(0);
  }
  return out;
}

LatticeWave apply_bulk_hamiltonian(const LatticeWave &psi, const HoppingParams &p) {
  LatticeWave out;
  out.first = psi.first - 1;
  out.cells.assign(psi.cells.size() + 2, Cell::Zero());
  const cplx g2c = std::conj(p.gamma2);
  for (long n = out.first; n <= out.last(); ++n) {
    const Cell c = psi.at(n);
    out.cells[n - out.first](0) = p.gamma1 * c(1) + p.gamma2 * psi.at(n - 1)(1);
    out.cells[n - out.first](1) = p.gamma1 * c(0) + g2c * psi.at(n + 1)(0);
  }
  return out;
}

WaveFunction edge_state(const HoppingParams &p, std::size_t nCells) {
  if (!p.topological())
    throw NotInTopologicalPhase("the zero mode is normalizable only when |gamma2| > gamma1");
  WaveFunction phi(nCells);
  const cplx ratio = -p.gamma1 / std::conj(p.gamma2);
  cplx a = 1.0;
  for (std::size_t n = 0; n < nCells; ++n) {
    phi.cells[n] = Cell(a, 0.0);
    a *= ratio;
  }
  return phi;
}

WaveFunction normalized_edge_state(const HoppingParams &p, std::size_t nCells) {
  WaveFunction phi = edge_state(p, nCells);
  return cplx(1.0 / phi.norm()) * phi;
}

WaveFunction chiral_conjugate(const WaveFunction &psi) {
  WaveFunction out = psi;
  for (auto &c : out.cells)
    c(1) = -c(1);
  return out;
}

LatticeWave chiral_conjugate(const LatticeWave &psi) {
  LatticeWave out = psi;
  for (auto &c : out.cells)
    c(1) = -c(1);
  return out;
}

WaveFunction project_ac(const WaveFunction &psi, const HoppingParams &p, std::size_t nCells) {
  if (!p.topological())
    return psi;
  const WaveFunction phi = normalized_edge_state(p, std::max(nCells, psi.size()));
  WaveFunction out = psi;
  out.resize(phi.size());
  const cplx c = inner(phi, out);
  return out - c * phi;
}

SpectrumBands spectrum_bands(const HoppingParams &p) {
  SpectrumBands b;
  b.negLo = -p.gammaPlus;
  b.negHi = -p.gammaMinus;
  b.posLo = p.gammaMinus;
  b.posHi = p.gammaPlus;
  if (p.topological())
    b.edgeEigenvalue = 0.0;
  return b;
}

Eigen::MatrixXcd edge_hamiltonian_matrix(const HoppingParams &p, std::size_t nCells,
                                         Termination term) {
  std::size_t dim = 2 * nCells;
  if (term == Termination::StrongBond && p.topological())
    dim -= 1;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 0; n < nCells; ++n) {
    const std::size_t a = 2 * n, b = 2 * n + 1;
    if (b < dim) {
      H(a, b) = p.gamma1;
      H(b, a) = p.gamma1;
    }
    if (n > 0) {
      const std::size_t bPrev = 2 * n - 1;
      H(a, bPrev) = p.gamma2;
      H(bPrev, a) = std::conj(p.gamma2);
    }
  }
  return H;
}

Eigen::VectorXcd to_vector(const WaveFunction &psi, std::size_t nCells) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * nCells);
  for (std::size_t n = 0; n < std::min(nCells, psi.size()); ++n) {
    v(2 * n) = psi.cells[n](0);
    v(2 * n + 1) = psi.cells[n](1);
  }
  return v;
}

WaveFunction from_vector(const Eigen::VectorXcd &v) {
  WaveFunction psi((v.size() + 1) / 2);
  for (Eigen::Index j = 0; j < v.size(); ++j)
    psi.cells[j / 2](j % 2) = v(j);
  return psi;
}

} // namespace sshd
