#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sshd/errors.hpp"

namespace sshd {

using cplx = std::complex<double>;
using Cell = Eigen::Vector2cd; // (A, B) amplitudes of one unit cell

enum class Site { A = 0, B = 1 };

// Model parameters: gamma1 > 0 in-cell hopping, gamma2 != 0 out-of-cell hopping.
struct HoppingParams {
  double gamma1 = 1.0;
  cplx gamma2 = 1.0;
  double absGamma2 = 1.0;
  double gammaPlus = 2.0;
  double gammaMinus = 0.0;
  double phi = 0.0; // principal argument of gamma2
  double G = 2.0;

  static HoppingParams make(double gamma1, cplx gamma2);

  cplx expIPhi() const { return gamma2 / absGamma2; }
  double minHopping() const { return std::min(gamma1, absGamma2); }
  double vMax() const { return minHopping(); }
  bool topological() const { return absGamma2 > gamma1 && !gapless(); }
  bool gapless() const;
};

// Finite-support state on the half line; cell 0 is the edge cell.
struct WaveFunction {
  std::vector<Cell> cells;

  WaveFunction() = default;
  explicit WaveFunction(std::size_t n) : cells(n, Cell::Zero()) {}

  static WaveFunction delta(long cell, Site site, std::size_t minCells = 0);

  std::size_t size() const { return cells.size(); }
  Cell at(long n) const;
  void resize(std::size_t n) { cells.resize(n, Cell::Zero()); }
  double norm() const;
  double supNorm() const;
  // Weighted l^1 norm sum (1+n)^sigma |f_n|.
  double l1Norm(int sigma = 0) const;
};

WaveFunction operator+(const WaveFunction &a, const WaveFunction &b);
WaveFunction operator-(const WaveFunction &a, const WaveFunction &b);
WaveFunction operator*(cplx s, const WaveFunction &a);
cplx inner(const WaveFunction &a, const WaveFunction &b); // <a, b>, antilinear in a
double maxDiff(const WaveFunction &a, const WaveFunction &b);

// Finite-support state on Z; cells[j] is cell first + j.
struct LatticeWave {
  long first = 0;
  std::vector<Cell> cells;

  static LatticeWave fromHalfLine(const WaveFunction &f);
  Cell at(long n) const;
  long last() const { return first + static_cast<long>(cells.size()) - 1; }
  double norm() const;
};

cplx inner(const LatticeWave &a, const LatticeWave &b);

struct SpectrumBands {
  double negLo, negHi; // [-gamma+, -gamma-]
  double posLo, posHi; // [gamma-, gamma+]
  std::optional<double> edgeEigenvalue;

  bool bandsDisjoint() const { return posLo > 0.0; }
  bool contains(double lambda, double tol = 0.0) const;
  double distance(cplx z) const;
};

WaveFunction apply_edge_hamiltonian(const WaveFunction &psi, const HoppingParams &p);
LatticeWave apply_bulk_hamiltonian(const LatticeWave &psi, const HoppingParams &p);

WaveFunction edge_state(const HoppingParams &p, std::size_t nCells);
WaveFunction normalized_edge_state(const HoppingParams &p, std::size_t nCells);

WaveFunction chiral_conjugate(const WaveFunction &psi);
LatticeWave chiral_conjugate(const LatticeWave &psi);

WaveFunction project_ac(const WaveFunction &psi, const HoppingParams &p, std::size_t nCells);

SpectrumBands spectrum_bands(const HoppingParams &p);

// Right-end closure of a truncated half-line chain. Plain keeps all 2N sites;
// StrongBond drops the final B site when |gamma2| > gamma1 so that the cut
// falls on a strong bond and the artificial end carries no zero mode.
enum class Termination { Plain, StrongBond };

Eigen::MatrixXcd edge_hamiltonian_matrix(const HoppingParams &p, std::size_t nCells,
                                         Termination term = Termination::Plain);

Eigen::VectorXcd to_vector(const WaveFunction &psi, std::size_t nCells);
WaveFunction from_vector(const Eigen::VectorXcd &v);

} // namespace sshd
