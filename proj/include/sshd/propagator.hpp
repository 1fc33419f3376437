#pragma once

#include <string>
#include <vector>

#include "sshd/dispersion.hpp"
#include "sshd/model.hpp"
#include "sshd/quadrature.hpp"
#include "sshd/resolvent.hpp"

namespace sshd {

enum class Method { Oracle, Analytic, Both };

struct EvolutionRequest {
  HoppingParams params;
  WaveFunction initial;
  std::vector<double> times;
  CellWindow cells{0, 0};
  Method method = Method::Oracle;
};

// Smallest truncation length that keeps the light cone of the data and the
// requested output window away from the artificial right end.
std::size_t causal_cells(const HoppingParams &p, std::size_t support, long outLast, double tMax);

// e^{-iHt} f on a truncated half line of nCells cells, by Chebyshev expansion.
// Returns one full truncated state per requested time.
std::vector<WaveFunction> oracle_evolve(const EvolutionRequest &req, std::size_t nCells,
                                        Termination term = Termination::Plain);

// e^{-iH_bulk t} f for two-sided data on cells [-nHalf, nHalf].
std::vector<LatticeWave> oracle_evolve_bulk(const LatticeWave &f, const HoppingParams &p,
                                            const std::vector<double> &times, long nHalf);

enum class Band { Positive, Negative, Both };

// [e^{-iH_bulk t} P f]_n on the window for P the spectral projection onto `band`.
LatticeWave bulk_propagate(const LatticeWave &f, CellWindow window, double t,
                           const HoppingParams &p, const QuadratureSpec &spec,
                           Band band = Band::Both);

enum class TermKind { I, II, IIa, IIb, III, IIIa, IIIb };
std::string to_string(TermKind k);

struct TypeIntegralTerm {
  TermKind kind = TermKind::I;
  long n = 0;
  double t = 0.0;
  Cell value = Cell::Zero();
  double errorEstimate = 0.0;
  std::vector<std::pair<TermKind, Cell>> parts;
};

// int_0^pi e^{-ik(y)t} cos(ny) f~(y) dy
TypeIntegralTerm type_I(long n, double t, const FLFunction &fTilde, const HoppingParams &p,
                        const QuadratureSpec &spec);
// int_0^pi cos(ny) int_{gamma-}^{gamma+} e^{-i lambda t} F(lambda)/(lambda + k(y)) dlambda dy
TypeIntegralTerm type_II(long n, double t, const FLFunction &fTilde, const HoppingParams &p,
                         const QuadratureSpec &spec);
// int_0^pi cos(ny) PV int e^{-i lambda t} F(lambda)/(k(y) - lambda) dlambda dy; the parts
// IIIa and IIIb use the kernel 1/(lambda - k(y)), so value = -(IIIa + IIIb).
TypeIntegralTerm type_III(long n, double t, const FLFunction &fTilde, const HoppingParams &p,
                          const QuadratureSpec &spec, double alpha = 0.0);

// The three groups of the six-term edge correction: the +-i pi density terms,
// the 1/(k + lambda) terms and the principal-value 1/(k - lambda) terms.
struct EdgeCorrectionGroups {
  LatticeWave iPi;
  LatticeWave plusLambda;
  LatticeWave principalValue;
  LatticeWave total() const;
};

// (U^- - U^+) f / (4 pi^2 i) on the window for the positive band.
EdgeCorrectionGroups edge_correction_groups(const WaveFunction &f, CellWindow window, double t,
                                            const HoppingParams &p, const QuadratureSpec &spec);
LatticeWave edge_correction(const WaveFunction &f, CellWindow window, double t,
                            const HoppingParams &p, const QuadratureSpec &spec);

// [e^{-iHt} P_+ f]_n from the bulk positive-band term plus the edge correction.
LatticeWave positive_band_propagate(const WaveFunction &f, CellWindow window, double t,
                                    const HoppingParams &p, const QuadratureSpec &spec);

// e^{-iHt} P_ac f on req.cells for every time in req.times.
std::vector<LatticeWave> evolve_ac(const EvolutionRequest &req, const QuadratureSpec &spec);

} // namespace sshd
