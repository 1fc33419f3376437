#pragma once

#include <functional>

#include "sshd/dispersion.hpp"
#include "sshd/model.hpp"
#include "sshd/quadrature.hpp"

namespace sshd {

// Inclusive range of cell indices.
struct CellWindow {
  long first = 0;
  long last = 0;
  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
};

// q -> f~(q) = sum_{m>=0} e^{-imq} f_m, per component.
class FLFunction {
public:
  FLFunction() = default;
  explicit FLFunction(WaveFunction coefficients);
  static FLFunction fromCallable(std::function<Cell(cplx)> fn);

  Cell operator()(cplx q) const;
  Cell operator()(double q) const { return (*this)(cplx(q, 0.0)); }
  bool hasCoefficients() const { return !fn_; }
  const WaveFunction &coefficients() const { return coeffs_; }

private:
  WaveFunction coeffs_;
  std::function<Cell(cplx)> fn_;
};

WaveFunction right_shift(const WaveFunction &f);
FLFunction fourier_laplace(const WaveFunction &f);
// f_m = (2 pi)^{-1} int e^{imq} f~(q) dq on cells 0..nCells-1, by the trapezoid
// rule on `samples` equispaced points (exact for trigonometric polynomials).
WaveFunction inverse_fourier_laplace(const FLFunction &ft, std::size_t nCells, int samples);

cplx J_closed(int n, cplx z, const HoppingParams &p);
cplx K_closed(int n, cplx z, const HoppingParams &p);
Eigen::Matrix2cd I_plus_VU(cplx z, const HoppingParams &p);
cplx det_I_plus_VU(cplx z, const HoppingParams &p);

LatticeWave bulk_resolvent_apply(cplx z, const WaveFunction &f, CellWindow window,
                                 const HoppingParams &p, const QuadratureSpec &spec);
LatticeWave edge_resolvent_apply(cplx z, const WaveFunction &f, CellWindow window,
                                 const HoppingParams &p, const QuadratureSpec &spec);
// (H_edge - z)^{-1} f = bulk term minus edge correction; window.first >= 0.
LatticeWave resolvent_apply(cplx z, const WaveFunction &f, CellWindow window,
                            const HoppingParams &p, const QuadratureSpec &spec);

// [R(lambda + i0) - R(lambda - i0)] f for lambda inside either band.
LatticeWave resolvent_boundary_jump(double lambda, const WaveFunction &f, CellWindow window,
                                    const HoppingParams &p, const QuadratureSpec &spec);

} // namespace sshd
