#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sshd/propagator.hpp"

namespace sshd {

struct DataNorms {
  double l1 = 0.0;  // sum |f_n|
  double l11 = 0.0; // sum (1+n)|f_n|
  double l12 = 0.0; // sum (1+n)^2 |f_n|
};

struct DecayTrace {
  std::vector<double> times;
  std::vector<double> supNorm;      // sup_n |psi_n(t)| over the window
  std::vector<double> weightedNorm; // sup_n |psi_n(t)|/(1+n)
  std::optional<Eigen::MatrixXd> perCell; // |psi_n(t_j)|, row j, column n - firstCell
  long firstCell = 0;
  HoppingParams params;
  DataNorms dataNorms;
};

enum class Envelope {
  PowerThird, // t^{-1/3}
  LogHalf,    // log(sqrt(2+t^2)) t^{-1/2}
  PowerHalf,  // t^{-1/2}
  Mixed,      // log(sqrt(2+t^2)) t^{-1/2} + n t^{-1}
  MixedNoLog  // t^{-1/2} + n t^{-1}
};

std::string to_string(Envelope e);
Envelope envelope_from_string(const std::string &s);
double envelope_shape(Envelope e, double t, long n = 0);

struct FitResult {
  Envelope model = Envelope::PowerThird;
  double exponent = 0.0; // least-squares log-log slope of the data
  double constant = 0.0; // fitted prefactor of the model shape
  double envelopeConstant = 0.0; // smallest C with data <= C * shape on the window
  double residual = 0.0; // max |data/(constant*shape) - 1|
  double tLo = 0.0, tHi = 0.0;
  int points = 0;
};

std::vector<double> geometric_grid(double t0, double t1, int points);
std::vector<double> linear_grid(double t0, double t1, int points);

DataNorms data_norms(const WaveFunction &f);

// Runs the requested propagator (the oracle for Method::Oracle and
// Method::Both) and reduces to the decay norms over req.cells.
DecayTrace trace_decay(const EvolutionRequest &req, bool keepPerCell = false,
                       const QuadratureSpec &spec = {});

// Builds a trace from given sup-norm samples.
DecayTrace synthetic_trace(const std::vector<double> &times, const std::vector<double> &supNorm);

// Fits a sup-norm envelope on [tLo, tHi] (the full trace when tLo >= tHi).
FitResult fit_power_law(const DecayTrace &trace, Envelope model, double tLo = 0.0,
                        double tHi = 0.0);

// Smallest C with |psi_n(t)| <= C * shape(n, t) over every (n, t) of a per-cell trace.
double mixed_envelope_constant(const DecayTrace &trace, Envelope model);

// Bound prefactors: (1 + min^{-2/3} + gamma-^{-1/3}) for t^{-1/3} and
// (1 + min^{-1} + gamma-^{-1/2}) for the t^{-1/2} families.
double prefactor(const HoppingParams &p, Envelope model);

struct ConstantRow {
  HoppingParams params;
  double fittedConstant = 0.0;
  double prefactor = 0.0;
  double ratio = 0.0;
};

std::vector<ConstantRow> constant_dependence_scan(const std::vector<HoppingParams> &grid,
                                                  const WaveFunction &f, Envelope model,
                                                  const std::vector<double> &times,
                                                  CellWindow cells);

} // namespace sshd
