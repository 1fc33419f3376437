#include "sshd/decay.hpp"

#include <cmath>

#include "sshd/parallel.hpp"

namespace sshd {

namespace {

double logFactor(double t) { return std::log(std::sqrt(2.0 + t * t)); }

std::vector<std::size_t> windowIndices(const DecayTrace &trace, double tLo, double tHi) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < trace.times.size(); ++j)
    if (tLo >= tHi || (trace.times[j] >= tLo && trace.times[j] <= tHi))
      idx.push_back(j);
  return idx;
}

} // namespace

std::string to_string(Envelope e) {
  switch (e) {
  case Envelope::PowerThird: return "t^-1/3";
  case Envelope::LogHalf: return "log*t^-1/2";
  case Envelope::PowerHalf: return "t^-1/2";
  case Envelope::Mixed: return "log*t^-1/2+n/t";
  case Envelope::MixedNoLog: return "t^-1/2+n/t";
  }
  return "?";
}

Envelope envelope_from_string(const std::string &s) {
  for (Envelope e : {Envelope::PowerThird, Envelope::LogHalf, Envelope::PowerHalf, Envelope::Mixed,
                     Envelope::MixedNoLog})
    if (to_string(e) == s)
      return e;
  if (s == "power_third")
    return Envelope::PowerThird;
  if (s == "log_half")
    return Envelope::LogHalf;
  if (s == "power_half")
    return Envelope::PowerHalf;
  if (s == "mixed")
    return Envelope::Mixed;
  if (s == "mixed_no_log")
    return Envelope::MixedNoLog;
  throw ConfigError("unknown envelope '" + s + "'");
}

double envelope_shape(Envelope e, double t, long n) {
  switch (e) {
  case Envelope::PowerThird: return std::pow(t, -1.0 / 3.0);
  case Envelope::LogHalf: return logFactor(t) / std::sqrt(t);
  case Envelope::PowerHalf: return 1.0 / std::sqrt(t);
  case Envelope::Mixed: return logFactor(t) / std::sqrt(t) + static_cast<double>(n) / t;
  case Envelope::MixedNoLog: return 1.0 / std::sqrt(t) + static_cast<double>(n) / t;
  }
  return 0.0;
}

std::vector<double> geometric_grid(double t0, double t1, int points) {
  if (points < 1 || !(t0 > 0.0) || !(t1 >= t0))
    throw DomainError("geometric grid needs 0 < t0 <= t1 and points >= 1");
  std::vector<double> g(points);
  for (int j = 0; j < points; ++j)
    g[j] = points == 1 ? t0 : t0 * std::pow(t1 / t0, static_cast<double>(j) / (points - 1));
  return g;
}

std::vector<double> linear_grid(double t0, double t1, int points) {
  if (points < 1 || !(t1 >= t0))
    throw DomainError("linear grid needs t0 <= t1 and points >= 1");
  std::vector<double> g(points);
  for (int j = 0; j < points; ++j)
    g[j] = points == 1 ? t0 : t0 + (t1 - t0) * j / (points - 1);
  return g;
}

DataNorms data_norms(const WaveFunction &f) { return {f.l1Norm(0), f.l1Norm(1), f.l1Norm(2)}; }

DecayTrace trace_decay(const EvolutionRequest &req, bool keepPerCell, const QuadratureSpec &spec) {
  for (std::size_t j = 1; j < req.times.size(); ++j)
    if (!(req.times[j] > req.times[j - 1]))
      throw DomainError("trace_decay: times must be strictly increasing");
  DecayTrace tr;
  tr.times = req.times;
  tr.params = req.params;
  tr.dataNorms = data_norms(req.initial);
  tr.firstCell = req.cells.first;
  const long W = static_cast<long>(req.cells.size());
  Eigen::MatrixXd cells(static_cast<long>(req.times.size()), W);
  if (req.method == Method::Analytic) {
    const auto states = evolve_ac(req, spec);
    for (std::size_t j = 0; j < states.size(); ++j)
      for (long c = 0; c < W; ++c)
        cells(static_cast<long>(j), c) = states[j].cells[c].norm();
  } else {
    double tMax = 0.0;
    for (double t : req.times)
      tMax = std::max(tMax, t);
    const std::size_t n = causal_cells(req.params, req.initial.size(), req.cells.last, tMax);
    const auto states = oracle_evolve(req, n);
    for (std::size_t j = 0; j < states.size(); ++j)
      for (long c = 0; c < W; ++c)
        cells(static_cast<long>(j), c) = states[j].at(req.cells.first + c).norm();
  }
  for (long j = 0; j < cells.rows(); ++j) {
    double s = 0.0, w = 0.0;
    for (long c = 0; c < W; ++c) {
      s = std::max(s, cells(j, c));
      w = std::max(w, cells(j, c) / (1.0 + static_cast<double>(req.cells.first + c)));
    }
    tr.supNorm.push_back(s);
    tr.weightedNorm.push_back(w);
  }
  if (keepPerCell)
    tr.perCell = std::move(cells);
  return tr;
}

DecayTrace synthetic_trace(const std::vector<double> &times, const std::vector<double> &supNorm) {
  if (times.size() != supNorm.size())
    throw DomainError("synthetic trace: times and values differ in length");
  DecayTrace tr;
  tr.times = times;
  tr.supNorm = supNorm;
  tr.weightedNorm = supNorm;
  return tr;
}

FitResult fit_power_law(const DecayTrace &trace, Envelope model, double tLo, double tHi) {
  if (model == Envelope::Mixed || model == Envelope::MixedNoLog)
    throw DomainError("fit_power_law fits sup-norm envelopes; use mixed_envelope_constant");
  const auto idx = windowIndices(trace, tLo, tHi);
  if (idx.size() < 8)
    throw InsufficientData("fit_power_law needs at least 8 grid points in the window, got " +
                           std::to_string(idx.size()));
  FitResult r;
  r.model = model;
  r.points = static_cast<int>(idx.size());
  r.tLo = trace.times[idx.front()];
  r.tHi = trace.times[idx.back()];
  double sx = 0, sy = 0, sxx = 0, sxy = 0, slr = 0;
  double maxRatio = 0.0;
  for (auto j : idx) {
    const double t = trace.times[j], v = trace.supNorm[j];
    if (!(t > 0.0) || !(v > 0.0))
      throw InsufficientData("fit_power_law needs positive times and norms");
    const double x = std::log(t), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    const double ratio = v / envelope_shape(model, t);
    slr += std::log(ratio);
    maxRatio = std::max(maxRatio, ratio);
  }
  const double m = static_cast<double>(idx.size());
  r.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  if (model == Envelope::LogHalf)
    r.constant = std::exp(slr / m);
  else
    r.constant = std::exp((sy - r.exponent * sx) / m);
  r.envelopeConstant = maxRatio;
  for (auto j : idx) {
    const double t = trace.times[j];
    const double fit = model == Envelope::LogHalf
                           ? r.constant * envelope_shape(model, t)
                           : r.constant * std::pow(t, r.exponent);
    r.residual = std::max(r.residual, std::abs(trace.supNorm[j] / fit - 1.0));
  }
  return r;
}

double mixed_envelope_constant(const DecayTrace &trace, Envelope model) {
  if (!trace.perCell)
    throw InsufficientData("mixed envelope needs a per-cell trace");
  const auto &M = *trace.perCell;
  double c = 0.0;
  for (long j = 0; j < M.rows(); ++j)
    for (long k = 0; k < M.cols(); ++k)
      c = std::max(c, M(j, k) / envelope_shape(model, trace.times[j], trace.firstCell + k));
  return c;
}

double prefactor(const HoppingParams &p, Envelope model) {
  const double mn = p.minHopping();
  if (p.gapless())
    throw GaplessModel("prefactor requires gamma- > 0");
  if (model == Envelope::PowerThird)
    return 1.0 + std::pow(mn, -2.0 / 3.0) + std::pow(p.gammaMinus, -1.0 / 3.0);
  return 1.0 + 1.0 / mn + 1.0 / std::sqrt(p.gammaMinus);
}

std::vector<ConstantRow> constant_dependence_scan(const std::vector<HoppingParams> &grid,
                                                  const WaveFunction &f, Envelope model,
                                                  const std::vector<double> &times,
                                                  CellWindow cells) {
  std::vector<ConstantRow> rows(grid.size());
  const DataNorms dn = data_norms(f);
  const double dataNorm = model == Envelope::MixedNoLog ? dn.l12 : dn.l11;
  parallel_for(grid.size(), [&](std::size_t i) {
    const HoppingParams &p = grid[i];
    if (p.gapless())
      throw GaplessModel("constant_dependence_scan requires gapped parameters");
    EvolutionRequest req;
    req.params = p;
    req.initial = f;
    req.times = times;
    req.cells = cells;
    req.method = Method::Oracle;
    const bool mixed = model == Envelope::Mixed || model == Envelope::MixedNoLog;
    const DecayTrace tr = trace_decay(req, mixed);
    ConstantRow row;
    row.params = p;
    row.fittedConstant = (mixed ? mixed_envelope_constant(tr, model)
                                : fit_power_law(tr, model).envelopeConstant) /
                         dataNorm;
    row.prefactor = prefactor(p, model);
    row.ratio = row.fittedConstant / row.prefactor;
    rows[i] = row;
  });
  return rows;
}

} // namespace sshd
