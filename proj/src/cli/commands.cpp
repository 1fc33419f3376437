#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "sshd/decay.hpp"
#include "sshd/dispersion.hpp"

#include "svg.hpp"

namespace sshd::cli {

using nlohmann::json;

namespace {

constexpr double kSlopeSlack = 0.05;
constexpr double kEnvelopeDrift = 1.2;
constexpr double kEdgeTail = 40.0; // edge state truncated where |phi_n| < e^-40

std::string csv(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v + 0.0);
  return buf;
}

std::string fixed(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void writeFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

void prepare(const CommandContext &ctx) {
  std::error_code ec;
  std::filesystem::create_directories(ctx.outDir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + ctx.outDir.string() + "'");
  writeFile(ctx.outDir / "resolved-config.json", to_json(ctx.config).dump(2) + "\n");
}

std::ostream &log(const CommandContext &ctx) { return *ctx.log; }

// Cells needed before the normalized edge state drops below e^-kEdgeTail.
std::size_t edgeCells(const HoppingParams &p, std::size_t support) {
  if (!p.topological())
    return support;
  const double rate = std::log(p.absGamma2 / p.gamma1);
  const double n = std::ceil(kEdgeTail / rate);
  return support + static_cast<std::size_t>(std::min(n, 200000.0));
}

LatticeWave window(const WaveFunction &psi, CellWindow w) {
  LatticeWave out;
  out.first = w.first;
  for (long n = w.first; n <= w.last; ++n)
    out.cells.push_back(psi.at(n));
  return out;
}

WaveFunction conj(const WaveFunction &f) {
  WaveFunction out = f;
  for (auto &c : out.cells)
    c = c.conjugate();
  return out;
}

LatticeWave conj(const LatticeWave &f) {
  LatticeWave out = f;
  for (auto &c : out.cells)
    c = c.conjugate();
  return out;
}

struct Evolved {
  std::vector<LatticeWave> states;
  std::vector<LatticeWave> reference; // oracle of P_ac f when comparing
  std::vector<cplx> overlap;          // <phi, psi(t)>, topological phase only
};

// Evolution for nonnegative ascending times.
Evolved forward(const HoppingParams &p, const WaveFunction &f, const std::vector<double> &times,
                CellWindow w, Method m, const QuadratureSpec &spec) {
  Evolved e;
  if (times.empty())
    return e;
  const double tMax = times.back();
  EvolutionRequest req{p, f, times, w, m};
  auto oracleRun = [&](const WaveFunction &data, std::size_t minCells, Termination term) {
    EvolutionRequest r = req;
    r.initial = data;
    const std::size_t N = std::max(minCells, causal_cells(p, data.size(), w.last, tMax));
    auto full = oracle_evolve(r, N, term);
    if (p.topological()) {
      const WaveFunction phi = normalized_edge_state(p, N);
      for (const auto &s : full)
        e.overlap.push_back(inner(phi, s));
    }
    std::vector<LatticeWave> out;
    for (const auto &s : full)
      out.push_back(window(s, w));
    return out;
  };
  if (m == Method::Oracle) {
    e.states = oracleRun(f, 0, Termination::Plain);
    return e;
  }
  e.states = evolve_ac(req, spec);
  if (m == Method::Both) {
    const std::size_t N0 = edgeCells(p, f.size());
    e.reference = oracleRun(project_ac(f, p, N0), N0, Termination::StrongBond);
  } else if (p.topological()) {
    const WaveFunction phi = normalized_edge_state(p, static_cast<std::size_t>(w.last) + 1);
    for (const auto &s : e.states) {
      cplx c = 0.0;
      for (long n = w.first; n <= w.last; ++n)
        c += phi.cells[static_cast<std::size_t>(n)].dot(s.at(n));
      e.overlap.push_back(c);
    }
  }
  return e;
}

struct TimedState {
  LatticeWave state;
  std::optional<LatticeWave> reference;
  std::optional<cplx> overlap;
};

// Runs `forward` for |t| and maps negative times through e^{-iHt} f = conj(e^{-iH* |t|} conj f).
std::map<double, TimedState> evolveAll(const RunConfig &cfg, const std::vector<double> &times) {
  std::map<double, TimedState> out;
  for (bool negative : {false, true}) {
    std::vector<double> abs;
    for (double t : times)
      if ((t < 0.0) == negative)
        abs.push_back(std::abs(t));
    std::sort(abs.begin(), abs.end());
    abs.erase(std::unique(abs.begin(), abs.end()), abs.end());
    if (abs.empty())
      continue;
    const HoppingParams p =
        negative ? HoppingParams::make(cfg.params.gamma1, std::conj(cfg.params.gamma2)) : cfg.params;
    const WaveFunction f = negative ? conj(cfg.initial) : cfg.initial;
    const Evolved e = forward(p, f, abs, cfg.cells, cfg.method, cfg.quadrature);
    for (std::size_t i = 0; i < abs.size(); ++i) {
      TimedState ts;
      ts.state = negative ? conj(e.states[i]) : e.states[i];
      if (!e.reference.empty())
        ts.reference = negative ? conj(e.reference[i]) : e.reference[i];
      if (!e.overlap.empty())
        ts.overlap = negative ? std::conj(e.overlap[i]) : e.overlap[i];
      out[negative ? -abs[i] : abs[i]] = std::move(ts);
    }
  }
  return out;
}

bool supEnvelope(Envelope e) { return e != Envelope::Mixed && e != Envelope::MixedNoLog; }

std::vector<std::size_t> rowsInWindow(const DecayTrace &tr, const std::optional<std::pair<double, double>> &w) {
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < tr.times.size(); ++j)
    if (!w || w->first >= w->second || (tr.times[j] >= w->first && tr.times[j] <= w->second))
      rows.push_back(j);
  return rows;
}

// Largest data/shape ratio at row j.
double rowRatio(const DecayTrace &tr, Envelope e, std::size_t j) {
  if (supEnvelope(e))
    return tr.supNorm[j] / envelope_shape(e, tr.times[j]);
  const auto &M = *tr.perCell;
  double c = 0.0;
  for (long k = 0; k < M.cols(); ++k)
    c = std::max(c, M(static_cast<long>(j), k) / envelope_shape(e, tr.times[j], tr.firstCell + k));
  return c;
}

} // namespace

int cmd_spectrum(const CommandContext &ctx) {
  prepare(ctx);
  const auto &p = ctx.config.params;
  auto bands = spectrum_bands(p);
  bands.negHi += 0.0;
  const int winding = winding_number(p);
  const bool topo = p.topological();
  json j = {
      {"gamma1", p.gamma1},
      {"gamma2", {p.gamma2.real(), p.gamma2.imag()}},
      {"bands", {{bands.negLo, bands.negHi}, {bands.posLo, bands.posHi}}},
      {"gammaMinus", p.gammaMinus},
      {"gammaPlus", p.gammaPlus},
      {"gapless", p.gapless()},
      {"phase", topo ? "nontrivial" : "trivial"},
      {"windingNumber", winding},
      {"edgeEigenvalue", bands.edgeEigenvalue ? json(*bands.edgeEigenvalue) : json(nullptr)},
      {"edgeDecayRatio", topo ? json(p.gamma1 / p.absGamma2) : json(nullptr)},
      {"warnings", json::array()},
  };
  auto &out = log(ctx);
  out << "bands: [" << bands.negLo << ", " << bands.negHi << "] U [" << bands.posLo << ", "
      << bands.posHi << "]\n"
      << "gap radius gamma-: " << p.gammaMinus << "\n"
      << "phase: " << (topo ? "nontrivial" : "trivial") << "\n"
      << "winding number: " << winding << "\n";
  if (topo)
    out << "edge state: eigenvalue 0, decay ratio |phi_(n+1)|/|phi_n| = " << p.gamma1 / p.absGamma2
        << "\n";
  else
    out << "edge state: none\n";
  if (p.gapless()) {
    j["warnings"].push_back("analytic propagator unavailable");
    out << "warning: analytic propagator unavailable (gamma- = 0)\n";
  }
  writeFile(ctx.outDir / "spectrum.json", j.dump(2) + "\n");
  return kOk;
}

int cmd_evolve(const CommandContext &ctx) {
  prepare(ctx);
  const auto &cfg = ctx.config;
  if (cfg.method != Method::Oracle && cfg.params.gapless())
    throw GaplessModel("the analytic propagator requires gamma- > 0");
  const auto times = cfg.times.values();
  const auto results = evolveAll(cfg, times);
  const bool both = cfg.method == Method::Both;
  const bool overlap = cfg.params.topological();

  std::ostringstream s;
  s << "t,n,reA,imA,reB,imB,absCell" << (both ? ",absDiff" : "") << (overlap ? ",edgeOverlap" : "")
    << "\n";
  double maxDiff = 0.0;
  Eigen::MatrixXd heat(static_cast<long>(times.size()), static_cast<long>(cfg.cells.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto &r = results.at(times[i]);
    for (long n = cfg.cells.first; n <= cfg.cells.last; ++n) {
      const Cell c = r.state.at(n);
      heat(static_cast<long>(i), n - cfg.cells.first) = c.norm();
      s << csv(times[i]) << "," << n << "," << csv(c(0).real()) << "," << csv(c(0).imag()) << ","
        << csv(c(1).real()) << "," << csv(c(1).imag()) << "," << csv(c.norm());
      if (both) {
        const double d = (c - r.reference->at(n)).norm();
        maxDiff = std::max(maxDiff, d);
        s << "," << csv(d);
      }
      if (overlap)
        s << "," << csv(r.overlap ? std::abs(*r.overlap) : 0.0);
      s << "\n";
    }
  }
  writeFile(ctx.outDir / "evolution.csv", s.str());
  if (cfg.svg)
    writeFile(ctx.outDir / "evolution.svg",
              heatmap_svg(heat, times, cfg.cells.first, "|psi_n(t)|, " + to_string(cfg.method)));
  auto &out = log(ctx);
  out << "wrote " << times.size() << " times x " << cfg.cells.size() << " cells ("
      << to_string(cfg.method) << ")\n";
  if (both)
    out << "maxDiff " << csv(maxDiff) << "\n";
  if (overlap && !results.empty()) {
    const auto &last = results.rbegin()->second;
    if (last.overlap)
      out << "edgeOverlap at t = " << results.rbegin()->first << ": " << csv(std::abs(*last.overlap))
          << "\n";
  }
  return kOk;
}

int cmd_decay_scan(const CommandContext &ctx) {
  prepare(ctx);
  const auto &cfg = ctx.config;
  const auto &p = cfg.params;
  auto &out = log(ctx);

  DecayTrace tr;
  bool projected = false;
  const bool synthetic = cfg.decay.synthetic.has_value();
  if (synthetic) {
    tr = synthetic_trace(cfg.decay.synthetic->times, cfg.decay.synthetic->supNorm);
  } else {
    EvolutionRequest req{p, cfg.initial, cfg.times.values(), cfg.cells,
                         cfg.method == Method::Analytic ? Method::Analytic : Method::Oracle};
    if (req.method == Method::Oracle && p.topological()) {
      req.initial = project_ac(cfg.initial, p, edgeCells(p, cfg.initial.size()));
      projected = true;
    }
    tr = trace_decay(req, true, cfg.quadrature);
  }

  const auto rows = rowsInWindow(tr, cfg.decay.fitWindow);
  const double tLo = cfg.decay.fitWindow ? cfg.decay.fitWindow->first : 0.0;
  const double tHi = cfg.decay.fitWindow ? cfg.decay.fitWindow->second : 0.0;
  const double dataNorm = data_norms(cfg.initial).l1;

  json fits = json::array();
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  std::vector<Series> plot{{"supNorm", tr.times, tr.supNorm, false}};
  if (!synthetic)
    plot.push_back({"weightedNorm", tr.times, tr.weightedNorm, false});
  bool allOk = true;

  for (const auto &name : cfg.decay.envelopes) {
    const Envelope e = envelope_from_string(name);
    json fj = {{"envelope", name}};
    double constant = 0.0;
    bool ok = true;
    if (supEnvelope(e)) {
      const FitResult fit = fit_power_law(tr, e, tLo, tHi);
      constant = fit.envelopeConstant;
      const double expected = e == Envelope::PowerThird ? -1.0 / 3.0 : -0.5;
      const bool slopeOk = fit.exponent <= expected + kSlopeSlack;
      ok = slopeOk;
      fj["exponent"] = fit.exponent;
      fj["constant"] = fit.constant;
      fj["envelopeConstant"] = fit.envelopeConstant;
      fj["residual"] = fit.residual;
      fj["tLo"] = fit.tLo;
      fj["tHi"] = fit.tHi;
      fj["points"] = fit.points;
      fj["slopeBound"] = expected + kSlopeSlack;
      fj["slopeOk"] = slopeOk;
      out << name << ": slope " << fixed("%.4f", fit.exponent) << " (bound "
          << fixed("%.4f", expected + kSlopeSlack) << "), constant " << fixed("%.4g", fit.constant)
          << ", envelope constant " << fixed("%.4g", fit.envelopeConstant);
    } else if (!tr.perCell) {
      fj["skipped"] = "needs per-cell data";
      out << name << ": skipped (needs per-cell data)\n";
      fits.push_back(fj);
      continue;
    } else {
      constant = 0.0;
      for (auto j : rows)
        constant = std::max(constant, rowRatio(tr, e, j));
      fj["envelopeConstant"] = constant;
      fj["points"] = rows.size();
      out << name << ": envelope constant " << fixed("%.4g", constant);
    }
    if (rows.size() >= 2) {
      const std::size_t half = rows.size() / 2;
      double early = 0.0, late = 0.0;
      for (std::size_t k = 0; k < rows.size(); ++k)
        (k < half ? early : late) = std::max(k < half ? early : late, rowRatio(tr, e, rows[k]));
      const bool driftOk = late <= kEnvelopeDrift * early;
      ok = ok && driftOk;
      fj["lateOverEarly"] = late / early;
      fj["driftBound"] = kEnvelopeDrift;
      fj["driftOk"] = driftOk;
      out << ", late/early " << fixed("%.3f", late / early);
    }
    if (!synthetic && !p.gapless()) {
      fj["prefactor"] = prefactor(p, e);
      fj["constantOverDataNorm"] = constant / dataNorm;
    }
    fj["passed"] = ok;
    out << (ok ? "  ok" : "  FAILED") << "\n";
    allOk = allOk && ok;
    fits.push_back(fj);

    std::vector<double> col;
    for (double t : tr.times)
      col.push_back(constant * envelope_shape(e, t, tr.firstCell));
    plot.push_back({name, tr.times, col, true});
    columns.emplace_back(name, std::move(col));
  }

  std::ostringstream s;
  s << "t,supNorm,weightedNorm";
  for (const auto &c : columns)
    s << "," << c.first;
  s << "\n";
  for (std::size_t j = 0; j < tr.times.size(); ++j) {
    s << csv(tr.times[j]) << "," << csv(tr.supNorm[j]) << "," << csv(tr.weightedNorm[j]);
    for (const auto &c : columns)
      s << "," << csv(c.second[j]);
    s << "\n";
  }
  writeFile(ctx.outDir / "decay.csv", s.str());
  if (cfg.svg)
    writeFile(ctx.outDir / "decay.svg", loglog_svg(plot, "sup-norm decay", "t", "|psi(t)|"));

  json report = {{"mode", synthetic ? "synthetic" : "simulation"},
                 {"projectedOntoContinuum", projected},
                 {"dataNorms", {{"l1", tr.dataNorms.l1}, {"l11", tr.dataNorms.l11}, {"l12", tr.dataNorms.l12}}},
                 {"fits", fits},
                 {"passed", allOk}};

  if (!cfg.decay.paramGrid.empty()) {
    const Envelope ge = envelope_from_string(cfg.decay.gridEnvelope);
    const auto table =
        constant_dependence_scan(cfg.decay.paramGrid, cfg.initial, ge, cfg.times.values(), cfg.cells);
    std::ostringstream c;
    c << "gamma1,reGamma2,imGamma2,fittedConstant,prefactor,ratio\n";
    for (const auto &r : table)
      c << csv(r.params.gamma1) << "," << csv(r.params.gamma2.real()) << ","
        << csv(r.params.gamma2.imag()) << "," << csv(r.fittedConstant) << "," << csv(r.prefactor)
        << "," << csv(r.ratio) << "\n";
    writeFile(ctx.outDir / "constants.csv", c.str());
    report["constantsEnvelope"] = cfg.decay.gridEnvelope;
    out << "wrote constants.csv (" << table.size() << " parameter points, " << cfg.decay.gridEnvelope
        << ")\n";
  }
  writeFile(ctx.outDir / "fits.json", report.dump(2) + "\n");
  out << (allOk ? "all envelope checks passed" : "envelope check failed") << "\n";
  return allOk ? kOk : kVerificationFailed;
}

int cmd_verify(const CommandContext &ctx) {
  prepare(ctx);
  const auto &cfg = ctx.config;
  AcceptanceOptions opts;
  opts.tier = ctx.tier;
  opts.spec = cfg.quadrature;
  opts.analyticAvailable = !cfg.params.gapless();
  opts.seed = cfg.seed;
  auto &out = log(ctx);
  const auto results = run_acceptance(opts, [&](const CriterionResult &r) {
    out << format_result(r) << "\n";
    out.flush();
  });
  json crit = json::array();
  for (const auto &r : results)
    crit.push_back({{"id", r.id},
                    {"name", r.name},
                    {"status", to_string(r.status)},
                    {"detail", r.detail},
                    {"seconds", r.seconds},
                    {"budgetSeconds", r.budgetSeconds}});
  const bool ok = all_passed(results);
  json failing = json::array();
  for (const auto &r : results)
    if (r.status == Status::Fail)
      failing.push_back(r.id);
  writeFile(ctx.outDir / "verify.json",
            json{{"tier", to_string(ctx.tier)}, {"passed", ok}, {"failed", failing}, {"criteria", crit}}
                    .dump(2) +
                "\n");
  out << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << " (" << to_string(ctx.tier)
      << " tier)\n";
  return ok ? kOk : kVerificationFailed;
}

} // namespace sshd::cli
