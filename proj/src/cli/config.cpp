#include "config.hpp"

#include <fstream>
#include <random>
#include <set>

namespace sshd::cli {

using nlohmann::json;

namespace {

void allowKeys(const json &obj, const std::string &where, const std::set<std::string> &keys) {
  if (!obj.is_object())
    throw ConfigError(where + " must be an object");
  for (const auto &[k, v] : obj.items())
    if (!keys.count(k))
      throw ConfigError("unknown key '" + k + "' in " + where);
}

double number(const json &v, const std::string &what) {
  if (!v.is_number())
    throw ConfigError(what + " must be a number");
  return v.get<double>();
}

long integer(const json &v, const std::string &what) {
  if (!v.is_number_integer())
    throw ConfigError(what + " must be an integer");
  return v.get<long>();
}

cplx complexValue(const json &v, const std::string &what) {
  if (v.is_number())
    return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(what + " must be a number or a pair [re, im]");
}

HoppingParams parseParams(const json &j, const std::string &where) {
  allowKeys(j, where, {"gamma1", "gamma2"});
  if (!j.contains("gamma1") || !j.contains("gamma2"))
    throw ConfigError(where + " needs gamma1 and gamma2");
  const double g1 = number(j["gamma1"], where + ".gamma1");
  const cplx g2 = complexValue(j["gamma2"], where + ".gamma2");
  if (!(g1 > 0.0))
    throw ConfigError(where + ".gamma1 must be positive");
  if (g2 == cplx(0.0))
    throw ConfigError(where + ".gamma2 must be nonzero");
  try {
    return HoppingParams::make(g1, g2);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
}

json paramsJson(const HoppingParams &p) {
  return {{"gamma1", p.gamma1}, {"gamma2", {p.gamma2.real(), p.gamma2.imag()}}};
}

WaveFunction parseInitial(const json &j, unsigned seed) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("initial needs a kind");
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "delta") {
    allowKeys(j, "initial", {"kind", "cell", "site"});
    const long cell = j.contains("cell") ? integer(j["cell"], "initial.cell") : 0;
    const std::string site = j.value("site", std::string("A"));
    if (cell < 0)
      throw ConfigError("initial.cell must be nonnegative");
    if (site != "A" && site != "B")
      throw ConfigError("initial.site must be \"A\" or \"B\"");
    return WaveFunction::delta(cell, site == "A" ? Site::A : Site::B);
  }
  if (kind == "explicit") {
    allowKeys(j, "initial", {"kind", "cells"});
    if (!j.contains("cells") || !j["cells"].is_array() || j["cells"].empty())
      throw ConfigError("initial.cells must be a nonempty list");
    WaveFunction f(j["cells"].size());
    for (std::size_t n = 0; n < f.size(); ++n) {
      const auto &c = j["cells"][n];
      if (!c.is_array() || c.size() != 4)
        throw ConfigError("initial.cells entries must be [reA, imA, reB, imB]");
      f.cells[n] = Cell(cplx(number(c[0], "initial.cells"), number(c[1], "initial.cells")),
                        cplx(number(c[2], "initial.cells"), number(c[3], "initial.cells")));
    }
    return f;
  }
  if (kind == "random") {
    allowKeys(j, "initial", {"kind", "cells"});
    const long n = j.contains("cells") ? integer(j["cells"], "initial.cells") : 4;
    if (n < 1)
      throw ConfigError("initial.cells must be positive");
    std::mt19937 rng(seed);
    std::normal_distribution<double> d;
    WaveFunction f(static_cast<std::size_t>(n));
    for (auto &c : f.cells)
      c = Cell(cplx(d(rng), d(rng)), cplx(d(rng), d(rng)));
    const double nrm = f.norm();
    return (1.0 / nrm) * f;
  }
  throw ConfigError("initial.kind must be \"delta\", \"explicit\" or \"random\"");
}

} // namespace

std::vector<double> TimeGrid::values() const {
  if (spacing == "geometric")
    return geometric_grid(start, stop, points);
  return linear_grid(start, stop, points);
}

std::string to_string(Method m) {
  switch (m) {
  case Method::Oracle: return "oracle";
  case Method::Analytic: return "analytic";
  case Method::Both: return "both";
  }
  return "?";
}

RunConfig parse_config(const json &doc) {
  allowKeys(doc, "config",
            {"params", "initial", "times", "cells", "method", "quadrature", "seed", "decay", "output"});
  RunConfig cfg;
  if (!doc.contains("params"))
    throw ConfigError("config needs params");
  cfg.params = parseParams(doc["params"], "params");
  if (doc.contains("seed")) {
    const long s = integer(doc["seed"], "seed");
    if (s < 0)
      throw ConfigError("seed must be nonnegative");
    cfg.seed = static_cast<unsigned>(s);
  }
  cfg.initialSpec = doc.value("initial", json{{"kind", "delta"}, {"cell", 0}, {"site", "A"}});
  cfg.initial = parseInitial(cfg.initialSpec, cfg.seed);

  if (doc.contains("times")) {
    const auto &t = doc["times"];
    allowKeys(t, "times", {"start", "stop", "points", "spacing"});
    if (t.contains("start"))
      cfg.times.start = number(t["start"], "times.start");
    if (t.contains("stop"))
      cfg.times.stop = number(t["stop"], "times.stop");
    if (t.contains("points"))
      cfg.times.points = static_cast<int>(integer(t["points"], "times.points"));
    cfg.times.spacing = t.value("spacing", cfg.times.spacing);
  }
  if (cfg.times.spacing != "linear" && cfg.times.spacing != "geometric")
    throw ConfigError("times.spacing must be \"linear\" or \"geometric\"");
  if (cfg.times.points < 1)
    throw ConfigError("times.points must be at least 1");
  if (cfg.times.stop < cfg.times.start)
    throw ConfigError("times.stop must not be below times.start");
  if (cfg.times.spacing == "geometric" && !(cfg.times.start > 0.0))
    throw ConfigError("geometric times need start > 0");
  if (cfg.times.spacing == "geometric" && cfg.times.start < 0.0)
    throw ConfigError("geometric times need start > 0");

  if (doc.contains("cells")) {
    const auto &c = doc["cells"];
    allowKeys(c, "cells", {"min", "max"});
    if (c.contains("min"))
      cfg.cells.first = integer(c["min"], "cells.min");
    if (c.contains("max"))
      cfg.cells.last = integer(c["max"], "cells.max");
  }
  if (cfg.cells.first < 0 || cfg.cells.last < cfg.cells.first)
    throw ConfigError("cells must satisfy 0 <= min <= max");

  const std::string method = doc.value("method", std::string("oracle"));
  if (method == "oracle")
    cfg.method = Method::Oracle;
  else if (method == "analytic")
    cfg.method = Method::Analytic;
  else if (method == "both")
    cfg.method = Method::Both;
  else
    throw ConfigError("method must be \"oracle\", \"analytic\" or \"both\"");

  if (doc.contains("quadrature")) {
    const auto &q = doc["quadrature"];
    allowKeys(q, "quadrature",
              {"relTol", "absTol", "maxPanels", "panelOrder", "splitAtCriticalPoints", "pvExcision"});
    auto &s = cfg.quadrature;
    if (q.contains("relTol"))
      s.relTol = number(q["relTol"], "quadrature.relTol");
    if (q.contains("absTol"))
      s.absTol = number(q["absTol"], "quadrature.absTol");
    if (q.contains("maxPanels"))
      s.maxPanels = static_cast<int>(integer(q["maxPanels"], "quadrature.maxPanels"));
    if (q.contains("panelOrder"))
      s.panelOrder = static_cast<int>(integer(q["panelOrder"], "quadrature.panelOrder"));
    if (q.contains("splitAtCriticalPoints")) {
      if (!q["splitAtCriticalPoints"].is_boolean())
        throw ConfigError("quadrature.splitAtCriticalPoints must be a boolean");
      s.splitAtCriticalPoints = q["splitAtCriticalPoints"].get<bool>();
    }
    if (q.contains("pvExcision"))
      s.pvExcision = number(q["pvExcision"], "quadrature.pvExcision");
  }
  try {
    validate(cfg.quadrature);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }

  cfg.decay.envelopes = {"t^-1/3", "log*t^-1/2+n/t", "t^-1/2+n/t"};
  if (doc.contains("decay")) {
    const auto &d = doc["decay"];
    allowKeys(d, "decay", {"envelopes", "fitWindow", "syntheticTrace", "paramGrid", "gridEnvelope"});
    if (d.contains("envelopes")) {
      if (!d["envelopes"].is_array() || d["envelopes"].empty())
        throw ConfigError("decay.envelopes must be a nonempty list");
      cfg.decay.envelopes.clear();
      for (const auto &e : d["envelopes"]) {
        if (!e.is_string())
          throw ConfigError("decay.envelopes entries must be strings");
        cfg.decay.envelopes.push_back(to_string(envelope_from_string(e.get<std::string>())));
      }
    }
    if (d.contains("fitWindow")) {
      const auto &w = d["fitWindow"];
      if (!w.is_array() || w.size() != 2)
        throw ConfigError("decay.fitWindow must be [tLo, tHi]");
      cfg.decay.fitWindow = std::pair{number(w[0], "decay.fitWindow"), number(w[1], "decay.fitWindow")};
    }
    if (d.contains("syntheticTrace")) {
      const auto &s = d["syntheticTrace"];
      allowKeys(s, "decay.syntheticTrace", {"times", "supNorm"});
      SyntheticTrace st;
      for (const auto &v : s.value("times", json::array()))
        st.times.push_back(number(v, "decay.syntheticTrace.times"));
      for (const auto &v : s.value("supNorm", json::array()))
        st.supNorm.push_back(number(v, "decay.syntheticTrace.supNorm"));
      if (st.times.size() != st.supNorm.size() || st.times.empty())
        throw ConfigError("decay.syntheticTrace needs equally long nonempty times and supNorm");
      cfg.decay.synthetic = std::move(st);
    }
    if (d.contains("paramGrid")) {
      if (!d["paramGrid"].is_array())
        throw ConfigError("decay.paramGrid must be a list");
      for (const auto &e : d["paramGrid"]) {
        const auto p = parseParams(e, "decay.paramGrid entry");
        if (p.gapless())
          throw ConfigError("decay.paramGrid entries must be gapped");
        cfg.decay.paramGrid.push_back(p);
      }
    }
    if (d.contains("gridEnvelope")) {
      if (!d["gridEnvelope"].is_string())
        throw ConfigError("decay.gridEnvelope must be a string");
      cfg.decay.gridEnvelope = to_string(envelope_from_string(d["gridEnvelope"].get<std::string>()));
    }
  }
  if (doc.contains("output")) {
    const auto &o = doc["output"];
    allowKeys(o, "output", {"svg"});
    if (o.contains("svg")) {
      if (!o["svg"].is_boolean())
        throw ConfigError("output.svg must be a boolean");
      cfg.svg = o["svg"].get<bool>();
    }
  }
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig &cfg) {
  const auto &q = cfg.quadrature;
  json decay = {{"envelopes", cfg.decay.envelopes}, {"gridEnvelope", cfg.decay.gridEnvelope}};
  if (cfg.decay.fitWindow)
    decay["fitWindow"] = {cfg.decay.fitWindow->first, cfg.decay.fitWindow->second};
  if (cfg.decay.synthetic)
    decay["syntheticTrace"] = {{"times", cfg.decay.synthetic->times},
                               {"supNorm", cfg.decay.synthetic->supNorm}};
  if (!cfg.decay.paramGrid.empty()) {
    json grid = json::array();
    for (const auto &p : cfg.decay.paramGrid)
      grid.push_back(paramsJson(p));
    decay["paramGrid"] = grid;
  }
  return {
      {"params", paramsJson(cfg.params)},
      {"initial", cfg.initialSpec},
      {"times",
       {{"start", cfg.times.start},
        {"stop", cfg.times.stop},
        {"points", cfg.times.points},
        {"spacing", cfg.times.spacing}}},
      {"cells", {{"min", cfg.cells.first}, {"max", cfg.cells.last}}},
      {"method", to_string(cfg.method)},
      {"quadrature",
       {{"relTol", q.relTol},
        {"absTol", q.absTol},
        {"maxPanels", q.maxPanels},
        {"panelOrder", q.panelOrder},
        {"splitAtCriticalPoints", q.splitAtCriticalPoints},
        {"pvExcision", q.pvExcision}}},
      {"seed", cfg.seed},
      {"decay", decay},
      {"output", {{"svg", cfg.svg}}},
  };
}

} // namespace sshd::cli
