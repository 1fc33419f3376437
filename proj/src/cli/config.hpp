#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sshd/decay.hpp"
#include "sshd/propagator.hpp"

namespace sshd::cli {

struct TimeGrid {
  double start = 0.0;
  double stop = 10.0;
  int points = 11;
  std::string spacing = "linear"; // "linear" or "geometric"

  std::vector<double> values() const;
};

struct SyntheticTrace {
  std::vector<double> times;
  std::vector<double> supNorm;
};

struct DecayOptions {
  std::vector<std::string> envelopes;
  std::optional<std::pair<double, double>> fitWindow;
  std::optional<SyntheticTrace> synthetic;
  std::vector<HoppingParams> paramGrid;
  std::string gridEnvelope = "t^-1/3";
};

struct RunConfig {
  HoppingParams params;
  nlohmann::json initialSpec;
  WaveFunction initial;
  TimeGrid times;
  CellWindow cells{0, 30};
  Method method = Method::Oracle;
  QuadratureSpec quadrature;
  unsigned seed = 12345;
  DecayOptions decay;
  bool svg = true;
};

// Parses and validates a configuration document; throws ConfigError.
RunConfig parse_config(const nlohmann::json &doc);
RunConfig load_config(const std::string &path);

// Fully resolved configuration (all defaults filled in); parsing it again
// yields the same run.
nlohmann::json to_json(const RunConfig &cfg);

std::string to_string(Method m);

} // namespace sshd::cli
