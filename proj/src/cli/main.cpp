#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace sshd;
using namespace sshd::cli;

int main(int argc, char **argv) {
  CLI::App app{"Dispersive dynamics of the semi-infinite SSH chain"};
  app.require_subcommand(1);

  std::string configPath, outDir = ".", tier = "quick";
  struct Entry {
    const char *name;
    const char *help;
    int (*run)(const CommandContext &);
  };
  const Entry entries[] = {
      {"spectrum", "Report bands, gap, phase, winding number and edge state", cmd_spectrum},
      {"evolve", "Evolve the initial data and write evolution.csv", cmd_evolve},
      {"decay-scan", "Trace sup-norm decay and fit the dispersive envelopes", cmd_decay_scan},
      {"verify", "Run the acceptance battery", cmd_verify},
  };
  for (const auto &e : entries) {
    auto *sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", configPath, "JSON run configuration")->required();
    sub->add_option("--out", outDir, "Output directory");
    sub->add_option("--tier", tier, "Acceptance size tier")->check(CLI::IsMember({"quick", "full"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    CommandContext ctx;
    ctx.config = load_config(configPath);
    ctx.outDir = outDir;
    ctx.tier = tier_from_string(tier);
    ctx.log = &std::cout;
    for (const auto &e : entries)
      if (app.got_subcommand(e.name))
        return e.run(ctx);
  } catch (const ConfigError &e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const GaplessModel &e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const InsufficientData &e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError &e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const Error &e) {
    std::cerr << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kConfigError;
}
