#pragma once

#include <filesystem>
#include <iosfwd>

#include "sshd/acceptance.hpp"

#include "config.hpp"

namespace sshd::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kVerificationFailed = 3, kBudgetExceeded = 4 };

struct CommandContext {
  RunConfig config;
  std::filesystem::path outDir;
  Tier tier = Tier::Quick;
  std::ostream *log = nullptr;
};

int cmd_spectrum(const CommandContext &ctx);
int cmd_evolve(const CommandContext &ctx);
int cmd_decay_scan(const CommandContext &ctx);
int cmd_verify(const CommandContext &ctx);

} // namespace sshd::cli
