#include <cstdio>
#include <string>

#include "sshd/acceptance.hpp"

int main(int argc, char **argv) {
  sshd::AcceptanceOptions opts;
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--tier" && i + 1 < argc)
        opts.tier = sshd::tier_from_string(argv[++i]);
      else if (a == "--only" && i + 1 < argc)
        opts.only.push_back(std::stoi(argv[++i]));
      else {
        std::fprintf(stderr, "usage: sshd-acceptance [--tier quick|full] [--only ID]...\n");
        return 2;
      }
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  const auto results = sshd::run_acceptance(opts, [](const sshd::CriterionResult &r) {
    std::printf("%s\n", sshd::format_result(r).c_str());
    std::fflush(stdout);
  });
  const bool ok = sshd::all_passed(results);
  std::printf("%s (%s tier)\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED",
              sshd::to_string(opts.tier).c_str());
  return ok ? 0 : 3;
}
