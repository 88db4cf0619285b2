#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace finnet::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kRuntime = 3 };

struct Context {
  std::ostream& out;
  std::ostream& err;
  /// Worker threads; an execution setting, not part of the RunConfig.
  unsigned threads = 1;
};

int cmd_stats(RunConfig config, const Context& ctx);
int cmd_analyze(RunConfig config, const Context& ctx);
int cmd_evolve(RunConfig config, const Context& ctx);
int cmd_simulate(RunConfig config, const Context& ctx);
int cmd_fetch(RunConfig config, const Context& ctx);

/// Full command line (without the program name): `<subcommand> [flags]`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finnet::cli
