#pragma once
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speclab/harness.hpp"

namespace speclab {

// Entry point shared by the binary and the in-process CLI tests.
// Exit codes: 0 all checks passed, 1 configuration / usage / domain error,
// 2 a numerical invariant failed.
inline int speclab_main(const std::vector<std::string>& args) {
  CLI::App app{"numerical laboratory for observability of confined 1D Schrodinger operators"};
  app.require_subcommand(1);

  struct Opts {
    std::string config;
    std::string outdir = "speclab_out";
    std::uint64_t seed = 0;
    int jobs = 0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
    CLI::Option* out_opt = nullptr;
  };
  static const std::vector<std::pair<std::string, std::string>> kCommands = {
      {"eig", "solve eigenpairs below a cutoff and check residuals"},
      {"thick", "verify sensor-set thickness and recipe equivalences"},
      {"obs", "compute the observability constant on a sensor set"},
      {"sweep", "fit the growth exponent of the observability constant"},
      {"lift", "check the ghost-dimension lifted field identities"},
      {"cauchy", "run propagation-of-smallness and multiplier checks"},
      {"agmon", "check decay envelopes and localization radii"},
      {"all", "run every command section present in the config"}};

  std::vector<Opts> opts(kCommands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < kCommands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(kCommands[i].first, kCommands[i].second);
    sub->add_option("-c,--config", opts[i].config, "JSON config file")
        ->required();
    opts[i].out_opt = sub->add_option("-o,--outdir", opts[i].outdir, "output directory");
    opts[i].seed_opt = sub->add_option("--seed", opts[i].seed, "RNG seed override");
    opts[i].jobs_opt = sub->add_option("--jobs", opts[i].jobs, "worker count (>= 1)");
  }

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  argv.reserve(storage.size());
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (std::size_t i = 0; i < kCommands.size(); ++i) {
      CLI::App* sub = app.get_subcommand(kCommands[i].first);
      if (!sub->parsed()) continue;
      RunContext ctx;
      ctx.config_path = opts[i].config;
      ctx.outdir = opts[i].outdir;
      ctx.cfg = load_config_file(opts[i].config);
      validate_config_shape(ctx.cfg);

      ctx.seed = 12345;
      if (ctx.cfg.contains("seed"))
        ctx.seed = static_cast<std::uint64_t>(cfg::integer(ctx.cfg, "config", "seed"));
      if (opts[i].seed_opt->count() > 0) ctx.seed = opts[i].seed;

      ctx.jobs = 1;
      if (ctx.cfg.contains("jobs"))
        ctx.jobs = static_cast<int>(cfg::integer(ctx.cfg, "config", "jobs"));
      if (opts[i].jobs_opt->count() > 0) ctx.jobs = opts[i].jobs;
      if (ctx.jobs < 1)
        throw ConfigError("cli: --jobs " + std::to_string(ctx.jobs) + " must be >= 1");

      ctx.hash = config_hash(ctx.cfg, ctx.seed);
      detail::ensure_outdir(ctx);
      return dispatch_command(kCommands[i].first, ctx);
    }
    throw ConfigError("cli: no command selected");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace speclab
