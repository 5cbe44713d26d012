#include <CLI11.hpp>
#include <iostream>

#include "iwasawa/cli.hpp"

int main(int argc, char** argv) {
  using namespace iwasawa::cli;
  CLI::App app{"Iwasawa invariants of modules over O[[Z_p^l]]"};
  app.require_subcommand(1);
  Options opt;
  std::string out_dir;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment config (JSON)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed for random cases");
  };
  for (const char* name : {"invariants", "growth", "l0", "homcount"}) {
    add_common(app.add_subcommand(name)->callback([&opt, name] { opt.command = name; }));
  }
  auto* verify = app.add_subcommand("verify", "check one of the transfer and scaling laws");
  add_common(verify);
  verify->add_option("law", opt.law, "law to check")->required()->check(CLI::IsMember(laws()));
  verify->callback([&opt] { opt.command = "verify"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--out")) opt.out_dir = out_dir;
    if (sub->count("--seed")) opt.seed = seed;
  }
  return run(opt, std::cout, std::cerr);
}
