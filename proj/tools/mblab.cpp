// Command-line front end: one subcommand per experiment.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mblab/harness/run.hpp"

using namespace mblab;
using namespace mblab::harness;

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the coupled KdV half-line problem"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  bool strict = false;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides [run] out)");
    sub->add_option("--seed", seed, "base seed (overrides [run] seed)");
    sub->add_option("--threads", threads, "OpenMP threads, default 1");
    sub->add_flag("--strict", strict, "treat flagged warnings as errors");
    sub->add_option("--set", overrides, "section.key=value override, repeatable");
  };
  for (const auto& name : subcommands()) add_common(app.add_subcommand(name, "run " + name));

  std::string reference_out;
  auto* ref = app.add_subcommand("config-reference", "print the config key reference (Markdown)");
  ref->add_option("--out", reference_out, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (ref->parsed()) {
    const std::string md = config_reference_markdown();
    if (reference_out.empty()) {
      std::cout << md;
    } else {
      std::ofstream out(reference_out);
      out << md;
      if (!out) {
        std::cerr << "error: cannot write " << reference_out << '\n';
        return kExitFailure;
      }
    }
    return kExitSuccess;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& o : overrides) {
      const auto eq = o.find('='), dot = o.find('.');
      if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ValidationError("--set expects section.key=value, got '" + o + "'");
      set_key(cfg, o.substr(0, dot), o.substr(dot + 1, eq - dot - 1), o.substr(eq + 1));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (app.get_subcommands().front()->count("--seed")) cfg.seed = seed;
  if (threads > 0) cfg.threads = threads;
  if (strict) cfg.strict = true;

  const RunResult r = run(cfg, std::cerr);
  return r.exit_code;
}
