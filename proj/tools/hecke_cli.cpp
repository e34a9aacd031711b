// hecke: command-line runner for the Hecke pair experiments.
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hecke/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hecke pair experiments: cosets, convolution, operator norms, rapid decay, Jolissaint seminorms"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string mode;

  const std::map<std::string, std::string> help{
      {"pairs", "list the catalog pairs"},
      {"enumerate", "double cosets of a ball with lengths and degrees"},
      {"degrees", "degree table and growth fit"},
      {"convolve", "convolution of two elements"},
      {"normest", "operator norm brackets over radii"},
      {"rd-scan", "Haagerup ratio scan and polynomial fit"},
      {"transfer-check", "finite-subgroup transfer identities"},
      {"jolissaint", "rho profile and nu seminorm"},
      {"validate-length", "length axioms on a seeded sample"},
  };
  for (const auto& name : hecke::command_names()) {
    auto* sub = app.add_subcommand(name, help.count(name) ? help.at(name) : "");
    sub->add_option("--config", config_path, "INI experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "overrides general.seed");
    sub->add_option("--out", out_dir, "output directory (overrides general.out)");
    sub->add_option("--mode", mode, "coefficient mode")->check(CLI::IsMember({"exact", "float"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  hecke::ExperimentConfig config;
  try {
    config = config_path.empty() ? hecke::parse_config("", command) : hecke::load_config(config_path, command);
  } catch (const hecke::ConfigError& e) {
    nlohmann::json doc{{"status", "error"}, {"exit_code", 2}, {"command", command}, {"error", "config"},
                       {"message", e.what()}};
    if (!e.field().empty()) doc["field"] = e.field();
    if (e.line() > 0) doc["line"] = e.line();
    std::cout << doc.dump() << '\n';
    return 2;
  }
  if (seed) config.seed = *seed;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (!mode.empty()) config.mode = mode == "exact" ? hecke::CoefficientMode::exact : hecke::CoefficientMode::floating;

  return hecke::run(command, config, std::cout).exit_code;
}
