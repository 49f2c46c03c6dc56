// Command-line front end for the disorder-averaged experiments.
//
//   liomnet merit    --method tnm|edm ...   figure of merit vs disorder
//   liomnet entangle ...                    quench entropy from the two-block reduction
//   liomnet oracle   ...                    network entropy vs exact diagonalization

#include "liomnet/errors.hpp"
#include "liomnet/harness.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

namespace {

struct FlagSet {
  std::map<std::string, std::string> values;
  bool svg = false;

  void add(CLI::App& app, const std::string& key, const std::string& help) {
    app.add_option("--" + key, values[key], help);
  }
};

void add_common_flags(CLI::App& cmd, FlagSet& flags) {
  flags.add(cmd, "block-legs", "Sites per block unitary (even)");
  flags.add(cmd, "disorder", "Comma-separated disorder widths, e.g. 8,12,16,20");
  flags.add(cmd, "realizations", "Disorder realizations per width");
  flags.add(cmd, "seed", "Base seed of the disorder streams");
  flags.add(cmd, "j", "Exchange coupling J");
  flags.add(cmd, "delta", "Anisotropy Delta");
  flags.add(cmd, "out", "Output directory");
  flags.add(cmd, "workers", "Worker threads (overrides LIOMNET_WORKERS)");
  flags.add(cmd, "dense-limit", "Largest dense system in sites");
  cmd.add_flag("--svg", flags.svg, "Also write SVG charts");
}

void add_time_flags(CLI::App& cmd, FlagSet& flags) {
  flags.add(cmd, "t-min", "First time point");
  flags.add(cmd, "t-max", "Last time point");
  flags.add(cmd, "t-points", "Number of log-spaced time points");
  flags.add(cmd, "diagonal-path", "auto, dense or termwise");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-network LIOMs and entanglement growth for disordered XXZ chains"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value config file; flags override it");

  FlagSet merit_flags, entangle_flags, oracle_flags;
  auto* merit = app.add_subcommand("merit", "Figure of merit of the central LIOM vs disorder");
  merit->fallthrough();
  merit_flags.add(*merit, "method", "tnm (tensor network) or edm (exact, isolated chain)");
  merit_flags.add(*merit, "chain-sites", "Isolated chain length for edm");
  add_common_flags(*merit, merit_flags);

  auto* entangle = app.add_subcommand("entangle", "Entanglement entropy after a Neel quench");
  entangle->fallthrough();
  add_common_flags(*entangle, entangle_flags);
  add_time_flags(*entangle, entangle_flags);

  auto* oracle = app.add_subcommand("oracle", "Compare network entropy with exact evolution");
  oracle->fallthrough();
  oracle_flags.add(*oracle, "chain-sites", "Chain length (must equal 2 * block-legs)");
  add_common_flags(*oracle, oracle_flags);
  add_time_flags(*oracle, oracle_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(liomnet::ErrorCategory::argument);
  }

  try {
    liomnet::ExperimentConfig cfg;
    FlagSet* flags = nullptr;
    if (merit->parsed()) {
      flags = &merit_flags;
    } else if (entangle->parsed()) {
      cfg.mode = liomnet::ExperimentMode::entangle;
      flags = &entangle_flags;
    } else {
      cfg.mode = liomnet::ExperimentMode::oracle_compare;
      flags = &oracle_flags;
    }
    const auto mode_from_subcommand = cfg.mode;
    if (!config_path.empty()) liomnet::apply_config_file(cfg, config_path);
    // The subcommand decides the experiment family; a file may only pick the merit method.
    if (!merit->parsed()) cfg.mode = mode_from_subcommand;
    else if (cfg.mode != liomnet::ExperimentMode::merit_edm) cfg.mode = liomnet::ExperimentMode::merit_tnm;

    if (const char* env = std::getenv("LIOMNET_WORKERS"); env != nullptr && *env != '\0') {
      liomnet::apply_setting(cfg, "workers", env);
    }
    for (const auto& [key, value] : flags->values) {
      if (!value.empty()) liomnet::apply_setting(cfg, key, value);
    }
    if (flags->svg) cfg.svg = true;
    cfg.validate();

    const auto files = liomnet::render_experiment(cfg);
    liomnet::write_outputs(cfg.out, files);
    for (const auto& file : files) std::cout << "wrote " << cfg.out << '/' << file.name << '\n';
    return 0;
  } catch (const liomnet::Error& e) {
    std::cerr << "error (" << liomnet::category_name(e.category()) << "): " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << '\n';
    return 1;
  }
}
