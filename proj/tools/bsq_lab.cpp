#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bsq/duhamel.hpp"
#include "bsq/experiments.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string seed;
  std::string workers;
  std::string modes;
  std::string tau_max;
  std::string tau_points;
};

void attach(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "key = value config file");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--workers", o.workers, "worker thread count");
  sub->add_option("--modes", o.modes, "spatial sample count (even)");
  sub->add_option("--tau-max", o.tau_max, "modulation grid half-width");
  sub->add_option("--tau-points", o.tau_points, "modulation grid point count");
}

bsq::Config load(const CommonOpts& o) {
  bsq::Config cfg;
  if (!o.config_path.empty()) cfg = bsq::Config::from_file(o.config_path);
  if (!o.out_dir.empty()) cfg.set("out", o.out_dir);
  if (!o.seed.empty()) cfg.set("seed", o.seed);
  if (!o.workers.empty()) cfg.set("workers", o.workers);
  if (!o.modes.empty()) cfg.set("modes", o.modes);
  if (!o.tau_max.empty()) cfg.set("tau_max", o.tau_max);
  if (!o.tau_points.empty()) cfg.set("tau_points", o.tau_points);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for the periodic good Boussinesq equation"};
  app.require_subcommand(1);

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const bsq::Config&, std::ostream&);
  };
  const Cmd cmds[] = {
      {"solve", "Picard iteration of the Duhamel fixed point", bsq::run_solve},
      {"linear", "free evolution and its residual check", bsq::run_linear},
      {"sharpness", "counterexample growth sweep", bsq::run_sharpness},
      {"probe-bilinear", "bilinear estimate ratio on random fields", bsq::run_probe_bilinear},
      {"lemmas", "calculus lemma verifiers", bsq::run_lemmas},
      {"norms", "norm equivalence and linear estimate probes", bsq::run_norms},
  };

  CommonOpts opts[std::size(cmds)];
  for (std::size_t i = 0; i < std::size(cmds); ++i)
    attach(app.add_subcommand(cmds[i].name, cmds[i].help), opts[i]);

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < std::size(cmds); ++i) {
    if (!app.got_subcommand(cmds[i].name)) continue;
    try {
      return cmds[i].run(load(opts[i]), std::cout);
    } catch (const bsq::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return bsq::exit_invalid_config;
    } catch (const bsq::ResolutionError& e) {
      std::cerr << "resolution error: " << e.what() << "\n";
      return bsq::exit_resolution;
    } catch (const bsq::PicardDivergenceError& e) {
      std::cerr << "no convergence: " << e.what() << "\n";
      return bsq::exit_nonconvergence;
    } catch (const std::domain_error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return bsq::exit_invalid_config;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return bsq::exit_invalid_config;
    }
  }
  return bsq::exit_invalid_config;
}
