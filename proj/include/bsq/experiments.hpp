#pragma once

#include <filesystem>
#include <iosfwd>

#include "bsq/config.hpp"

namespace bsq {

// Exit statuses shared by the CLI and the experiment runners.
enum ExitStatus : int {
  exit_ok = 0,
  exit_invalid_config = 1,
  exit_nonconvergence = 2,
  exit_resolution = 3,
};

// Each runner reads its parameters from the config, writes CSV tables plus a
// one-line summary record into the output directory, and returns an exit
// status. Outputs are a deterministic function of (config, seed).
int run_solve(const Config& cfg, std::ostream& log);
int run_linear(const Config& cfg, std::ostream& log);
int run_sharpness(const Config& cfg, std::ostream& log);
int run_probe_bilinear(const Config& cfg, std::ostream& log);
int run_lemmas(const Config& cfg, std::ostream& log);
int run_norms(const Config& cfg, std::ostream& log);

// Output directory: config key "out", else $BSQ_OUT_DIR, else ./bsq-out.
std::filesystem::path resolve_out_dir(const Config& cfg);

}  // namespace bsq
