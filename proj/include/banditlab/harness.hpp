#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "banditlab/config.hpp"
#include "banditlab/simenv.hpp"

namespace banditlab {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitIoError = 4;

// Environment variable naming the fallback output directory; an explicit
// --output flag or config output_dir always wins.
inline constexpr const char* kOutputDirEnvVar = "BANDITLAB_OUTPUT_DIR";

struct CliOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> output_override;
  int jobs = 1;
};

// Run every (algorithm x seed) cell of the experiment, write one CSV per
// run (plus a diagnostics CSV for IDS runs) and summary.json. Outputs are
// written through temp files and renamed, and a cell that fails leaves no
// files behind. Identical configs reproduce outputs byte for byte.
int cmd_simulate(const CliOptions& opts, std::ostream& out, std::ostream& err);

// Compare quadrature alpha / conditional means / information gain against
// the Monte Carlo oracle on randomly drawn posterior states; print a table
// and write oracle_report.json. Exit code 3 when any quantity disagrees
// beyond the configured tolerance.
int cmd_oracle_check(const CliOptions& opts, std::ostream& out,
                     std::ostream& err);

// Run the IDS cells and compare mean cumulative regret at checkpoints
// t in {T/4, T/2, T} against sqrt(0.5 K ln(K) t) and against
// sqrt(max-realized-psi * H(alpha_1) * t); write bound_report.json.
// Exit code 3 when the first bound is exceeded. The size of the realized
// information ratio relative to K/2 is reported but never fails the run.
int cmd_bound_check(const CliOptions& opts, std::ostream& out,
                    std::ostream& err);

// Helpers shared with the test suite.

// CSV for one run: header run_id,algorithm,seed,t,context_id,arm,reward,
// regret_step,regret_cum; context_id empty for context-free runs; doubles
// in shortest round-trip form.
std::string run_csv(const RunRecord& rec, const std::string& run_id);

// Per-step IDS diagnostics CSV: t, alpha_*, delta_*, gain_*, psi.
std::string ids_diagnostics_csv(const RunRecord& rec);

// Write content to path via a temp file in the same directory plus rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Output directory resolution: CLI override > config > environment > "runs".
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg,
                                         const CliOptions& opts);

}  // namespace banditlab
