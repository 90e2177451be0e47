#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kwise/setfam.hpp"

namespace kwise {

inline constexpr std::string_view kSchemaVersion = "kwise-lab/v1";

enum ExitStatus : int {
  exit_ok = 0,
  exit_falsified = 1,
  exit_invalid = 2,
  exit_refused = 3,
};

// Every knob of every command. Keys accepted by apply_setting() are the long
// flag names without dashes.
struct ExperimentConfig {
  std::string command;
  int n = 0;
  int r = 0;
  int k = 0;
  int m = 0;
  int v = 0;  // star centre; 0 picks n (circle) or 2n (matching)
  std::string epsilon = "0.5";
  std::string alpha;  // rational; empty means 1/alpha_n^3
  int alpha_n = 0;
  std::string mode = "exhaustive";
  std::string rule = "both";
  std::string scope = "circle";
  std::string family;  // path of a family file
  int drop = 0;
  int perturbations = 0;
  std::uint64_t iterations = 200000;
  int restarts = 8;
  bool witnesses = false;
  bool timing = false;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 1;
};

const std::vector<std::string>& command_names();

// Sets one field from its textual value. Throws InvalidParameter for an
// unknown key or a malformed value.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Flat key=value lines; '#' starts a comment, blank lines are ignored.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::string& path);

// Drops a few random members of `base` and then adds up to two sets from
// `pool` that keep the family k-wise intersecting.
SetFamily perturb_family(const SetFamily& base, std::span<const ESet> pool, int k, std::uint64_t seed);

// perturb_family applied to star(n, r, v) with every other r-set as pool.
SetFamily near_star_family(int n, int r, int k, int v, std::uint64_t seed);

// Runs the command, writes the report to config.output (or `out` when
// empty) and returns an ExitStatus. Reasons for refusals go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kwise
