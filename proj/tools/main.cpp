#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kwise/cli.hpp"
#include "kwise/error.hpp"
#include "kwise/parallel.hpp"

namespace {

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<const char*> options;
  std::vector<const char*> flags;
};

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> all{
      {"verify-frankl", "maximum k-wise intersecting family of r-subsets of [n] against binom(n-1, r-1)",
       {"n", "r", "k"}, {"witnesses"}},
      {"stability-audit", "every large k-wise intersecting family has a large star", {"n", "r", "k", "epsilon"}, {}},
      {"circle-census", "saturation census over all cyclic orders of [n]", {"n", "r", "k", "v", "family", "drop"}, {}},
      {"cayley-expansion", "vertex expansion and spectral gap of the adjacent-transposition Cayley graph",
       {"m", "alpha", "alpha-n", "mode", "iterations", "restarts"}, {}},
      {"matching-verify", "maximum k-wise intersecting subfamily of H^r(M_n) against the closed-form bound",
       {"n", "r", "k"}, {"witnesses"}},
      {"embed-check", "embed every member of H^r containing 2n as an interval of a good ordering", {"n", "r"}, {}},
      {"lemma-check", "transposition lemmas on cyclic orders (scope=circle) or good orderings (scope=matching)",
       {"n", "r", "k", "v", "family", "perturbations", "rule", "scope"}, {}},
  };
  return all;
}

const std::map<std::string, std::string>& option_help() {
  static const std::map<std::string, std::string> help{
      {"n", "ground size (matching commands: number of edges)"},
      {"r", "uniformity"},
      {"k", "k of k-wise intersecting (>= 2)"},
      {"m", "degree of the symmetric group"},
      {"v", "star centre (default n, or 2n for scope=matching)"},
      {"epsilon", "rational or decimal in [0, 1)"},
      {"alpha", "expansion constant as a rational (default 1/alpha_n^3)"},
      {"alpha-n", "base of the default alpha (default m + 1)"},
      {"mode", "exhaustive or heuristic"},
      {"iterations", "heuristic steps per restart"},
      {"restarts", "heuristic restarts"},
      {"family", "family file: header 'n=N r=R', then one comma-separated set per line"},
      {"drop", "members removed from the star, chosen by seed"},
      {"perturbations", "seeded near-star families added to the check"},
      {"rule", "transposition exclusion rule: positional, label or both"},
      {"scope", "circle or matching"},
  };
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kwise-lab: exact experiments on k-wise intersecting families"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kwise::kSchemaVersion));

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::Option*> given;
  std::string config_path;
  std::map<std::string, CLI::App*> subs;

  for (const auto& cmd : command_specs()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    auto& store = values[cmd.name];
    auto add = [&](const std::string& key, const std::string& help) {
      given[std::string(cmd.name) + "/" + key] = sub->add_option("--" + key, store[key], help);
    };
    for (const char* key : cmd.options) add(key, option_help().at(key));
    for (const char* key : cmd.flags) {
      given[std::string(cmd.name) + "/" + key] = sub->add_flag("--" + std::string(key))->description("include " + std::string(key) + " in the report");
    }
    add("output", "report path (stdout when omitted)");
    add("format", "json or csv");
    add("seed", "seed for randomized parts (default 0)");
    add("threads", "worker threads (default: all cores)");
    given[std::string(cmd.name) + "/timing"] = sub->add_flag("--timing")->description("add runtime_ms to the report");
    sub->add_option("--config", config_path, "flat key=value file; flags override it");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kwise::exit_ok : kwise::exit_invalid;
  }

  kwise::ExperimentConfig config;
  config.threads = kwise::default_thread_count();
  try {
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      if (!config_path.empty()) kwise::apply_config_file(config, config_path);
      config.command = name;
      for (const auto& [id, opt] : given) {
        const auto slash = id.find('/');
        if (id.substr(0, slash) != name || opt->count() == 0) continue;
        const std::string key = id.substr(slash + 1);
        const auto& store = values[name];
        const auto it = store.find(key);
        kwise::apply_setting(config, key, it == store.end() ? "true" : it->second);
      }
    }
  } catch (const kwise::Error& e) {
    std::cerr << "kwise-lab: " << e.what() << '\n';
    return kwise::exit_invalid;
  }
  return kwise::run(config, std::cout, std::cerr);
}
