// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringpart/ringpart.h"

namespace {

struct ExperimentFlags {
  std::string config;
  std::string algo = "dynamic";
  std::size_t n = 0, ell = 2, k = 1, trials = 1, threads = 1;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  std::string gen = "uniform_random:N=100";
  std::string out;
  std::string mts = "smin";
  std::string initial = "blocks";
  bool with_oracle = false;
  std::vector<CLI::Option*> options;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  f.options = {
      cmd->add_option("--algo", f.algo, "dynamic | static")->check(CLI::IsMember({"dynamic", "static"})),
      cmd->add_option("--n", f.n, "number of processes"),
      cmd->add_option("--ell", f.ell, "number of servers"),
      cmd->add_option("--k", f.k, "server capacity"),
      cmd->add_option("--epsilon", f.epsilon, "augmentation parameter"),
      cmd->add_option("--seed", f.seed, "master seed"),
      cmd->add_option("--gen", f.gen, "generator, e.g. zipf_edges:N=500,s=1.2"),
      cmd->add_option("--trials", f.trials, "number of trials"),
      cmd->add_option("--out", f.out, "output directory for traces and CSV"),
      cmd->add_option("--mts", f.mts, "smin | wfa (dynamic only)")->check(CLI::IsMember({"smin", "wfa"})),
      cmd->add_flag("--with-oracle", f.with_oracle, "fill the exact optimum columns"),
      cmd->add_option("--threads", f.threads, "worker threads"),
      cmd->add_option("--initial", f.initial, "initial coloring: blocks | random")
          ->check(CLI::IsMember({"blocks", "random"})),
  };
  cmd->add_option("--config", f.config, "JSON file with the same keys; flags override it");
}

// Flags given on the command line override the config file.
std::string experiment_json(const ExperimentFlags& f) {
  nlohmann::json j = nlohmann::json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::runtime_error("cannot open config '" + f.config + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    j = nlohmann::json::parse(buf.str());
  }
  const char* keys[] = {"algo", "n", "ell", "k", "epsilon", "seed", "gen", "trials", "out", "mts", "with_oracle", "threads", "initial"};
  const nlohmann::json values[] = {f.algo,  f.n,   f.ell, f.k,   f.epsilon,     f.seed,
                                   f.gen,   f.trials, f.out, f.mts, f.with_oracle, f.threads, f.initial};
  for (std::size_t i = 0; i < f.options.size(); ++i)
    if (f.config.empty() || f.options[i]->count() > 0) j[keys[i]] = values[i];
  if (j.contains("out") && j["out"] == "") j.erase("out");
  return j.dump();
}

int report_failure(rp_status st) {
  std::cerr << "error (" << rp_status_name(st) << "): " << rp_last_error() << '\n';
  return 2;
}

int print_text(rp_text* text) {
  std::fwrite(rp_text_data(text), 1, rp_text_size(text), stdout);
  rp_text_destroy(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online ring partitioning simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rp_version()));

  ExperimentFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "run trials and print the CSV summary");
  add_experiment_flags(simulate, sim_flags);

  std::string oracle_kind, oracle_trace;
  auto* oracle = app.add_subcommand("oracle", "exact offline optimum of a stored trace");
  oracle->add_option("kind", oracle_kind, "static | dynamic")->required()->check(CLI::IsMember({"static", "dynamic"}));
  oracle->add_option("--trace", oracle_trace, "JSONL trace")->required();

  std::vector<std::string> verify_paths;
  auto* verify = app.add_subcommand("verify", "check invariants recorded in traces");
  verify->add_option("traces", verify_paths, "JSONL traces")->required();

  ExperimentFlags sweep_flags;
  std::string sweep_param, sweep_values;
  auto* sweep = app.add_subcommand("sweep", "repeat an experiment over parameter values");
  add_experiment_flags(sweep, sweep_flags);
  sweep->add_option("--param", sweep_param, "n | ell | k | epsilon | seed | N | trials")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      rp_text* csv = nullptr;
      const rp_status st = rp_experiment_run(experiment_json(sim_flags).c_str(), &csv);
      if (st != RP_OK) return report_failure(st);
      return print_text(csv);
    }
    if (*sweep) {
      rp_text* csv = nullptr;
      const rp_status st =
          rp_sweep_run(experiment_json(sweep_flags).c_str(), sweep_param.c_str(), sweep_values.c_str(), &csv);
      if (st != RP_OK) return report_failure(st);
      return print_text(csv);
    }
    if (*oracle) {
      std::uint64_t value = 0;
      const rp_status st =
          rp_oracle_trace(oracle_trace.c_str(), oracle_kind == "static" ? RP_ORACLE_STATIC : RP_ORACLE_DYNAMIC, &value);
      if (st != RP_OK) return report_failure(st);
      std::cout << value << '\n';
      return 0;
    }
    if (*verify) {
      std::vector<const char*> paths;
      for (const auto& p : verify_paths) paths.push_back(p.c_str());
      int ok = 0;
      rp_text* report = nullptr;
      const rp_status st = rp_verify_files(paths.data(), paths.size(), &ok, &report);
      if (st != RP_OK) return report_failure(st);
      print_text(report);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
