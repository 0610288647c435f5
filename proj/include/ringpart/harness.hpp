#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringpart/mts_line.hpp"
#include "ringpart/ring_core.hpp"
#include "ringpart/rng.hpp"

namespace ringpart::harness {

// ---------------------------------------------------------------------------
// Request generators

enum class GeneratorKind { fixed_edge, uniform_random, zipf_edges, moving_hotspot, adversary_stay, trace_file };

/// Textual form: `kind:key=value,key=value`, e.g. `zipf_edges:N=500,s=1.2`.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::uniform_random;
  std::size_t length = 0;  // N

  std::size_t edge = 0;       // fixed_edge
  double exponent = 1.0;      // zipf_edges: P(rank r) ~ 1/(r+1)^s
  std::size_t offset = 0;     // zipf_edges, adversary_stay: ring edge of rank 0 / line edge 1
  std::size_t window = 1;     // moving_hotspot
  std::size_t every = 1;      // moving_hotspot: drift period w
  std::size_t start = 0;      // moving_hotspot
  std::size_t line = 0;       // adversary_stay: line length, 0 = min(k, n)
  std::string strategy = "wfa";  // adversary_stay: stay | wfa
  std::string path;           // trace_file

  /// Throws Errc::parameter if an edge or window does not fit a ring of n.
  void validate(std::size_t n) const;
};

GeneratorSpec parse_generator(std::string_view text);
std::string to_string(const GeneratorSpec& spec);
std::string_view to_string(GeneratorKind kind) noexcept;

/// Deterministic given the stream. `k` sizes the adversary's line.
std::vector<std::size_t> generate(const GeneratorSpec& spec, std::size_t n, std::size_t k, Stream rng);

// ---------------------------------------------------------------------------
// Traces (JSON lines: header, one record per step, summary)

struct TraceHeader {
  RingConfig cfg;
  std::string algorithm;           // dynamic | static
  std::optional<std::string> mts;  // dynamic only
  Coloring initial;
  std::string generator;
  std::uint64_t trial = 0;
  double load_bound = 0.0;
  std::optional<double> color_cluster_bound;
  std::optional<double> singleton_bound;
  std::optional<std::size_t> multiplicity_bound;
};

struct TraceSummary {
  std::uint64_t steps = 0;
  std::uint64_t cost_hit = 0, cost_move = 0, cost_merge = 0, cost_mono = 0, cost_bal = 0;
  std::uint64_t total = 0;
  std::size_t max_load = 0;
};

struct Trace {
  TraceHeader header;
  std::vector<StepRecord> steps;
  TraceSummary summary;

  /// Edges of the step records, in order (the placement record has none).
  std::vector<std::size_t> requests() const;
};

class TraceWriter {
 public:
  TraceWriter(std::ostream& out, const TraceHeader& header);
  void step(const StepRecord& rec);
  void finish();

  const TraceSummary& summary() const noexcept { return summary_; }

 private:
  std::ostream& out_;
  TraceSummary summary_;
};

/// Throws Errc::parse (with the line number) on malformed or truncated input.
Trace parse_trace(std::istream& in);
Trace load_trace(const std::string& path);

// ---------------------------------------------------------------------------
// Experiments

enum class Algorithm { dynamic, static_model };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algo) noexcept;

enum class InitialKind { blocks, random };

InitialKind parse_initial(std::string_view name);
std::string_view to_string(InitialKind kind) noexcept;

/// blocks: consecutive runs of k per server. random: the same loads, shuffled.
Coloring make_initial(InitialKind kind, std::size_t n, std::size_t k, Stream rng);

struct ExperimentSpec {
  RingConfig cfg;
  InitialKind initial = InitialKind::blocks;
  Algorithm algo = Algorithm::dynamic;
  mts::SolverKind mts = mts::SolverKind::smin;
  GeneratorSpec generator;
  std::size_t trials = 1;
  std::string out_dir;  // empty: no files
  bool with_oracle = false;
  std::size_t threads = 1;

  void validate() const;
};

/// Reads the JSON form, which mirrors the command-line flags.
ExperimentSpec parse_experiment_json(std::string_view json);
std::string to_json(const ExperimentSpec& spec);

struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string algo;
  std::size_t N = 0;
  std::uint64_t cost_hit = 0, cost_move = 0, cost_merge = 0, cost_mono = 0, cost_bal = 0;
  std::uint64_t total = 0;
  std::size_t max_load = 0;
  std::optional<std::uint64_t> opt_static;
  std::optional<std::uint64_t> opt_dynamic;
  std::optional<double> ratio;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
};

/// Trial i runs with seed derive_seed(cfg.seed, i). Writes trial_<i>.jsonl
/// and summary.csv under out_dir when it is set.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Runs one trial in memory and returns its trace.
Trace run_trial(const ExperimentSpec& spec, std::size_t trial);

std::string csv_header();
std::string csv_row(const TrialRow& row);
void write_csv(std::ostream& out, const std::vector<TrialRow>& rows);

/// Runs the experiment once per value of `param` (n, ell, k, epsilon, seed,
/// N or trials), writing into out_dir/<param>=<value>/ when out_dir is set.
struct SweepPoint {
  std::string value;
  ExperimentResult result;
};
std::vector<SweepPoint> sweep(const ExperimentSpec& base, std::string_view param,
                              const std::vector<std::string>& values);
void write_sweep_csv(std::ostream& out, std::string_view param, const std::vector<SweepPoint>& points);

// ---------------------------------------------------------------------------
// Offline optimum of a stored trace

enum class OracleKind { static_model, dynamic };
std::uint64_t oracle_for_trace(const Trace& trace, OracleKind kind);

// ---------------------------------------------------------------------------
// Verification

struct Violation {
  std::string category;  // load | cluster | multiplicity | dominance | ledger
  std::string file;
  std::uint64_t step = 0;
  std::string message;
};

struct VerifyReport {
  std::vector<Violation> violations;  // first per category and file
  std::size_t files = 0;
  std::size_t steps = 0;
  bool ok() const noexcept { return violations.empty(); }
};

VerifyReport verify_trace(const Trace& trace, const std::string& name = "<trace>");
/// Parse errors propagate as Errc::parse.
VerifyReport verify_files(const std::vector<std::string>& paths);
std::string format_report(const VerifyReport& report);

}  // namespace ringpart::harness
