#include "ringpart/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ringpart/dynamic_partitioner.hpp"
#include "ringpart/error.hpp"
#include "ringpart/oracles.hpp"
#include "ringpart/static_partitioner.hpp"

namespace ringpart::harness {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
    const auto out = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    fail(Errc::parse, "'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(v) + "'");
  }
}

double parse_real(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    const double out = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    fail(Errc::parse, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  }
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators

std::string_view to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::fixed_edge: return "fixed_edge";
    case GeneratorKind::uniform_random: return "uniform_random";
    case GeneratorKind::zipf_edges: return "zipf_edges";
    case GeneratorKind::moving_hotspot: return "moving_hotspot";
    case GeneratorKind::adversary_stay: return "adversary_stay";
    case GeneratorKind::trace_file: return "trace_file";
  }
  return "?";
}

GeneratorSpec parse_generator(std::string_view text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  bool known = false;
  for (auto kind : {GeneratorKind::fixed_edge, GeneratorKind::uniform_random, GeneratorKind::zipf_edges,
                    GeneratorKind::moving_hotspot, GeneratorKind::adversary_stay, GeneratorKind::trace_file})
    if (to_string(kind) == name) {
      spec.kind = kind;
      known = true;
    }
  if (!known) fail(Errc::parse, "unknown generator '" + std::string(name) + "'");
  if (colon == std::string_view::npos) return spec;

  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) fail(Errc::parse, "generator option '" + std::string(item) + "' lacks '='");
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "N") spec.length = parse_uint(key, value);
    else if (key == "edge") spec.edge = parse_uint(key, value);
    else if (key == "s") spec.exponent = parse_real(key, value);
    else if (key == "offset") spec.offset = parse_uint(key, value);
    else if (key == "window") spec.window = parse_uint(key, value);
    else if (key == "w") spec.every = parse_uint(key, value);
    else if (key == "start") spec.start = parse_uint(key, value);
    else if (key == "line") spec.line = parse_uint(key, value);
    else if (key == "strategy") spec.strategy = std::string(value);
    else if (key == "path") spec.path = std::string(value);
    else fail(Errc::parse, "unknown generator option '" + std::string(key) + "'");
  }
  return spec;
}

std::string to_string(const GeneratorSpec& spec) {
  std::string out(to_string(spec.kind));
  out += ":N=" + std::to_string(spec.length);
  switch (spec.kind) {
    case GeneratorKind::fixed_edge: out += ",edge=" + std::to_string(spec.edge); break;
    case GeneratorKind::uniform_random: break;
    case GeneratorKind::zipf_edges:
      out += ",s=" + format_real(spec.exponent) + ",offset=" + std::to_string(spec.offset);
      break;
    case GeneratorKind::moving_hotspot:
      out += ",window=" + std::to_string(spec.window) + ",w=" + std::to_string(spec.every) +
             ",start=" + std::to_string(spec.start);
      break;
    case GeneratorKind::adversary_stay:
      out += ",line=" + std::to_string(spec.line) + ",offset=" + std::to_string(spec.offset) +
             ",strategy=" + spec.strategy;
      break;
    case GeneratorKind::trace_file: out += ",path=" + spec.path; break;
  }
  return out;
}

void GeneratorSpec::validate(std::size_t n) const {
  require(n >= 1, Errc::parameter, "generator needs a ring with at least one edge");
  switch (kind) {
    case GeneratorKind::fixed_edge:
      require(edge < n, Errc::parameter, "fixed_edge: edge " + std::to_string(edge) + " >= n");
      break;
    case GeneratorKind::uniform_random: break;
    case GeneratorKind::zipf_edges:
      require(exponent > 0.0 && std::isfinite(exponent), Errc::parameter, "zipf_edges: s must be positive");
      require(offset < n, Errc::parameter, "zipf_edges: offset >= n");
      break;
    case GeneratorKind::moving_hotspot:
      require(window >= 1 && window <= n, Errc::parameter, "moving_hotspot: window must lie in [1, n]");
      require(every >= 1, Errc::parameter, "moving_hotspot: w must be positive");
      require(start < n, Errc::parameter, "moving_hotspot: start >= n");
      break;
    case GeneratorKind::adversary_stay:
      require(line <= n, Errc::parameter, "adversary_stay: line longer than the ring");
      require(offset < n, Errc::parameter, "adversary_stay: offset >= n");
      require(strategy == "stay" || strategy == "wfa", Errc::parameter,
              "adversary_stay: strategy must be stay or wfa");
      break;
    case GeneratorKind::trace_file: require(!path.empty(), Errc::parameter, "trace_file: path is required"); break;
  }
}

std::vector<std::size_t> generate(const GeneratorSpec& spec, std::size_t n, std::size_t k, Stream rng) {
  spec.validate(n);
  const std::size_t N = spec.length;
  std::vector<std::size_t> out;
  out.reserve(N);
  switch (spec.kind) {
    case GeneratorKind::fixed_edge:
      out.assign(N, spec.edge);
      break;
    case GeneratorKind::uniform_random:
      for (std::size_t t = 0; t < N; ++t) out.push_back(rng.below(n));
      break;
    case GeneratorKind::zipf_edges: {
      std::vector<double> cdf(n);
      double acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) cdf[r] = acc += std::pow(static_cast<double>(r + 1), -spec.exponent);
      for (std::size_t t = 0; t < N; ++t) {
        const double u = rng.uniform01() * acc;
        const auto r = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        out.push_back((spec.offset + std::min(r, n - 1)) % n);
      }
      break;
    }
    case GeneratorKind::moving_hotspot:
      for (std::size_t t = 0; t < N; ++t) {
        const std::size_t base = spec.start + t / spec.every;
        const std::size_t jitter = spec.window > 1 ? rng.below(spec.window) : 0;
        out.push_back((base + jitter) % n);
      }
      break;
    case GeneratorKind::adversary_stay: {
      const std::size_t L = spec.line ? spec.line : std::min(k, n);
      std::unique_ptr<oracles::LineStrategy> strategy;
      if (spec.strategy == "stay")
        strategy = std::make_unique<oracles::StayPut>(L);
      else
        strategy = std::make_unique<oracles::MtsLineStrategy>(L, mts::SolverKind::wfa);
      // a deterministic strategy makes any prefix of a longer run a valid run
      const auto run = oracles::adversary_stay(*strategy, std::max(N, L * L));
      for (std::size_t t = 0; t < N; ++t) out.push_back((spec.offset + run.requests[t] - 1) % n);
      break;
    }
    case GeneratorKind::trace_file: {
      const auto all = load_trace(spec.path).requests();
      if (N == 0) {
        out = all;
      } else {
        require(all.size() >= N, Errc::parameter, "trace_file: trace holds fewer than N requests");
        out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(N));
      }
      for (std::size_t e : out) require(e < n, Errc::parameter, "trace_file: edge outside the ring");
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dynamic") return Algorithm::dynamic;
  if (name == "static") return Algorithm::static_model;
  fail(Errc::parse, "unknown algorithm '" + std::string(name) + "' (dynamic|static)");
}

std::string_view to_string(Algorithm algo) noexcept { return algo == Algorithm::dynamic ? "dynamic" : "static"; }

InitialKind parse_initial(std::string_view name) {
  if (name == "blocks") return InitialKind::blocks;
  if (name == "random") return InitialKind::random;
  fail(Errc::parse, "unknown initial coloring '" + std::string(name) + "' (blocks|random)");
}

std::string_view to_string(InitialKind kind) noexcept { return kind == InitialKind::blocks ? "blocks" : "random"; }

Coloring make_initial(InitialKind kind, std::size_t n, std::size_t k, Stream rng) {
  Coloring c = Coloring::blocks(n, k);
  if (kind == InitialKind::random)
    for (std::size_t i = n; i > 1; --i) std::swap(c[i - 1], c[rng.below(i)]);
  return c;
}

void ExperimentSpec::validate() const {
  cfg.validate();
  require(trials >= 1, Errc::parameter, "trials must be at least 1");
  require(threads >= 1, Errc::parameter, "threads must be at least 1");
  generator.validate(cfg.n);
}

ExperimentSpec parse_experiment_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::parse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) fail(Errc::parse, "config: top level must be an object");
  ExperimentSpec spec;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "algo") spec.algo = parse_algorithm(v.get<std::string>());
      else if (key == "initial") spec.initial = parse_initial(v.get<std::string>());
      else if (key == "n") spec.cfg.n = v.get<std::size_t>();
      else if (key == "ell") spec.cfg.ell = v.get<std::size_t>();
      else if (key == "k") spec.cfg.k = v.get<std::size_t>();
      else if (key == "epsilon") spec.cfg.epsilon = v.get<double>();
      else if (key == "seed") spec.cfg.seed = v.get<std::uint64_t>();
      else if (key == "gen") spec.generator = parse_generator(v.get<std::string>());
      else if (key == "trials") spec.trials = v.get<std::size_t>();
      else if (key == "out") spec.out_dir = v.get<std::string>();
      else if (key == "mts") spec.mts = mts::parse_solver_kind(v.get<std::string>());
      else if (key == "with_oracle") spec.with_oracle = v.get<bool>();
      else if (key == "threads") spec.threads = v.get<std::size_t>();
      else fail(Errc::parse, "config: unknown key '" + key + "'");
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Errc::parse, std::string("config: ") + e.what());
  }
  return spec;
}

std::string to_json(const ExperimentSpec& spec) {
  nlohmann::ordered_json j;
  j["algo"] = to_string(spec.algo);
  j["n"] = spec.cfg.n;
  j["ell"] = spec.cfg.ell;
  j["k"] = spec.cfg.k;
  j["epsilon"] = spec.cfg.epsilon;
  j["seed"] = spec.cfg.seed;
  j["gen"] = to_string(spec.generator);
  j["initial"] = to_string(spec.initial);
  j["trials"] = spec.trials;
  j["out"] = spec.out_dir;
  j["mts"] = mts::to_string(spec.mts);
  j["with_oracle"] = spec.with_oracle;
  j["threads"] = spec.threads;
  return j.dump(2);
}

namespace {

using Sink = std::function<void(const TraceHeader&)>;
using StepSink = std::function<void(const StepRecord&)>;

TrialRow simulate(const ExperimentSpec& spec, std::size_t trial, const Sink& on_header, const StepSink& on_step) {
  RingConfig cfg = spec.cfg;
  cfg.seed = derive_seed(spec.cfg.seed, trial);
  const auto requests = generate(spec.generator, cfg.n, cfg.k, Stream(cfg.seed).child("requests"));
  const Coloring initial = make_initial(spec.initial, cfg.n, cfg.k, Stream(cfg.seed).child("initial"));

  TraceHeader header;
  header.cfg = cfg;
  header.algorithm = std::string(to_string(spec.algo));
  header.initial = initial;
  header.generator = to_string(spec.generator);
  header.trial = trial;

  std::unique_ptr<Partitioner> algo;
  if (spec.algo == Algorithm::dynamic) {
    auto dyn = std::make_unique<DynamicPartitioner>(cfg, spec.mts, initial);
    header.mts = std::string(mts::to_string(spec.mts));
    header.load_bound = dyn->guaranteed_load_bound();
    algo = std::move(dyn);
  } else {
    auto st = std::make_unique<StaticPartitioner>(cfg, initial);
    header.load_bound = st->load_bound();
    header.color_cluster_bound = st->color_cluster_bound();
    header.singleton_bound = st->singleton_bound();
    header.multiplicity_bound = st->multiplicity_bound();
    algo = std::move(st);
  }
  on_header(header);

  TrialRow row;
  auto account = [&](const StepRecord& rec) {
    row.max_load = std::max(row.max_load, rec.max_load);
    on_step(rec);
  };
  for (const auto& rec : algo->ledger().trace) account(rec);
  algo->ledger().keep_trace = false;
  for (std::size_t e : requests) account(algo->serve(e));

  const auto& ledger = algo->ledger();
  row.trial = trial;
  row.seed = cfg.seed;
  row.algo = header.algorithm;
  row.N = requests.size();
  row.cost_hit = ledger.cost_hit;
  row.cost_move = ledger.cost_move;
  row.cost_merge = ledger.cost_merge;
  row.cost_mono = ledger.cost_mono;
  row.cost_bal = ledger.cost_bal;
  row.total = ledger.total();

  if (spec.with_oracle) {
    auto guarded = [](auto&& fn) -> std::optional<std::uint64_t> {
      try {
        return fn();
      } catch (const Error& e) {
        if (e.code() == Errc::size) return std::nullopt;
        throw;
      }
    };
    row.opt_static = guarded([&] { return oracles::static_opt_ring(cfg, initial, requests); });
    row.opt_dynamic = guarded([&] { return oracles::dynamic_opt_ring(cfg, initial, requests); });
    if (row.opt_dynamic && *row.opt_dynamic > 0)
      row.ratio = static_cast<double>(row.total) / static_cast<double>(*row.opt_dynamic);
  }
  return row;
}

}  // namespace

Trace run_trial(const ExperimentSpec& spec, std::size_t trial) {
  spec.validate();
  Trace trace;
  std::ostringstream sink;
  std::optional<TraceWriter> writer;
  simulate(
      spec, trial,
      [&](const TraceHeader& h) {
        trace.header = h;
        writer.emplace(sink, h);
      },
      [&](const StepRecord& r) {
        trace.steps.push_back(r);
        writer->step(r);
      });
  trace.summary = writer->summary();
  return trace;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (!spec.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    if (ec) fail(Errc::io, "cannot create '" + spec.out_dir + "': " + ec.message());
  }

  ExperimentResult result;
  result.rows.resize(spec.trials);
  std::vector<std::exception_ptr> errors(spec.trials);

  auto run = [&](std::size_t trial) {
    try {
      if (spec.out_dir.empty()) {
        result.rows[trial] = simulate(spec, trial, [](const TraceHeader&) {}, [](const StepRecord&) {});
        return;
      }
      const auto path = fs::path(spec.out_dir) / ("trial_" + std::to_string(trial) + ".jsonl");
      std::ofstream out(path, std::ios::binary);
      if (!out) fail(Errc::io, "cannot write '" + path.string() + "'");
      std::optional<TraceWriter> writer;
      result.rows[trial] = simulate(
          spec, trial, [&](const TraceHeader& h) { writer.emplace(out, h); },
          [&](const StepRecord& r) { writer->step(r); });
      writer->finish();
      if (!out) fail(Errc::io, "write to '" + path.string() + "' failed");
    } catch (...) {
      errors[trial] = std::current_exception();
    }
  };

  const std::size_t workers = std::min(spec.threads, spec.trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < spec.trials; ++t) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < spec.trials;) run(t);
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (!spec.out_dir.empty()) {
    const auto path = fs::path(spec.out_dir) / "summary.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io, "cannot write '" + path.string() + "'");
    write_csv(out, result.rows);
    if (!out) fail(Errc::io, "write to '" + path.string() + "' failed");
  }
  return result;
}

std::string csv_header() {
  return "trial,seed,algo,N,cost_hit,cost_move,cost_merge,cost_mono,cost_bal,total,max_load,opt_static,opt_dynamic,"
         "ratio";
}

std::string csv_row(const TrialRow& r) {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  std::string ratio;
  if (r.ratio) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", *r.ratio);
    ratio = buf;
  }
  std::ostringstream os;
  os << r.trial << ',' << r.seed << ',' << r.algo << ',' << r.N << ',' << r.cost_hit << ',' << r.cost_move << ','
     << r.cost_merge << ',' << r.cost_mono << ',' << r.cost_bal << ',' << r.total << ',' << r.max_load << ','
     << opt(r.opt_static) << ',' << opt(r.opt_dynamic) << ',' << ratio;
  return os.str();
}

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

std::vector<SweepPoint> sweep(const ExperimentSpec& base, std::string_view param,
                              const std::vector<std::string>& values) {
  require(!values.empty(), Errc::parameter, "sweep needs at least one value");
  std::vector<SweepPoint> points;
  for (const auto& v : values) {
    ExperimentSpec spec = base;
    if (param == "n") spec.cfg.n = parse_uint(param, v);
    else if (param == "ell") spec.cfg.ell = parse_uint(param, v);
    else if (param == "k") spec.cfg.k = parse_uint(param, v);
    else if (param == "epsilon") spec.cfg.epsilon = parse_real(param, v);
    else if (param == "seed") spec.cfg.seed = parse_uint(param, v);
    else if (param == "N") spec.generator.length = parse_uint(param, v);
    else if (param == "trials") spec.trials = parse_uint(param, v);
    else fail(Errc::parse, "cannot sweep over '" + std::string(param) + "' (n|ell|k|epsilon|seed|N|trials)");
    if (!base.out_dir.empty()) spec.out_dir = (fs::path(base.out_dir) / (std::string(param) + "=" + v)).string();
    points.push_back({v, run_experiment(spec)});
  }
  if (!base.out_dir.empty()) {
    const auto path = fs::path(base.out_dir) / "sweep.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io, "cannot write '" + path.string() + "'");
    write_sweep_csv(out, param, points);
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::string_view param, const std::vector<SweepPoint>& points) {
  out << param << ',' << csv_header() << '\n';
  for (const auto& p : points)
    for (const auto& r : p.result.rows) out << p.value << ',' << csv_row(r) << '\n';
}

// ---------------------------------------------------------------------------

std::uint64_t oracle_for_trace(const Trace& trace, OracleKind kind) {
  const auto requests = trace.requests();
  return kind == OracleKind::static_model
             ? oracles::static_opt_ring(trace.header.cfg, trace.header.initial, requests)
             : oracles::dynamic_opt_ring(trace.header.cfg, trace.header.initial, requests);
}

// ---------------------------------------------------------------------------
// Verification

VerifyReport verify_trace(const Trace& trace, const std::string& name) {
  VerifyReport report;
  report.files = 1;
  report.steps = trace.steps.size();
  std::vector<std::string> seen;
  auto flag = [&](const std::string& category, std::uint64_t step, const std::string& message) {
    if (std::find(seen.begin(), seen.end(), category) != seen.end()) return;
    seen.push_back(category);
    report.violations.push_back({category, name, step, message});
  };
  const auto& h = trace.header;
  constexpr double tol = 1e-9;

  TraceSummary sum;
  std::uint64_t proxy_hit = 0, proxy_move = 0, online_hit = 0, online_move = 0;
  std::optional<std::uint64_t> last_step;
  for (const auto& r : trace.steps) {
    if (last_step && r.step != *last_step + 1)
      flag("ledger", r.step, "step " + std::to_string(r.step) + " follows step " + std::to_string(*last_step));
    last_step = r.step;
    if (r.edge && *r.edge >= h.cfg.n) flag("ledger", r.step, "edge outside the ring");

    if (static_cast<double>(r.max_load) > h.load_bound + tol)
      flag("load", r.step, "max load " + std::to_string(r.max_load) + " exceeds " + format_real(h.load_bound));
    if (h.color_cluster_bound && r.max_color_cluster &&
        static_cast<double>(*r.max_color_cluster) > *h.color_cluster_bound + tol)
      flag("cluster", r.step, "color cluster of " + std::to_string(*r.max_color_cluster) + " exceeds " +
                                  format_real(*h.color_cluster_bound));
    if (h.singleton_bound && r.max_singleton_cluster &&
        static_cast<double>(*r.max_singleton_cluster) > *h.singleton_bound + tol)
      flag("cluster", r.step, "singleton cluster of " + std::to_string(*r.max_singleton_cluster) + " exceeds " +
                                  format_real(*h.singleton_bound));
    if (h.multiplicity_bound && r.max_multiplicity && *r.max_multiplicity > *h.multiplicity_bound)
      flag("multiplicity", r.step, "a process lies in " + std::to_string(*r.max_multiplicity) +
                                       " intervals, bound " + std::to_string(*h.multiplicity_bound));
    for (const auto& ev : r.events)
      if (ev.kind == IntervalEvent::Kind::dominated && ev.cut_inside && !*ev.cut_inside)
        flag("dominance", r.step, "interval " + std::to_string(ev.interval) + " had its cut outside interval " +
                                      (ev.by ? std::to_string(*ev.by) : std::string("?")));

    if (r.edge) ++sum.steps;
    sum.cost_hit += r.cost_hit;
    sum.cost_move += r.cost_move;
    sum.cost_merge += r.cost_merge;
    sum.cost_mono += r.cost_mono;
    sum.cost_bal += r.cost_bal;
    sum.total += r.total();
    sum.max_load = std::max(sum.max_load, r.max_load);

    // the placement record has no interval attribution
    if (r.edge && (r.proxy_hit || r.proxy_move)) {
      proxy_hit += r.proxy_hit.value_or(0);
      proxy_move += r.proxy_move.value_or(0);
      online_hit += r.cost_hit;
      online_move += r.cost_move;
      if (online_hit > proxy_hit || online_move > proxy_move)
        flag("ledger", r.step, "ledgered hit/move exceeds the interval proxy sums");
    }
    if (h.algorithm == "static" && sum.cost_mono > 8 * (sum.cost_move + sum.cost_merge))
      flag("ledger", r.step, "monochromatic-cluster cost exceeds 8x (move + merge)");
  }

  const auto& s = trace.summary;
  if (s.steps != sum.steps || s.cost_hit != sum.cost_hit || s.cost_move != sum.cost_move ||
      s.cost_merge != sum.cost_merge || s.cost_mono != sum.cost_mono || s.cost_bal != sum.cost_bal ||
      s.total != sum.total || s.max_load != sum.max_load)
    flag("ledger", last_step.value_or(0), "summary line disagrees with the step records");
  return report;
}

VerifyReport verify_files(const std::vector<std::string>& paths) {
  VerifyReport all;
  for (const auto& p : paths) {
    const auto r = verify_trace(load_trace(p), p);
    all.files += r.files;
    all.steps += r.steps;
    all.violations.insert(all.violations.end(), r.violations.begin(), r.violations.end());
  }
  return all;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& v : report.violations)
    os << v.category << ": " << v.file << " step " << v.step << ": " << v.message << '\n';
  os << (report.ok() ? "ok" : "FAILED") << ": " << report.files << " trace(s), " << report.steps << " step(s), "
     << report.violations.size() << " violation(s)\n";
  return os.str();
}

}  // namespace ringpart::harness
