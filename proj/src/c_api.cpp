#include "ringpart/ringpart.h"

#include <memory>
#include <new>
#include <string>
#include <sstream>

#include "ringpart/dynamic_partitioner.hpp"
#include "ringpart/error.hpp"
#include "ringpart/harness.hpp"
#include "ringpart/oracles.hpp"
#include "ringpart/static_partitioner.hpp"

struct rp_text {
  std::string value;
};

struct rp_simulator {
  std::unique_ptr<ringpart::Partitioner> algo;
};

namespace {

thread_local std::string last_error;

rp_status status_of(ringpart::Errc code) {
  switch (code) {
    case ringpart::Errc::instance: return RP_ERR_INSTANCE;
    case ringpart::Errc::parameter: return RP_ERR_PARAMETER;
    case ringpart::Errc::size: return RP_ERR_SIZE;
    case ringpart::Errc::parse: return RP_ERR_PARSE;
    case ringpart::Errc::io: return RP_ERR_IO;
    case ringpart::Errc::invariant: return RP_ERR_INVARIANT;
    case ringpart::Errc::contract: return RP_ERR_CONTRACT;
  }
  return RP_ERR_INTERNAL;
}

template <class F>
rp_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RP_OK;
  } catch (const ringpart::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return RP_ERR_INTERNAL;
  }
}

rp_status null_arg(const char* what) {
  last_error = std::string(what) + " must not be NULL";
  return RP_ERR_NULL;
}

ringpart::RingConfig convert(const rp_config& c) {
  return ringpart::RingConfig{c.n, c.ell, c.k, c.epsilon, c.seed};
}

ringpart::Coloring initial_coloring(const ringpart::RingConfig& cfg, const int32_t* initial) {
  if (!initial) return ringpart::Coloring::blocks(cfg.n, cfg.k);
  return ringpart::Coloring(std::vector<ringpart::ServerId>(initial, initial + cfg.n));
}

void fill(rp_costs* out, const ringpart::StepRecord& r) {
  *out = rp_costs{r.cost_hit, r.cost_move, r.cost_merge, r.cost_mono, r.cost_bal, r.total(), r.max_load};
}

rp_text* make_text(std::string s) { return new rp_text{std::move(s)}; }

}  // namespace

extern "C" {

const char* rp_version(void) { return "1.0.0"; }

const char* rp_status_name(rp_status status) {
  switch (status) {
    case RP_OK: return "ok";
    case RP_ERR_INSTANCE: return "instance";
    case RP_ERR_PARAMETER: return "parameter";
    case RP_ERR_SIZE: return "size";
    case RP_ERR_PARSE: return "parse";
    case RP_ERR_IO: return "io";
    case RP_ERR_INVARIANT: return "invariant";
    case RP_ERR_CONTRACT: return "contract";
    case RP_ERR_NULL: return "null";
    case RP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rp_last_error(void) { return last_error.c_str(); }

const char* rp_text_data(const rp_text* text) { return text ? text->value.c_str() : ""; }
size_t rp_text_size(const rp_text* text) { return text ? text->value.size() : 0; }
void rp_text_destroy(rp_text* text) { delete text; }

rp_status rp_simulator_create(const rp_config* cfg, rp_algorithm algo, rp_mts mts, const int32_t* initial,
                              rp_simulator** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto config = convert(*cfg);
    config.validate();
    const auto init = initial_coloring(config, initial);
    auto sim = std::make_unique<rp_simulator>();
    if (algo == RP_ALGO_DYNAMIC) {
      const auto kind = mts == RP_MTS_WFA ? ringpart::mts::SolverKind::wfa : ringpart::mts::SolverKind::smin;
      ringpart::require(mts == RP_MTS_WFA || mts == RP_MTS_SMIN, ringpart::Errc::parameter, "unknown MTS solver");
      sim->algo = std::make_unique<ringpart::DynamicPartitioner>(config, kind, init);
    } else if (algo == RP_ALGO_STATIC) {
      sim->algo = std::make_unique<ringpart::StaticPartitioner>(config, init);
    } else {
      ringpart::fail(ringpart::Errc::parameter, "unknown algorithm");
    }
    sim->algo->ledger().keep_trace = false;
    *out = sim.release();
  });
}

void rp_simulator_destroy(rp_simulator* sim) { delete sim; }

rp_status rp_simulator_serve(rp_simulator* sim, size_t edge, rp_costs* step) {
  if (!sim) return null_arg("sim");
  return guarded([&] {
    const auto rec = sim->algo->serve(edge);
    if (step) fill(step, rec);
  });
}

rp_status rp_simulator_totals(const rp_simulator* sim, rp_costs* out) {
  if (!sim) return null_arg("sim");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& l = sim->algo->ledger();
    *out = rp_costs{l.cost_hit, l.cost_move, l.cost_merge, l.cost_mono, l.cost_bal, l.total(),
                    sim->algo->coloring().max_load()};
  });
}

rp_status rp_simulator_coloring(const rp_simulator* sim, int32_t* out, size_t len) {
  if (!sim) return null_arg("sim");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& c = sim->algo->coloring();
    ringpart::require(len >= c.size(), ringpart::Errc::parameter, "output buffer shorter than n");
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  });
}

rp_status rp_simulator_load_bound(const rp_simulator* sim, double* out) {
  if (!sim) return null_arg("sim");
  if (!out) return null_arg("out");
  return guarded([&] { *out = sim->algo->load_bound(); });
}

rp_status rp_experiment_run(const char* config_json, rp_text** csv) {
  if (!config_json) return null_arg("config_json");
  if (csv) *csv = nullptr;
  return guarded([&] {
    const auto spec = ringpart::harness::parse_experiment_json(config_json);
    const auto result = ringpart::harness::run_experiment(spec);
    if (csv) {
      std::ostringstream os;
      ringpart::harness::write_csv(os, result.rows);
      *csv = make_text(os.str());
    }
  });
}

rp_status rp_sweep_run(const char* config_json, const char* param, const char* values, rp_text** csv) {
  if (!config_json) return null_arg("config_json");
  if (!param) return null_arg("param");
  if (!values) return null_arg("values");
  if (csv) *csv = nullptr;
  return guarded([&] {
    const auto spec = ringpart::harness::parse_experiment_json(config_json);
    std::vector<std::string> list;
    std::string cur;
    for (const char* p = values;; ++p) {
      if (*p == ',' || *p == '\0') {
        if (!cur.empty()) list.push_back(cur);
        cur.clear();
        if (*p == '\0') break;
      } else if (*p != ' ') {
        cur += *p;
      }
    }
    const auto points = ringpart::harness::sweep(spec, param, list);
    if (csv) {
      std::ostringstream os;
      ringpart::harness::write_sweep_csv(os, param, points);
      *csv = make_text(os.str());
    }
  });
}

rp_status rp_oracle_ring(const rp_config* cfg, rp_oracle kind, const int32_t* initial, const size_t* requests,
                         size_t count, uint64_t* out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  if (count > 0 && !requests) return null_arg("requests");
  return guarded([&] {
    const auto config = convert(*cfg);
    config.validate();
    const auto init = initial_coloring(config, initial);
    const std::span<const std::size_t> reqs(requests, count);
    *out = kind == RP_ORACLE_STATIC ? ringpart::oracles::static_opt_ring(config, init, reqs)
                                    : ringpart::oracles::dynamic_opt_ring(config, init, reqs);
  });
}

rp_status rp_oracle_trace(const char* trace_path, rp_oracle kind, uint64_t* out) {
  if (!trace_path) return null_arg("trace_path");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto trace = ringpart::harness::load_trace(trace_path);
    *out = ringpart::harness::oracle_for_trace(
        trace, kind == RP_ORACLE_STATIC ? ringpart::harness::OracleKind::static_model
                                        : ringpart::harness::OracleKind::dynamic);
  });
}

rp_status rp_verify_files(const char* const* paths, size_t count, int* ok, rp_text** report) {
  if (count > 0 && !paths) return null_arg("paths");
  if (!ok) return null_arg("ok");
  if (report) *report = nullptr;
  return guarded([&] {
    std::vector<std::string> files;
    for (size_t i = 0; i < count; ++i) {
      ringpart::require(paths[i] != nullptr, ringpart::Errc::instance, "trace path must not be NULL");
      files.emplace_back(paths[i]);
    }
    const auto r = ringpart::harness::verify_files(files);
    *ok = r.ok() ? 1 : 0;
    if (report) *report = make_text(ringpart::harness::format_report(r));
  });
}

}  // extern "C"
