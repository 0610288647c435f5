#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ringpart/error.hpp"
#include "ringpart/harness.hpp"

namespace ringpart::harness {

using ojson = nlohmann::ordered_json;

namespace {

constexpr int kFormat = 1;

ojson header_json(const TraceHeader& h) {
  ojson j;
  j["kind"] = "header";
  j["format"] = kFormat;
  j["n"] = h.cfg.n;
  j["ell"] = h.cfg.ell;
  j["k"] = h.cfg.k;
  j["epsilon"] = h.cfg.epsilon;
  j["seed"] = h.cfg.seed;
  j["algorithm"] = h.algorithm;
  j["mts"] = h.mts ? ojson(*h.mts) : ojson(nullptr);
  j["initial"] = std::vector<ServerId>(h.initial.colors().begin(), h.initial.colors().end());
  j["generator"] = h.generator;
  j["trial"] = h.trial;
  j["load_bound"] = h.load_bound;
  if (h.color_cluster_bound) j["color_cluster_bound"] = *h.color_cluster_bound;
  if (h.singleton_bound) j["singleton_bound"] = *h.singleton_bound;
  if (h.multiplicity_bound) j["multiplicity_bound"] = *h.multiplicity_bound;
  return j;
}

ojson step_json(const StepRecord& r) {
  ojson j;
  j["kind"] = "step";
  j["step"] = r.step;
  j["edge"] = r.edge ? ojson(*r.edge) : ojson(nullptr);
  j["cost_hit"] = r.cost_hit;
  j["cost_move"] = r.cost_move;
  j["cost_merge"] = r.cost_merge;
  j["cost_mono"] = r.cost_mono;
  j["cost_bal"] = r.cost_bal;
  j["max_load"] = r.max_load;
  if (r.proxy_hit) j["proxy_hit"] = *r.proxy_hit;
  if (r.proxy_move) j["proxy_move"] = *r.proxy_move;
  if (r.max_color_cluster) j["max_color_cluster"] = *r.max_color_cluster;
  if (r.max_singleton_cluster) j["max_singleton_cluster"] = *r.max_singleton_cluster;
  if (r.max_multiplicity) j["max_multiplicity"] = *r.max_multiplicity;
  if (!r.events.empty()) {
    ojson events = ojson::array();
    for (const auto& e : r.events) {
      ojson ev;
      ev["event"] = to_string(e.kind);
      ev["interval"] = e.interval;
      ev["start"] = e.start;
      ev["length"] = e.length;
      if (e.by) ev["by"] = *e.by;
      if (e.cut_inside) ev["cut_inside"] = *e.cut_inside;
      events.push_back(std::move(ev));
    }
    j["events"] = std::move(events);
  }
  return j;
}

template <class T>
std::optional<T> opt_field(const ojson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

IntervalEvent::Kind parse_event_kind(const std::string& s) {
  if (s == "grown") return IntervalEvent::Kind::grown;
  if (s == "mono_deactivated") return IntervalEvent::Kind::mono_deactivated;
  if (s == "dominated") return IntervalEvent::Kind::dominated;
  throw std::invalid_argument("unknown event '" + s + "'");
}

TraceHeader parse_header(const ojson& j) {
  if (j.at("kind").get<std::string>() != "header") throw std::invalid_argument("first line is not a trace header");
  if (j.at("format").get<int>() != kFormat) throw std::invalid_argument("unsupported trace format");
  TraceHeader h;
  h.cfg.n = j.at("n").get<std::size_t>();
  h.cfg.ell = j.at("ell").get<std::size_t>();
  h.cfg.k = j.at("k").get<std::size_t>();
  h.cfg.epsilon = j.at("epsilon").get<double>();
  h.cfg.seed = j.at("seed").get<std::uint64_t>();
  h.algorithm = j.at("algorithm").get<std::string>();
  h.mts = opt_field<std::string>(j, "mts");
  h.initial = Coloring(j.at("initial").get<std::vector<ServerId>>());
  h.generator = j.at("generator").get<std::string>();
  h.trial = j.at("trial").get<std::uint64_t>();
  h.load_bound = j.at("load_bound").get<double>();
  h.color_cluster_bound = opt_field<double>(j, "color_cluster_bound");
  h.singleton_bound = opt_field<double>(j, "singleton_bound");
  h.multiplicity_bound = opt_field<std::size_t>(j, "multiplicity_bound");
  if (h.initial.size() != h.cfg.n) throw std::invalid_argument("initial coloring length differs from n");
  return h;
}

StepRecord parse_step(const ojson& j, const std::string& algorithm) {
  StepRecord r;
  r.step = j.at("step").get<std::uint64_t>();
  r.edge = opt_field<std::size_t>(j, "edge");
  r.algorithm = algorithm;
  r.cost_hit = j.at("cost_hit").get<std::uint64_t>();
  r.cost_move = j.at("cost_move").get<std::uint64_t>();
  r.cost_merge = j.at("cost_merge").get<std::uint64_t>();
  r.cost_mono = j.at("cost_mono").get<std::uint64_t>();
  r.cost_bal = j.at("cost_bal").get<std::uint64_t>();
  r.max_load = j.at("max_load").get<std::size_t>();
  r.proxy_hit = opt_field<std::uint64_t>(j, "proxy_hit");
  r.proxy_move = opt_field<std::uint64_t>(j, "proxy_move");
  r.max_color_cluster = opt_field<std::size_t>(j, "max_color_cluster");
  r.max_singleton_cluster = opt_field<std::size_t>(j, "max_singleton_cluster");
  r.max_multiplicity = opt_field<std::size_t>(j, "max_multiplicity");
  if (auto it = j.find("events"); it != j.end()) {
    for (const auto& ev : *it) {
      IntervalEvent e;
      e.kind = parse_event_kind(ev.at("event").get<std::string>());
      e.interval = ev.at("interval").get<IntervalId>();
      e.start = ev.at("start").get<std::size_t>();
      e.length = ev.at("length").get<std::size_t>();
      e.by = opt_field<IntervalId>(ev, "by");
      e.cut_inside = opt_field<bool>(ev, "cut_inside");
      r.events.push_back(e);
    }
  }
  return r;
}

TraceSummary parse_summary(const ojson& j) {
  TraceSummary s;
  s.steps = j.at("steps").get<std::uint64_t>();
  s.cost_hit = j.at("cost_hit").get<std::uint64_t>();
  s.cost_move = j.at("cost_move").get<std::uint64_t>();
  s.cost_merge = j.at("cost_merge").get<std::uint64_t>();
  s.cost_mono = j.at("cost_mono").get<std::uint64_t>();
  s.cost_bal = j.at("cost_bal").get<std::uint64_t>();
  s.total = j.at("total").get<std::uint64_t>();
  s.max_load = j.at("max_load").get<std::size_t>();
  return s;
}

}  // namespace

std::vector<std::size_t> Trace::requests() const {
  std::vector<std::size_t> out;
  out.reserve(steps.size());
  for (const auto& r : steps)
    if (r.edge) out.push_back(*r.edge);
  return out;
}

TraceWriter::TraceWriter(std::ostream& out, const TraceHeader& header) : out_(out) {
  out_ << header_json(header).dump() << '\n';
}

void TraceWriter::step(const StepRecord& rec) {
  out_ << step_json(rec).dump() << '\n';
  if (rec.edge) ++summary_.steps;
  summary_.cost_hit += rec.cost_hit;
  summary_.cost_move += rec.cost_move;
  summary_.cost_merge += rec.cost_merge;
  summary_.cost_mono += rec.cost_mono;
  summary_.cost_bal += rec.cost_bal;
  summary_.total += rec.total();
  summary_.max_load = std::max(summary_.max_load, rec.max_load);
}

void TraceWriter::finish() {
  ojson j;
  j["kind"] = "summary";
  j["steps"] = summary_.steps;
  j["cost_hit"] = summary_.cost_hit;
  j["cost_move"] = summary_.cost_move;
  j["cost_merge"] = summary_.cost_merge;
  j["cost_mono"] = summary_.cost_mono;
  j["cost_bal"] = summary_.cost_bal;
  j["total"] = summary_.total;
  j["max_load"] = summary_.max_load;
  out_ << j.dump() << '\n';
  out_.flush();
}

Trace parse_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false, have_summary = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (have_summary) throw std::invalid_argument("content after the summary line");
      const ojson j = ojson::parse(line);
      if (!have_header) {
        trace.header = parse_header(j);
        have_header = true;
        continue;
      }
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "step") {
        trace.steps.push_back(parse_step(j, trace.header.algorithm));
      } else if (kind == "summary") {
        trace.summary = parse_summary(j);
        have_summary = true;
      } else {
        throw std::invalid_argument("unknown record kind '" + kind + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(Errc::parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) fail(Errc::parse, "empty trace");
  if (!have_summary) fail(Errc::parse, "line " + std::to_string(lineno) + ": trace ends without a summary (truncated)");
  return trace;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot open trace '" + path + "'");
  try {
    return parse_trace(in);
  } catch (const Error& e) {
    if (e.code() == Errc::parse) fail(Errc::parse, path + ": " + e.what());
    throw;
  }
}

}  // namespace ringpart::harness
