#include "ringpart/ring_core.hpp"

#include <algorithm>

#include "ringpart/error.hpp"

namespace ringpart {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::instance: return "instance error";
    case Errc::parameter: return "parameter error";
    case Errc::size: return "size error";
    case Errc::parse: return "parse error";
    case Errc::io: return "io error";
    case Errc::invariant: return "invariant violation";
    case Errc::contract: return "contract error";
  }
  return "unknown error";
}

void RingConfig::validate() const {
  require(k >= 1, Errc::parameter, "k must be at least 1");
  require(ell >= 2, Errc::parameter, "ell must be at least 2");
  require(epsilon > 0.0, Errc::parameter, "epsilon must be positive");
  require(n <= ell * k, Errc::parameter,
          "n=" + std::to_string(n) + " exceeds total capacity ell*k=" + std::to_string(ell * k));
}

bool Arc::contains(const Arc& other, std::size_t n) const {
  if (length >= n) return true;
  if (other.length > length) return false;
  return (other.start + n - start % n) % n + other.length <= length;
}

Coloring Coloring::blocks(std::size_t n, std::size_t k) {
  std::vector<ServerId> color(n);
  for (std::size_t i = 0; i < n; ++i) color[i] = static_cast<ServerId>(i / k);
  return Coloring(std::move(color));
}

std::size_t Coloring::load(ServerId s) const {
  return static_cast<std::size_t>(std::count(color_.begin(), color_.end(), s));
}

std::vector<std::size_t> Coloring::loads(std::size_t ell) const {
  std::vector<std::size_t> out(ell, 0);
  for (ServerId c : color_)
    if (c >= 0 && static_cast<std::size_t>(c) < ell) ++out[static_cast<std::size_t>(c)];
  return out;
}

std::size_t Coloring::max_load() const {
  std::map<ServerId, std::size_t> counts;
  std::size_t best = 0;
  for (ServerId c : color_) best = std::max(best, ++counts[c]);
  return best;
}

int serve_request(const Coloring& coloring, EdgeId edge) {
  const std::size_t n = coloring.size();
  require(edge.i < n, Errc::instance, "edge out of range");
  return coloring[edge.i] != coloring[(edge.i + 1) % n] ? 1 : 0;
}

std::size_t migration_cost(const Coloring& from, const Coloring& to) {
  require(from.size() == to.size(), Errc::instance, "colorings differ in length");
  std::size_t moved = 0;
  for (std::size_t i = 0; i < from.size(); ++i) moved += from[i] != to[i];
  return moved;
}

LoadReport check_load(const Coloring& coloring, double bound) {
  std::map<ServerId, std::size_t> counts;
  for (ServerId c : coloring.colors()) ++counts[c];
  LoadReport report;
  for (const auto& [server, load] : counts) {
    report.max_load = std::max(report.max_load, load);
    if (static_cast<double>(load) > bound) report.violating.push_back(server);
  }
  report.pass = report.violating.empty();
  return report;
}

const char* to_string(IntervalEvent::Kind kind) noexcept {
  switch (kind) {
    case IntervalEvent::Kind::grown: return "grown";
    case IntervalEvent::Kind::mono_deactivated: return "mono_deactivated";
    case IntervalEvent::Kind::dominated: return "dominated";
  }
  return "unknown";
}

void CostLedger::record(StepRecord rec) {
  cost_hit += rec.cost_hit;
  cost_move += rec.cost_move;
  cost_merge += rec.cost_merge;
  cost_mono += rec.cost_mono;
  cost_bal += rec.cost_bal;
  if (keep_trace) trace.push_back(std::move(rec));
}

bool CostLedger::consistent() const {
  std::uint64_t h = 0, mv = 0, mg = 0, mo = 0, b = 0;
  for (const auto& r : trace) {
    h += r.cost_hit;
    mv += r.cost_move;
    mg += r.cost_merge;
    mo += r.cost_mono;
    b += r.cost_bal;
  }
  return h == cost_hit && mv == cost_move && mg == cost_merge && mo == cost_mono && b == cost_bal;
}

}  // namespace ringpart
