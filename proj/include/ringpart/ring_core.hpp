#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ringpart {

using ServerId = std::int32_t;
using IntervalId = std::uint32_t;

/// Problem instance: n processes on a ring, ell servers of capacity k.
struct RingConfig {
  std::size_t n = 0;
  std::size_t ell = 2;
  std::size_t k = 1;
  double epsilon = 0.5;
  std::uint64_t seed = 0;

  /// Throws Errc::parameter unless n <= ell*k, k >= 1, ell >= 2, epsilon > 0.
  void validate() const;
};

/// Canonical ring position of edge {p_i, p_{i+1 mod n}}.
struct EdgeId {
  std::size_t i = 0;
  friend bool operator==(EdgeId, EdgeId) = default;
};

/// Arcs are (start, length) pairs so that wrapping is never ambiguous.
struct Arc {
  std::size_t start = 0;
  std::size_t length = 0;

  /// Position `offset` steps into the arc, modulo n.
  std::size_t at(std::size_t offset, std::size_t n) const { return (start + offset) % n; }
  bool contains(std::size_t pos, std::size_t n) const { return (pos + n - start % n) % n < length; }
  /// Arc containment on a ring of n positions.
  bool contains(const Arc& other, std::size_t n) const;
};

class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<ServerId> color) : color_(std::move(color)) {}

  /// Processes [0, n) placed in consecutive blocks of k on servers 0, 1, ...
  static Coloring blocks(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return color_.size(); }
  ServerId operator[](std::size_t i) const { return color_[i]; }
  ServerId& operator[](std::size_t i) { return color_[i]; }
  std::span<const ServerId> colors() const noexcept { return color_; }

  std::size_t load(ServerId s) const;
  /// Loads of servers [0, ell); colors outside the range are ignored.
  std::vector<std::size_t> loads(std::size_t ell) const;
  std::size_t max_load() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<ServerId> color_;
};

/// 1 iff the endpoints of `edge` sit on different servers.
int serve_request(const Coloring& coloring, EdgeId edge);

/// Number of processes whose server differs. Throws Errc::instance on length mismatch.
std::size_t migration_cost(const Coloring& from, const Coloring& to);

struct LoadReport {
  bool pass = true;
  std::size_t max_load = 0;
  std::vector<ServerId> violating;
};

LoadReport check_load(const Coloring& coloring, double bound);

/// Lifecycle events emitted by the static algorithm's slicing layer.
struct IntervalEvent {
  enum class Kind { grown, mono_deactivated, dominated };
  Kind kind = Kind::grown;
  IntervalId interval = 0;
  std::size_t start = 0;   // arc after the event
  std::size_t length = 0;
  std::optional<IntervalId> by;         // dominating interval
  std::optional<bool> cut_inside;       // dominated cut edge inside the dominating interval
};

const char* to_string(IntervalEvent::Kind kind) noexcept;

/// Per-step cost increments plus the load observed after the step.
struct StepRecord {
  std::uint64_t step = 0;
  std::optional<std::size_t> edge;  // empty for the initial placement record
  std::string algorithm;
  std::uint64_t cost_hit = 0;
  std::uint64_t cost_move = 0;
  std::uint64_t cost_merge = 0;
  std::uint64_t cost_mono = 0;
  std::uint64_t cost_bal = 0;
  std::size_t max_load = 0;

  // dynamic model: interval-attributed proxy increments
  std::optional<std::uint64_t> proxy_hit;
  std::optional<std::uint64_t> proxy_move;
  // static model: structural observations after the step
  std::optional<std::size_t> max_color_cluster;
  std::optional<std::size_t> max_singleton_cluster;
  std::optional<std::size_t> max_multiplicity;
  std::vector<IntervalEvent> events;

  std::uint64_t total() const noexcept { return cost_hit + cost_move + cost_merge + cost_mono + cost_bal; }
};

struct IntervalCost {
  std::uint64_t hit = 0;
  std::uint64_t move = 0;
};

/// Exact cost accounting shared by every algorithm.
class CostLedger {
 public:
  std::uint64_t cost_hit = 0;
  std::uint64_t cost_move = 0;
  std::uint64_t cost_merge = 0;
  std::uint64_t cost_mono = 0;
  std::uint64_t cost_bal = 0;
  std::map<IntervalId, IntervalCost> per_interval;
  std::vector<StepRecord> trace;

  std::uint64_t total() const noexcept { return cost_hit + cost_move + cost_merge + cost_mono + cost_bal; }

  /// Adds the record's increments to the counters and appends it to the trace.
  void record(StepRecord rec);

  /// True iff the trace increments sum exactly to the five counters.
  bool consistent() const;

  bool keep_trace = true;
};

}  // namespace ringpart
