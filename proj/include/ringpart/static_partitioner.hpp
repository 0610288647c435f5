#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ringpart/partitioner.hpp"
#include "ringpart/ring_core.hpp"
#include "ringpart/rng.hpp"

namespace ringpart {

/// True iff strictly more than delta*|arc| processes of the arc share one initial color.
bool is_monochromatic(const Arc& arc, const Coloring& initial, double delta);

// ---------------------------------------------------------------------------
// Scheduling

struct ScheduledCluster {
  std::uint64_t id = 0;
  std::size_t size = 0;
  ServerId server = 0;
};

struct RebalanceResult {
  std::size_t moved = 0;  // processes migrated
  double D = 2.0;         // max{2, X/k}
};

/// Moves smallest clusters off every server whose load exceeds (D+eps')k
/// until it is at most Dk, evacuating the target server first when the
/// moved cluster is larger than k. Throws Errc::invariant if no server with
/// load <= k is available.
RebalanceResult rebalance(std::vector<ScheduledCluster>& clusters, std::size_t ell, std::size_t k,
                          double eps_prime);

// ---------------------------------------------------------------------------
// Slicing + clustering

enum class IntervalStatus { active, inactive_mono, inactive_dominated };

struct RingInterval {
  IntervalId id = 0;
  Arc bounds;                    // nodes
  std::size_t center = 0;        // edge the interval was created around
  std::optional<Arc> core;       // bounds before the latest growth
  std::size_t rank = 1;
  IntervalStatus status = IntervalStatus::active;
  std::optional<std::size_t> cut;  // edge, active intervals only

  std::size_t edges() const noexcept { return bounds.length - 1; }
};

enum class ClusterKind { color, singleton };

struct ClusterDecision {
  ClusterKind kind = ClusterKind::singleton;
  ServerId color = 0;
  bool charged = false;  // the slice newly joins a color cluster at full cost
};

/// Clustering rule for a slice with `counts[c]` members of initial color c.
/// `previous` is the color cluster the slice belonged to, if any: no strict
/// majority gives a singleton; more than 3/4 of color c gives the color-c
/// cluster; otherwise the slice stays in the color cluster of its majority
/// color only if it was already there.
ClusterDecision classify_slice(std::span<const std::size_t> counts, std::optional<ServerId> previous);

struct Slice {
  std::size_t size = 0;
  std::vector<std::size_t> counts;  // members per initial color
  ClusterKind kind = ClusterKind::singleton;
  ServerId color = 0;   // color cluster, when kind == color
  ServerId server = 0;  // own server, when kind == singleton
  bool alive = false;
};

/// Online algorithm for the static model.
class StaticPartitioner final : public Partitioner {
 public:
  /// One length-2 interval per initial cut edge; maximal monochromatic runs
  /// become slices in their color's cluster. Throws Errc::instance if the
  /// initial coloring overloads a server.
  StaticPartitioner(const RingConfig& cfg, const Coloring& initial);

  StepRecord serve(std::size_t edge) override;

  const Coloring& coloring() const override { return coloring_; }
  const CostLedger& ledger() const override { return ledger_; }
  CostLedger& ledger() override { return ledger_; }
  std::string_view algorithm() const override { return "static"; }
  /// (3 + 2 eps')k
  double load_bound() const override;

  double eps_prime() const noexcept { return eps_prime_; }
  double delta_bar() const noexcept { return delta_bar_; }
  /// (3 + 2(1 - delta_bar)/delta_bar)k
  double singleton_bound() const;
  double color_cluster_bound() const { return 2.0 * static_cast<double>(cfg_.k); }
  /// 6 + 8 ceil(log2(k+1))
  std::size_t multiplicity_bound() const;
  std::size_t interval_cap() const noexcept { return cap_; }

  const RingConfig& config() const noexcept { return cfg_; }
  const Coloring& initial() const noexcept { return initial_; }
  const std::vector<RingInterval>& intervals() const noexcept { return intervals_; }
  std::size_t active_intervals() const;
  std::span<const std::uint64_t> counts() const noexcept { return x_; }

  /// Live slices as (first process, slice) pairs in ring order.
  struct SliceView {
    std::size_t start;
    std::size_t size;
    ClusterKind kind;
    ServerId color;
    ServerId server;
    std::vector<std::size_t> counts;
  };
  std::vector<SliceView> slices() const;

  std::size_t max_color_cluster() const;
  std::size_t max_singleton_cluster() const;
  std::size_t max_multiplicity() const;
  std::vector<std::size_t> cluster_loads() const;

  /// Structural self-check: slices partition the ring, cut multiplicities
  /// match the active intervals, each cut lies inside its interval.
  /// Throws Errc::invariant on failure.
  void validate() const;

 private:
  struct Snapshot {
    ClusterKind kind;
    ServerId color;
    ServerId server;
  };

  std::size_t edge_in(const RingInterval& iv, std::size_t offset) const { return iv.bounds.at(offset, n_); }
  std::size_t offset_of(const RingInterval& iv, std::size_t edge) const { return (edge + n_ - iv.bounds.start) % n_; }
  std::vector<double> law(const RingInterval& iv) const;
  std::uint64_t min_count(const RingInterval& iv) const;

  ServerId server_of(const Slice& s) const;
  Snapshot snapshot(std::size_t slice) const;
  void transfer(std::size_t process, std::size_t from, std::size_t to);
  std::size_t carve(std::size_t process, std::size_t from);
  void unit_step(std::size_t from_edge, bool rightward, std::vector<std::pair<std::size_t, Snapshot>>& touched);
  std::uint64_t move_cut(RingInterval& iv, std::size_t to_edge);
  std::uint64_t remove_cut(RingInterval& iv);
  std::size_t slice_start(std::size_t slice) const;
  void cluster_update(const Snapshot& before, std::size_t slice);
  void grow(RingInterval& iv, StepRecord& rec);
  void reschedule(StepRecord& rec);
  Coloring current_coloring() const;

  RingConfig cfg_;
  std::size_t n_;
  double eps_prime_;
  double delta_bar_;
  std::size_t cap_;
  Coloring initial_;
  Stream rng_root_;

  std::vector<std::uint64_t> x_;
  std::vector<RingInterval> intervals_;
  std::vector<Stream> interval_rng_;
  std::vector<std::size_t> cut_count_;
  std::vector<std::size_t> cover_;

  std::vector<Slice> slices_;
  std::vector<std::size_t> slice_of_;
  std::vector<ServerId> color_server_;

  Coloring coloring_;
  CostLedger ledger_;
  std::uint64_t step_ = 0;
  std::uint64_t pending_mono_ = 0;
};

}  // namespace ringpart
