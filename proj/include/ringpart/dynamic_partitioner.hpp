#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "ringpart/mts_line.hpp"
#include "ringpart/partitioner.hpp"
#include "ringpart/ring_core.hpp"
#include "ringpart/rng.hpp"

namespace ringpart {

/// Fixed intervals I_i = [R + i*k', R + (i+1)*k'] (i = 0..ell'-1) of k' edges each.
struct ShiftLayout {
  std::size_t n = 0;
  std::size_t k_prime = 0;
  std::size_t ell_prime = 0;
  std::size_t shift = 0;

  static ShiftLayout make(const RingConfig& cfg, std::size_t shift);
  /// ceil((1+eps)k), clamped to n.
  static std::size_t k_prime_for(const RingConfig& cfg);

  Arc interval(std::size_t i) const { return Arc{(shift + i * k_prime) % n, k_prime + 1}; }
  /// Ring edge of state `state` in interval i.
  std::size_t edge_at(std::size_t i, std::size_t state) const { return (shift + i * k_prime + state) % n; }

  struct Slot {
    std::size_t interval;
    std::size_t state;
  };
  /// The (at most two) intervals holding `edge`, with the edge's state index.
  std::vector<Slot> containing(std::size_t edge) const;
};

/// Online algorithm for the dynamic model: one MTS instance per fixed
/// interval, the chosen states act as cut edges and slice i goes to server i.
class DynamicPartitioner final : public Partitioner {
 public:
  /// Draws R from the seed's "shift" stream, starts each solver at the
  /// interval's middle edge and ledgers the placement from `initial`.
  DynamicPartitioner(const RingConfig& cfg, mts::SolverKind solver, const Coloring& initial);
  /// Same, with an explicit shift R in [0, k').
  DynamicPartitioner(const RingConfig& cfg, mts::SolverKind solver, const Coloring& initial,
                     std::size_t shift);

  StepRecord serve(std::size_t edge) override;

  const Coloring& coloring() const override { return coloring_; }
  const CostLedger& ledger() const override { return ledger_; }
  CostLedger& ledger() override { return ledger_; }
  std::string_view algorithm() const override { return "dynamic"; }
  /// 2(1+eps)k
  double load_bound() const override;
  /// max(2(1+eps)k, 2k'-1): the bound that survives rounding k' up.
  double guaranteed_load_bound() const;

  const ShiftLayout& layout() const noexcept { return layout_; }
  const RingConfig& config() const noexcept { return cfg_; }
  /// Current cut state per interval.
  std::vector<std::size_t> cut_states() const;
  std::size_t cut_edge(std::size_t interval) const;
  const mts::Solver& solver(std::size_t interval) const { return *solvers_.at(interval); }

  /// Slice i = (cut_i, cut_{i+1}] on server i; the wrap slice may be empty.
  Coloring map_servers() const;

  struct Proxy {
    std::uint64_t hit = 0;
    std::uint64_t move = 0;
  };
  /// Interval-attributed sums; excludes the initial placement.
  Proxy proxy_costs() const;
  std::uint64_t initial_migration() const noexcept { return initial_migration_; }
  /// States requested in interval i, in order (the interval's task sequence).
  const std::vector<std::size_t>& interval_requests(std::size_t i) const { return requests_.at(i); }

 private:
  RingConfig cfg_;
  ShiftLayout layout_;
  std::vector<std::unique_ptr<mts::Solver>> solvers_;
  std::vector<std::vector<std::size_t>> requests_;
  Coloring coloring_;
  CostLedger ledger_;
  std::uint64_t initial_migration_ = 0;
  std::uint64_t step_ = 0;
};

}  // namespace ringpart
