#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ringpart/mts_line.hpp"
#include "ringpart/ring_core.hpp"

namespace ringpart::oracles {

/// Renames servers in order of first occurrence (0, 1, 2, ...).
Coloring canonicalize(const Coloring& c);

/// Every capacity-feasible coloring of n processes on ell servers of capacity
/// k, one per renaming class, in canonical form. Throws Errc::size once more
/// than `guard` states are produced.
/// Calls `visit` on each canonical feasible coloring without storing them.
void for_each_canonical(std::size_t n, std::size_t ell, std::size_t k, std::size_t guard,
                        const std::function<void(const Coloring&)>& visit);

std::vector<Coloring> canonical_states(std::size_t n, std::size_t ell, std::size_t k,
                                       std::size_t guard = 10'000'000);

/// Cheapest migration from `from` into any renaming of `to`.
std::size_t relabeled_migration(const Coloring& from, const Coloring& to, std::size_t ell);

/// Best coloring fixed before the first request: min over feasible chi of
/// migration(initial, chi) + sum of serve costs. Throws Errc::size past the guard.
std::uint64_t static_opt_ring(const RingConfig& cfg, const Coloring& initial,
                              std::span<const std::size_t> requests);

/// Offline optimum that may migrate before every request, as a shortest
/// path over the time-expanded graph of canonical states. Throws Errc::size
/// when the state count or N*|states|^2 exceeds its guard.
std::uint64_t dynamic_opt_ring(const RingConfig& cfg, const Coloring& initial,
                               std::span<const std::size_t> requests);

/// Literal search over every schedule of labeled feasible colorings. Only
/// for n <= 4, N <= 4 (Errc::size otherwise); used to cross-check the DP.
std::uint64_t dynamic_opt_exhaustive(const RingConfig& cfg, const Coloring& initial,
                                     std::span<const std::size_t> requests);

// ---------------------------------------------------------------------------
// Hitting-game adversary

/// Online strategy for the hitting game on a line of k edges (1-based).
class LineStrategy {
 public:
  virtual ~LineStrategy() = default;
  virtual std::size_t k() const = 0;
  virtual std::size_t start() const = 0;
  virtual std::size_t position() const = 0;
  /// Serves a request and returns the cost paid for it (moves plus hit).
  virtual std::uint64_t serve(std::size_t edge) = 0;
  virtual bool deterministic() const = 0;
};

/// Never leaves the start edge ceil(k/2).
class StayPut final : public LineStrategy {
 public:
  explicit StayPut(std::size_t k);
  std::size_t k() const override { return k_; }
  std::size_t start() const override { return start_; }
  std::size_t position() const override { return start_; }
  std::uint64_t serve(std::size_t edge) override { return edge == start_ ? 1 : 0; }
  bool deterministic() const override { return true; }

 private:
  std::size_t k_;
  std::size_t start_;
};

/// An MTS solver over k states, state i standing for edge i+1.
class MtsLineStrategy final : public LineStrategy {
 public:
  MtsLineStrategy(std::size_t k, mts::SolverKind kind, Stream rng = Stream());
  std::size_t k() const override { return k_; }
  std::size_t start() const override { return start_; }
  std::size_t position() const override { return solver_->state() + 1; }
  std::uint64_t serve(std::size_t edge) override;
  bool deterministic() const override { return solver_->deterministic(); }

 private:
  std::size_t k_;
  std::size_t start_;
  std::unique_ptr<mts::Solver> solver_;
};

struct AdversaryRun {
  std::vector<std::size_t> requests;  // 1-based edges
  std::uint64_t strategy_cost = 0;
  std::uint64_t opt = 0;
  double ratio = 0.0;
  /// 2 * strategy_cost >= k * opt, in integers
  bool bound_holds = false;
};

/// Requests the strategy's current position T times and compares its cost
/// with the best fixed position. Throws Errc::contract for a randomized
/// strategy and Errc::parameter if T < k^2.
AdversaryRun adversary_stay(LineStrategy& strategy, std::size_t T);

}  // namespace ringpart::oracles
