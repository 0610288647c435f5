#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ringpart/rng.hpp"

namespace ringpart::hitting {

/// max{2/(2+eps), 14/15}
double delta_bar_for(double epsilon);

/// Growth test shared by the line game and the ring intervals: the smallest
/// request count inside an interval of `nodes` nodes has reached (1-delta_bar)*nodes.
bool growth_due(std::uint64_t min_count, std::size_t nodes, double delta_bar);

/// Maximal coupling between two distributions on the same support.
///
/// `position` must be distributed as p_old; the result is distributed as
/// p_new and differs from `position` with probability TV(p_old, p_new).
/// Throws Errc::instance on length mismatch or out-of-range position.
std::size_t couple(std::span<const double> p_old, std::span<const double> p_new,
                   std::size_t position, Stream& rng);

/// Samples an index from a probability vector.
std::size_t sample(std::span<const double> p, Stream& rng);

struct LineStep {
  int hit = 0;
  std::size_t move = 0;
  int growths = 0;
};

/// Interval growing algorithm on a line of k edges e_1..e_k (nodes v_1..v_{k+1}).
class HittingGame {
 public:
  /// Throws Errc::parameter unless k >= 1 and 14/15 <= delta_bar < 1.
  HittingGame(std::size_t k, double delta_bar, Stream rng);

  /// Serves a request to edge e (1-based). Hit cost is realized against the
  /// position held when the request arrives.
  LineStep request(std::size_t e);

  /// Widens the interval by the doubling rule (capped at the full line) and
  /// couples the position into it. Returns the move distance; a final
  /// interval is left unchanged and reports 0.
  std::size_t grow();

  std::size_t k() const noexcept { return k_; }
  std::size_t start_edge() const noexcept { return start_; }
  std::size_t left() const noexcept { return lo_; }
  std::size_t right() const noexcept { return hi_; }
  std::size_t nodes() const noexcept { return hi_ - lo_ + 1; }
  std::size_t position() const noexcept { return position_; }
  std::size_t phase() const noexcept { return phase_; }
  double delta_bar() const noexcept { return delta_bar_; }
  bool is_initial() const noexcept { return nodes() == 2 && phase_ == 0; }
  bool is_final() const noexcept { return nodes() == k_ + 1; }
  bool contains(std::size_t e) const noexcept { return e >= lo_ && e < hi_; }

  /// Request counts x_e indexed by edge (entry 0 unused).
  std::span<const std::uint64_t> counts() const noexcept { return x_; }
  std::uint64_t min_count() const;
  /// Position law over the interval's edges, left to right.
  std::vector<double> distribution() const;

  std::uint64_t cost_hit() const noexcept { return cost_hit_; }
  std::uint64_t cost_move() const noexcept { return cost_move_; }
  std::uint64_t total() const noexcept { return cost_hit_ + cost_move_; }

 private:
  std::size_t k_;
  double delta_bar_;
  Stream rng_;
  std::size_t start_;
  std::size_t lo_, hi_;
  std::size_t position_;
  std::size_t phase_ = 0;
  std::vector<std::uint64_t> x_;
  std::uint64_t cost_hit_ = 0;
  std::uint64_t cost_move_ = 0;
};

/// Best fixed position: min over p of |s - p| + x_p. Edges are 1-based.
std::uint64_t static_opt(std::size_t k, std::size_t s, std::span<const std::size_t> requests);
std::uint64_t static_opt_counts(std::size_t s, std::span<const std::uint64_t> counts);

}  // namespace ringpart::hitting
