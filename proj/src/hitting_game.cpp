#include "ringpart/hitting_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringpart/error.hpp"
#include "ringpart/smin.hpp"

namespace ringpart::hitting {

double delta_bar_for(double epsilon) { return std::max(2.0 / (2.0 + epsilon), 14.0 / 15.0); }

bool growth_due(std::uint64_t min_count, std::size_t nodes, double delta_bar) {
  return static_cast<double>(min_count) + 1e-9 >= (1.0 - delta_bar) * static_cast<double>(nodes);
}

std::size_t sample(std::span<const double> p, Stream& rng) {
  require(!p.empty(), Errc::instance, "sample from an empty distribution");
  double u = rng.uniform01();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (u < p[i]) return i;
    u -= p[i];
  }
  // rounding left a sliver of mass; return the last index with positive weight
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] > 0.0) return i;
  return p.size() - 1;
}

std::size_t couple(std::span<const double> p_old, std::span<const double> p_new,
                   std::size_t position, Stream& rng) {
  require(p_old.size() == p_new.size(), Errc::instance, "coupling between supports of different size");
  require(position < p_old.size(), Errc::instance, "position outside the support");
  const double here = p_old[position];
  if (here > 0.0) {
    const double stay = std::min(p_new[position], here) / here;
    if (stay >= 1.0 || rng.uniform01() < stay) return position;
  }
  std::vector<double> surplus(p_new.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < p_new.size(); ++i) {
    surplus[i] = std::max(0.0, p_new[i] - p_old[i]);
    mass += surplus[i];
  }
  if (mass <= 0.0) return position;
  for (double& v : surplus) v /= mass;
  return sample(surplus, rng);
}

HittingGame::HittingGame(std::size_t k, double delta_bar, Stream rng)
    : k_(k), delta_bar_(delta_bar), rng_(rng) {
  require(k >= 1, Errc::parameter, "hitting game needs k >= 1");
  require(delta_bar >= 14.0 / 15.0 - 1e-12 && delta_bar < 1.0, Errc::parameter,
          "delta_bar must lie in [14/15, 1)");
  start_ = (k + 1) / 2;
  lo_ = start_;
  hi_ = start_ + 1;
  position_ = start_;
  x_.assign(k + 1, 0);
}

std::uint64_t HittingGame::min_count() const {
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t e = lo_; e < hi_; ++e) lo = std::min(lo, x_[e]);
  return lo;
}

std::vector<double> HittingGame::distribution() const {
  std::vector<double> xs;
  xs.reserve(hi_ - lo_);
  for (std::size_t e = lo_; e < hi_; ++e) xs.push_back(static_cast<double>(x_[e]));
  return smin::grad_smin_c(xs, static_cast<double>(nodes() - 1));
}

LineStep HittingGame::request(std::size_t e) {
  require(e >= 1 && e <= k_, Errc::instance, "edge outside the line");
  LineStep step;
  if (!contains(e)) {
    ++x_[e];
    return step;
  }
  step.hit = position_ == e ? 1 : 0;
  const auto before = distribution();
  ++x_[e];
  const auto after = distribution();
  const std::size_t next = lo_ + couple(before, after, position_ - lo_, rng_);
  step.move = next > position_ ? next - position_ : position_ - next;
  position_ = next;
  cost_hit_ += static_cast<std::uint64_t>(step.hit);
  cost_move_ += step.move;

  // Growing never lowers the minimum below the new threshold by more than a
  // factor two, so with delta_bar >= 14/15 this runs at most once; the loop
  // covers the general case.
  while (!is_final() && growth_due(min_count(), nodes(), delta_bar_)) {
    step.move += grow();
    ++step.growths;
  }
  return step;
}

std::size_t HittingGame::grow() {
  if (is_final()) return 0;
  const std::size_t len = nodes();
  const auto before = distribution();
  std::size_t lo, hi;
  if (2 * len <= k_ + 1) {
    lo = lo_ - std::min(lo_ - 1, len / 2);
    hi = hi_ + len / 2;
  } else {
    const std::size_t pad = (k_ + 1 - len + 1) / 2;
    lo = lo_ > pad ? lo_ - pad : 1;
    hi = hi_ + pad;
  }
  lo = std::max<std::size_t>(lo, 1);
  hi = std::min(hi, k_ + 1);

  std::vector<double> widened(hi - lo, 0.0);
  for (std::size_t i = 0; i < before.size(); ++i) widened[lo_ - lo + i] = before[i];
  lo_ = lo;
  hi_ = hi;
  ++phase_;
  const auto after = distribution();
  const std::size_t next = lo_ + couple(widened, after, position_ - lo_, rng_);
  const std::size_t move = next > position_ ? next - position_ : position_ - next;
  position_ = next;
  cost_move_ += move;
  return move;
}

std::uint64_t static_opt_counts(std::size_t s, std::span<const std::uint64_t> counts) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t p = 1; p < counts.size(); ++p) {
    const std::uint64_t dist = p > s ? p - s : s - p;
    best = std::min(best, dist + counts[p]);
  }
  return counts.size() <= 1 ? 0 : best;
}

std::uint64_t static_opt(std::size_t k, std::size_t s, std::span<const std::size_t> requests) {
  std::vector<std::uint64_t> counts(k + 1, 0);
  for (std::size_t e : requests) {
    require(e >= 1 && e <= k, Errc::instance, "request outside the line");
    ++counts[e];
  }
  return static_opt_counts(s, counts);
}

}  // namespace ringpart::hitting
