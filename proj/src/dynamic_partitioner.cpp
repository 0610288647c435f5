#include "ringpart/dynamic_partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringpart/error.hpp"

namespace ringpart {

std::size_t ShiftLayout::k_prime_for(const RingConfig& cfg) {
  const double raw = std::ceil((1.0 + cfg.epsilon) * static_cast<double>(cfg.k) - 1e-9);
  return std::min(static_cast<std::size_t>(raw), cfg.n);
}

ShiftLayout ShiftLayout::make(const RingConfig& cfg, std::size_t shift) {
  ShiftLayout l;
  l.n = cfg.n;
  l.k_prime = k_prime_for(cfg);
  require(l.k_prime >= 1, Errc::parameter, "ring too small for an interval");
  require(shift < l.k_prime, Errc::parameter, "shift must lie in [0, k')");
  l.ell_prime = (cfg.n + l.k_prime - 1) / l.k_prime;
  l.shift = shift;
  return l;
}

std::vector<ShiftLayout::Slot> ShiftLayout::containing(std::size_t edge) const {
  std::vector<Slot> out;
  const std::size_t off = (edge + n - shift) % n;
  if (off / k_prime < ell_prime) out.push_back({off / k_prime, off % k_prime});
  // the last interval may run past R + n and reach the edge a second time
  const std::size_t last = (ell_prime - 1) * k_prime;
  const std::size_t wrapped = off + n;
  if (wrapped >= last && wrapped < last + k_prime) out.push_back({ell_prime - 1, wrapped - last});
  return out;
}

DynamicPartitioner::DynamicPartitioner(const RingConfig& cfg, mts::SolverKind solver,
                                       const Coloring& initial)
    : DynamicPartitioner(cfg, solver, initial,
                         Stream(cfg.seed).child("shift").below(ShiftLayout::k_prime_for(cfg))) {}

DynamicPartitioner::DynamicPartitioner(const RingConfig& cfg, mts::SolverKind solver,
                                       const Coloring& initial, std::size_t shift)
    : cfg_(cfg) {
  cfg_.validate();
  require(cfg_.n >= 2, Errc::parameter, "dynamic partitioner needs n >= 2");
  require(initial.size() == cfg_.n, Errc::instance, "initial coloring length differs from n");
  layout_ = ShiftLayout::make(cfg_, shift);

  const Stream root(cfg_.seed);
  const mts::LineProblem problem{layout_.k_prime, (layout_.k_prime - 1) / 2};
  for (std::size_t i = 0; i < layout_.ell_prime; ++i)
    solvers_.push_back(mts::make_solver(solver, problem, root.child("interval").child(i)));
  requests_.resize(layout_.ell_prime);

  coloring_ = map_servers();
  initial_migration_ = migration_cost(initial, coloring_);
  StepRecord rec;
  rec.step = 0;
  rec.algorithm = "dynamic";
  rec.cost_move = initial_migration_;
  rec.max_load = coloring_.max_load();
  rec.proxy_hit = 0;
  rec.proxy_move = 0;
  ledger_.record(std::move(rec));
}

double DynamicPartitioner::load_bound() const {
  return 2.0 * (1.0 + cfg_.epsilon) * static_cast<double>(cfg_.k);
}

double DynamicPartitioner::guaranteed_load_bound() const {
  return std::max(load_bound(), 2.0 * static_cast<double>(layout_.k_prime) - 1.0);
}

std::vector<std::size_t> DynamicPartitioner::cut_states() const {
  std::vector<std::size_t> out;
  for (const auto& s : solvers_) out.push_back(s->state());
  return out;
}

std::size_t DynamicPartitioner::cut_edge(std::size_t interval) const {
  return layout_.edge_at(interval, solvers_.at(interval)->state());
}

Coloring DynamicPartitioner::map_servers() const {
  const std::size_t n = layout_.n;
  const std::size_t parts = layout_.ell_prime;
  // unrolled cut positions are strictly increasing
  std::vector<std::size_t> u(parts + 1);
  for (std::size_t i = 0; i < parts; ++i) u[i] = layout_.shift + i * layout_.k_prime + solvers_[i]->state();
  u[parts] = u[0] + n;

  std::vector<ServerId> color(n, 0);
  for (std::size_t i = 0; i < parts; ++i) {
    const std::size_t hi = std::min(u[i + 1], u[0] + n);
    for (std::size_t p = u[i] + 1; p <= hi; ++p) color[p % n] = static_cast<ServerId>(i);
  }
  return Coloring(std::move(color));
}

DynamicPartitioner::Proxy DynamicPartitioner::proxy_costs() const {
  Proxy p;
  for (const auto& [id, c] : ledger_.per_interval) {
    p.hit += c.hit;
    p.move += c.move;
  }
  return p;
}

StepRecord DynamicPartitioner::serve(std::size_t edge) {
  require(edge < cfg_.n, Errc::instance, "edge " + std::to_string(edge) + " out of range");
  StepRecord rec;
  rec.step = ++step_;
  rec.edge = edge;
  rec.algorithm = "dynamic";
  rec.cost_hit = static_cast<std::uint64_t>(serve_request(coloring_, EdgeId{edge}));

  std::uint64_t proxy_hit = 0, proxy_move = 0;
  for (const auto& slot : layout_.containing(edge)) {
    auto& solver = *solvers_[slot.interval];
    auto& cost = ledger_.per_interval[static_cast<IntervalId>(slot.interval)];
    const std::uint64_t hit = solver.state() == slot.state ? 1 : 0;
    const auto result = solver.serve(mts::unit_task(layout_.k_prime, slot.state));
    requests_[slot.interval].push_back(slot.state);
    cost.hit += hit;
    cost.move += result.move;
    proxy_hit += hit;
    proxy_move += result.move;
  }

  Coloring next = map_servers();
  rec.cost_move = migration_cost(coloring_, next);
  coloring_ = std::move(next);
  rec.max_load = coloring_.max_load();
  rec.proxy_hit = proxy_hit;
  rec.proxy_move = proxy_move;

  require(static_cast<double>(rec.max_load) <= guaranteed_load_bound() + 1e-9, Errc::invariant,
          "dynamic partitioner exceeded its load bound at step " + std::to_string(rec.step));
  ledger_.record(rec);
  return rec;
}

}  // namespace ringpart
