#include "ringpart/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "ringpart/error.hpp"
#include "ringpart/hitting_game.hpp"

namespace ringpart::oracles {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;
constexpr std::size_t kStateGuard = 10'000'000;
constexpr double kDpGuard = 1e8;
constexpr double kScheduleGuard = 1e7;

void check_instance(const RingConfig& cfg, const Coloring& initial, std::span<const std::size_t> requests) {
  cfg.validate();
  require(initial.size() == cfg.n, Errc::instance, "initial coloring length differs from n");
  for (std::size_t p = 0; p < cfg.n; ++p)
    require(initial[p] >= 0 && static_cast<std::size_t>(initial[p]) < cfg.ell, Errc::instance,
            "initial coloring uses an unknown server");
  for (std::size_t e : requests)
    require(e < cfg.n, Errc::instance, "request edge " + std::to_string(e) + " out of range");
}

std::vector<std::uint64_t> edge_counts(std::size_t n, std::span<const std::size_t> requests) {
  std::vector<std::uint64_t> counts(n, 0);
  for (std::size_t e : requests) ++counts[e];
  return counts;
}

}  // namespace

Coloring canonicalize(const Coloring& c) {
  std::vector<ServerId> out(c.size());
  std::vector<std::pair<ServerId, ServerId>> seen;
  for (std::size_t p = 0; p < c.size(); ++p) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == c[p]; });
    if (it == seen.end()) {
      seen.emplace_back(c[p], static_cast<ServerId>(seen.size()));
      out[p] = seen.back().second;
    } else {
      out[p] = it->second;
    }
  }
  return Coloring(std::move(out));
}

void for_each_canonical(std::size_t n, std::size_t ell, std::size_t k, std::size_t guard,
                        const std::function<void(const Coloring&)>& visit) {
  require(n <= ell * k, Errc::parameter, "n exceeds total capacity");
  Coloring cur(std::vector<ServerId>(n, 0));
  std::vector<std::size_t> load(ell, 0);
  std::size_t produced = 0;

  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t p, std::size_t used) {
    if (p == n) {
      if (++produced > guard)
        fail(Errc::size, "more than " + std::to_string(guard) + " canonical colorings (n=" + std::to_string(n) +
                             ", ell=" + std::to_string(ell) + ", k=" + std::to_string(k) + ")");
      visit(cur);
      return;
    }
    for (std::size_t s = 0; s < std::min(used + 1, ell); ++s) {
      if (load[s] == k) continue;
      ++load[s];
      cur[p] = static_cast<ServerId>(s);
      rec(p + 1, std::max(used, s + 1));
      --load[s];
    }
  };
  rec(0, 0);
}

std::vector<Coloring> canonical_states(std::size_t n, std::size_t ell, std::size_t k, std::size_t guard) {
  std::vector<Coloring> states;
  for_each_canonical(n, ell, k, guard, [&](const Coloring& c) { states.push_back(c); });
  return states;
}

std::size_t relabeled_migration(const Coloring& from, const Coloring& to, std::size_t ell) {
  require(from.size() == to.size(), Errc::instance, "colorings of different length");
  ServerId blocks = 0;
  for (std::size_t p = 0; p < to.size(); ++p) blocks = std::max(blocks, to[p] + 1);
  require(static_cast<std::size_t>(blocks) <= ell, Errc::instance, "coloring uses more servers than exist");

  // overlap[b][s]: processes of block b already on server s
  std::vector<std::vector<std::size_t>> overlap(static_cast<std::size_t>(blocks), std::vector<std::size_t>(ell, 0));
  for (std::size_t p = 0; p < from.size(); ++p) {
    require(from[p] >= 0 && static_cast<std::size_t>(from[p]) < ell, Errc::instance, "server id out of range");
    ++overlap[static_cast<std::size_t>(to[p])][static_cast<std::size_t>(from[p])];
  }

  std::size_t best = 0;
  std::vector<bool> taken(ell, false);
  std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t b, std::size_t kept) {
    if (b == overlap.size()) {
      best = std::max(best, kept);
      return;
    }
    for (std::size_t s = 0; s < ell; ++s) {
      if (taken[s]) continue;
      taken[s] = true;
      assign(b + 1, kept + overlap[b][s]);
      taken[s] = false;
    }
  };
  assign(0, 0);
  return from.size() - best;
}

std::uint64_t static_opt_ring(const RingConfig& cfg, const Coloring& initial, std::span<const std::size_t> requests) {
  check_instance(cfg, initial, requests);
  const auto counts = edge_counts(cfg.n, requests);
  std::uint64_t best = kInf;
  for_each_canonical(cfg.n, cfg.ell, cfg.k, kStateGuard, [&](const Coloring& chi) {
    std::uint64_t cost = 0;
    for (std::size_t e = 0; e < cfg.n && cost < best; ++e)
      if (counts[e] && serve_request(chi, EdgeId{e})) cost += counts[e];
    if (cost < best) cost += relabeled_migration(initial, chi, cfg.ell);
    best = std::min(best, cost);
  });
  return best;
}

std::uint64_t dynamic_opt_ring(const RingConfig& cfg, const Coloring& initial, std::span<const std::size_t> requests) {
  check_instance(cfg, initial, requests);
  // N*|states|^2 <= 1e8 caps the state count before enumeration finishes
  const double steps = static_cast<double>(std::max<std::size_t>(requests.size(), 1));
  const auto cap = static_cast<std::size_t>(std::min<double>(kStateGuard, std::sqrt(kDpGuard / steps)));
  std::vector<Coloring> states;
  try {
    states = canonical_states(cfg.n, cfg.ell, cfg.k, cap);
  } catch (const Error& e) {
    if (e.code() != Errc::size) throw;
    fail(Errc::size, std::string("dynamic oracle guard N*|states|^2 <= 1e8 exceeded: ") + e.what());
  }
  const std::size_t S = states.size();
  const double work = static_cast<double>(std::max<std::size_t>(requests.size(), 1)) * static_cast<double>(S) *
                      static_cast<double>(S);
  if (work > kDpGuard)
    fail(Errc::size, "dynamic oracle needs N*|states|^2 = " + std::to_string(static_cast<long long>(work)) +
                         " > 1e8");

  std::vector<std::uint32_t> move(S * S, 0);
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = i + 1; j < S; ++j) {
      const auto d = static_cast<std::uint32_t>(relabeled_migration(states[i], states[j], cfg.ell));
      move[i * S + j] = d;
      move[j * S + i] = d;
    }

  // cut[e] lists the states that separate edge e
  std::vector<std::vector<std::uint8_t>> cut(cfg.n, std::vector<std::uint8_t>(S, 0));
  for (std::size_t j = 0; j < S; ++j)
    for (std::size_t e = 0; e < cfg.n; ++e) cut[e][j] = static_cast<std::uint8_t>(serve_request(states[j], EdgeId{e}));

  std::vector<std::uint64_t> f(S), g(S);
  for (std::size_t j = 0; j < S; ++j) f[j] = relabeled_migration(initial, states[j], cfg.ell);
  for (std::size_t e : requests) {
    for (std::size_t j = 0; j < S; ++j) {
      std::uint64_t best = kInf;
      for (std::size_t i = 0; i < S; ++i) best = std::min(best, f[i] + move[i * S + j]);
      g[j] = best + cut[e][j];
    }
    f.swap(g);
  }
  return *std::min_element(f.begin(), f.end());
}

std::uint64_t dynamic_opt_exhaustive(const RingConfig& cfg, const Coloring& initial,
                                     std::span<const std::size_t> requests) {
  check_instance(cfg, initial, requests);
  require(cfg.n <= 4 && requests.size() <= 4, Errc::size, "exhaustive search is limited to n <= 4, N <= 4");

  std::vector<Coloring> labeled;
  std::vector<ServerId> cur(cfg.n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == cfg.n) {
      Coloring c(cur);
      if (c.max_load() <= cfg.k) labeled.push_back(std::move(c));
      return;
    }
    for (std::size_t s = 0; s < cfg.ell; ++s) {
      cur[p] = static_cast<ServerId>(s);
      rec(p + 1);
    }
  };
  rec(0);
  if (requests.empty()) return 0;
  if (std::pow(static_cast<double>(labeled.size()), static_cast<double>(requests.size())) > kScheduleGuard)
    fail(Errc::size, "too many migration schedules to enumerate");

  std::uint64_t best = kInf;
  std::function<void(std::size_t, const Coloring&, std::uint64_t)> walk = [&](std::size_t t, const Coloring& prev,
                                                                             std::uint64_t paid) {
    if (paid >= best) return;
    if (t == requests.size()) {
      best = paid;
      return;
    }
    for (const auto& chi : labeled)
      walk(t + 1, chi, paid + migration_cost(prev, chi) + static_cast<std::uint64_t>(serve_request(chi, EdgeId{requests[t]})));
  };
  walk(0, initial, 0);
  return best;
}

// ---------------------------------------------------------------------------

StayPut::StayPut(std::size_t k) : k_(k), start_((k + 1) / 2) {
  require(k >= 1, Errc::parameter, "line strategy needs k >= 1");
}

MtsLineStrategy::MtsLineStrategy(std::size_t k, mts::SolverKind kind, Stream rng) : k_(k), start_((k + 1) / 2) {
  require(k >= 1, Errc::parameter, "line strategy needs k >= 1");
  solver_ = mts::make_solver(kind, mts::LineProblem{k, start_ - 1}, rng);
}

std::uint64_t MtsLineStrategy::serve(std::size_t edge) {
  require(edge >= 1 && edge <= k_, Errc::instance, "edge outside the line");
  const auto r = solver_->serve(mts::unit_task(k_, edge - 1));
  return static_cast<std::uint64_t>(std::llround(r.cost));
}

AdversaryRun adversary_stay(LineStrategy& strategy, std::size_t T) {
  require(strategy.deterministic(), Errc::contract, "the adversary needs a deterministic strategy");
  const std::size_t k = strategy.k();
  require(T >= k * k, Errc::parameter, "the adversary needs T >= k^2");
  AdversaryRun run;
  run.requests.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t e = strategy.position();
    run.requests.push_back(e);
    run.strategy_cost += strategy.serve(e);
  }
  run.opt = hitting::static_opt(k, strategy.start(), run.requests);
  run.ratio = run.opt == 0 ? std::numeric_limits<double>::infinity()
                           : static_cast<double>(run.strategy_cost) / static_cast<double>(run.opt);
  run.bound_holds = 2 * run.strategy_cost >= k * run.opt;
  return run;
}

}  // namespace ringpart::oracles
