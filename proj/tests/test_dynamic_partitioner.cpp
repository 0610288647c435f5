#include <doctest.h>

#include <vector>

#include "ringpart/dynamic_partitioner.hpp"
#include "ringpart/error.hpp"

using namespace ringpart;

namespace {

// Server of each process, found by locating its unrolled position among the cuts.
Coloring expected_mapping(const DynamicPartitioner& d) {
  const auto& L = d.layout();
  std::vector<std::size_t> u;
  for (std::size_t i = 0; i < L.ell_prime; ++i) u.push_back(L.shift + i * L.k_prime + d.cut_states()[i]);
  std::vector<ServerId> color(L.n);
  for (std::size_t p = 0; p < L.n; ++p) {
    std::size_t q = p;
    while (q <= u[0]) q += L.n;
    std::size_t server = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] < q) server = i;
    color[p] = static_cast<ServerId>(server);
  }
  return Coloring(color);
}

}  // namespace

TEST_CASE("layout arithmetic") {
  CHECK(ShiftLayout::k_prime_for({8, 2, 4, 0.5, 0}) == 6);
  CHECK(ShiftLayout::k_prime_for({4, 4, 1, 0.5, 0}) == 2);
  CHECK(ShiftLayout::k_prime_for({8, 2, 4, 1.0, 0}) == 8);
  CHECK(ShiftLayout::k_prime_for({6, 2, 4, 1.0, 0}) == 6);  // clamped to n

  const auto L = ShiftLayout::make({8, 2, 4, 0.5, 0}, 0);
  CHECK(L.k_prime == 6);
  CHECK(L.ell_prime == 2);
  CHECK(L.interval(0).start == 0);
  CHECK(L.interval(0).length == 7);
  CHECK(L.interval(1).start == 6);
  CHECK(L.interval(1).length == 7);
  CHECK(L.edge_at(1, 3) == 1);

  // edge 0 lies in both intervals, edge 4 only in the first
  auto both = L.containing(0);
  REQUIRE(both.size() == 2);
  CHECK(both[0].interval == 0);
  CHECK(both[0].state == 0);
  CHECK(both[1].interval == 1);
  CHECK(both[1].state == 2);
  auto one = L.containing(4);
  REQUIRE(one.size() == 1);
  CHECK(one[0].interval == 0);
  CHECK(one[0].state == 4);

  // every node lies in at most two intervals
  for (std::size_t shift = 0; shift < 6; ++shift) {
    const auto M = ShiftLayout::make({11, 3, 4, 0.5, 0}, shift);
    for (std::size_t e = 0; e < 11; ++e) {
      const auto c = M.containing(e);
      CHECK(c.size() >= 1);
      CHECK(c.size() <= 2);
    }
  }
}

TEST_CASE("initial placement is ledgered as step 0") {
  const RingConfig cfg{8, 2, 4, 0.5, 1};
  DynamicPartitioner d(cfg, mts::SolverKind::wfa, Coloring::blocks(8, 4), 0);
  CHECK(d.cut_edge(0) == 2);
  CHECK(d.cut_edge(1) == 0);
  CHECK(d.coloring() == Coloring({0, 1, 1, 0, 0, 0, 0, 0}));
  CHECK(d.initial_migration() == 6);
  REQUIRE(d.ledger().trace.size() == 1);
  CHECK_FALSE(d.ledger().trace[0].edge.has_value());
  CHECK(d.ledger().cost_move == 6);
  CHECK(d.proxy_costs().hit == 0);
  CHECK(d.proxy_costs().move == 0);

  const auto r = d.serve(2);
  CHECK(r.cost_hit == 1);
  const auto q = d.serve(4);
  CHECK(q.cost_hit == 0);
}

TEST_CASE("shift is drawn from the seed and stays below k'") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DynamicPartitioner d({8, 2, 4, 0.5, seed}, mts::SolverKind::smin, Coloring::blocks(8, 4));
    CHECK(d.layout().shift < 6);
    DynamicPartitioner again({8, 2, 4, 0.5, seed}, mts::SolverKind::smin, Coloring::blocks(8, 4));
    CHECK(again.layout().shift == d.layout().shift);
  }
}

TEST_CASE("single interval covers the ring") {
  DynamicPartitioner d({6, 2, 4, 0.5, 3}, mts::SolverKind::smin, Coloring::blocks(6, 4));
  CHECK(d.layout().ell_prime == 1);
  CHECK(d.coloring().max_load() == 6);
  for (std::size_t e = 0; e < 6; ++e) CHECK(d.serve(e).cost_hit == 0);
}

TEST_CASE("runs keep the mapping, load and proxy invariants") {
  for (auto kind : {mts::SolverKind::smin, mts::SolverKind::wfa}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const RingConfig cfg{40, 5, 8, 0.5, seed};
      DynamicPartitioner d(cfg, kind, Coloring::blocks(40, 8));
      Stream req(seed + 100);
      std::uint64_t hit = 0, move = 0;
      for (int t = 0; t < 2000; ++t) {
        const std::size_t e = t % 3 == 0 ? req.below(40) : (t / 50) % 40;
        const auto r = d.serve(e);
        hit += r.cost_hit;
        move += r.cost_move;
        CHECK(r.max_load <= 24);  // 2(1+eps)k, k' = 12 is integral
        CHECK(d.coloring() == expected_mapping(d));
        for (std::size_t i = 0; i < d.layout().ell_prime; ++i) CHECK(d.cut_states()[i] < d.layout().k_prime);
      }
      const auto proxy = d.proxy_costs();
      CHECK(hit <= proxy.hit);
      CHECK(move <= proxy.move);
      CHECK(d.ledger().consistent());
    }
  }
}

TEST_CASE("edge out of range") {
  DynamicPartitioner d({8, 2, 4, 0.5, 0}, mts::SolverKind::smin, Coloring::blocks(8, 4));
  try {
    d.serve(8);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::instance);
  }
  CHECK_THROWS_AS(DynamicPartitioner({8, 2, 4, 0.5, 0}, mts::SolverKind::smin, Coloring::blocks(7, 4)), Error);
}
