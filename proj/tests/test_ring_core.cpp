#include <doctest.h>

#include "ringpart/error.hpp"
#include "ringpart/ring_core.hpp"
#include "ringpart/rng.hpp"

using namespace ringpart;

namespace {
constexpr ServerId A = 0, B = 1;
}

TEST_CASE("serve_request charges edges whose endpoints differ") {
  const Coloring c({A, A, B, B});
  CHECK(serve_request(c, EdgeId{1}) == 1);
  CHECK(serve_request(c, EdgeId{0}) == 0);
  CHECK(serve_request(c, EdgeId{3}) == 1);  // wraps to process 0
  CHECK(serve_request(c, EdgeId{2}) == 0);
  CHECK_THROWS_AS(serve_request(c, EdgeId{4}), Error);
}

TEST_CASE("migration_cost counts differing positions") {
  const Coloring c({A, A, B, B});
  CHECK(migration_cost(c, c) == 0);
  CHECK(migration_cost(c, Coloring({B, A, B, A})) == 2);
  CHECK(migration_cost(c, Coloring({B, B, A, A})) == 4);
  try {
    migration_cost(c, Coloring({A, A, B}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::instance);
  }
}

TEST_CASE("check_load") {
  CHECK(check_load(Coloring({A, A, B, B}), 4.0).pass);
  const auto r = check_load(Coloring({A, A, A, B}), 2.0);
  CHECK_FALSE(r.pass);
  CHECK(r.max_load == 3);
  REQUIRE(r.violating.size() == 1);
  CHECK(r.violating[0] == A);
  CHECK(check_load(Coloring(), 1.0).pass);
}

TEST_CASE("zero migration iff equal colorings; serve is symmetric on the ring") {
  Stream rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(10);
    std::vector<ServerId> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<ServerId>(rng.below(3));
      b[i] = static_cast<ServerId>(rng.below(3));
    }
    const Coloring ca(a), cb(b);
    CHECK((migration_cost(ca, cb) == 0) == (ca == cb));
    for (std::size_t e = 0; e < n; ++e) {
      // reversing the ring maps edge e to edge n-2-e (mod n)
      std::vector<ServerId> rev(a.rbegin(), a.rend());
      CHECK(serve_request(ca, EdgeId{e}) == serve_request(Coloring(rev), EdgeId{(2 * n - 2 - e) % n}));
    }
  }
}

TEST_CASE("RingConfig validation") {
  CHECK_NOTHROW(RingConfig{8, 2, 4, 0.5, 0}.validate());
  CHECK_NOTHROW(RingConfig{7, 2, 4, 0.5, 0}.validate());
  CHECK_THROWS_AS((RingConfig{9, 2, 4, 0.5, 0}.validate()), Error);
  CHECK_THROWS_AS((RingConfig{4, 1, 4, 0.5, 0}.validate()), Error);
  CHECK_THROWS_AS((RingConfig{4, 2, 0, 0.5, 0}.validate()), Error);
  CHECK_THROWS_AS((RingConfig{4, 2, 2, 0.0, 0}.validate()), Error);
}

TEST_CASE("Arc arithmetic wraps modulo n") {
  const Arc a{6, 4};  // 6,7,0,1 on n=8
  CHECK(a.at(0, 8) == 6);
  CHECK(a.at(3, 8) == 1);
  CHECK(a.contains(7, 8));
  CHECK(a.contains(1, 8));
  CHECK_FALSE(a.contains(2, 8));
  CHECK(a.contains(Arc{7, 2}, 8));
  CHECK(a.contains(Arc{0, 2}, 8));
  CHECK_FALSE(a.contains(Arc{1, 2}, 8));
  CHECK_FALSE(a.contains(Arc{5, 2}, 8));
  CHECK(Arc{3, 8}.contains(Arc{0, 5}, 8));
}

TEST_CASE("Coloring helpers") {
  const auto c = Coloring::blocks(7, 3);
  CHECK(c == Coloring({0, 0, 0, 1, 1, 1, 2}));
  CHECK(c.loads(3) == std::vector<std::size_t>{3, 3, 1});
  CHECK(c.max_load() == 3);
  CHECK(c.load(2) == 1);
}

TEST_CASE("CostLedger sums its trace") {
  CostLedger ledger;
  StepRecord a;
  a.step = 1;
  a.cost_hit = 1;
  a.cost_move = 2;
  StepRecord b;
  b.step = 2;
  b.cost_merge = 3;
  b.cost_mono = 4;
  b.cost_bal = 5;
  ledger.record(a);
  ledger.record(b);
  CHECK(ledger.total() == 15);
  CHECK(b.total() == 12);
  CHECK(ledger.consistent());
  ledger.cost_bal += 1;
  CHECK_FALSE(ledger.consistent());
}

TEST_CASE("Stream is reproducible and children are independent") {
  Stream a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  CHECK(Stream(42).child("x")() != Stream(42).child("y")());
  CHECK(Stream(42).child(1)() != Stream(42).child(2)());
  Stream c(3);
  for (int i = 0; i < 1000; ++i) {
    CHECK(c.below(7) < 7);
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
