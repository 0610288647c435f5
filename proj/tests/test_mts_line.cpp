#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ringpart/error.hpp"
#include "ringpart/mts_line.hpp"

using namespace ringpart;
using namespace ringpart::mts;
using doctest::Approx;

namespace {

double brute_force(const LineProblem& p, const std::vector<std::vector<double>>& tasks) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t t, std::size_t at, double paid) {
    if (t == tasks.size()) {
      best = std::min(best, paid);
      return;
    }
    for (std::size_t s = 0; s < p.m; ++s)
      walk(t + 1, s, paid + std::abs(double(s) - double(at)) + tasks[t][s]);
  };
  walk(0, p.start, 0.0);
  return best;
}

}  // namespace

TEST_CASE("single state never moves") {
  WorkFunctionSolver wfa({1, 0});
  SminSolver sm({1, 0}, Stream(1));
  for (int i = 0; i < 5; ++i) {
    CHECK(wfa.serve(std::vector<double>{1.0}).cost == 1.0);
    CHECK(sm.serve(std::vector<double>{1.0}).cost == 1.0);
    CHECK(wfa.state() == 0);
    CHECK(sm.state() == 0);
  }
  CHECK(sm.deterministic());
}

TEST_CASE("zero tasks cost nothing") {
  WorkFunctionSolver wfa({5, 2});
  SminSolver sm({5, 2}, Stream(3));
  const std::vector<double> zero(5, 0.0);
  for (int i = 0; i < 10; ++i) CHECK(wfa.serve(zero).cost == 0.0);
  CHECK(wfa.state() == 2);
  // the first step spreads the point mass at the start onto the uniform law
  sm.serve(zero);
  const std::size_t settled = sm.state();
  for (int i = 0; i < 10; ++i) CHECK(sm.serve(zero).cost == 0.0);
  CHECK(sm.state() == settled);
}

TEST_CASE("work function trajectory on two states") {
  WorkFunctionSolver wfa({2, 0});
  const std::vector<double> t{1.0, 0.0};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) total += wfa.serve(t).cost;
  CHECK(total <= 3.0);
  CHECK(total >= 1.0);
  CHECK(wfa.state() == 1);
  CHECK(wfa.deterministic());
}

TEST_CASE("repeated requests to the current state force a work-function move") {
  WorkFunctionSolver wfa({6, 2});
  std::size_t moves = 0;
  for (int i = 0; i < 20; ++i) moves += wfa.serve(unit_task(6, wfa.state())).move;
  CHECK(moves > 0);
}

TEST_CASE("length mismatch is an instance error") {
  WorkFunctionSolver wfa({3, 0});
  try {
    wfa.serve(std::vector<double>{1.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::instance);
  }
  SminSolver sm({3, 0}, Stream(1));
  CHECK_THROWS_AS(sm.serve(std::vector<double>{1.0, 0.0}), Error);
  CHECK_THROWS_AS(WorkFunctionSolver({0, 0}), Error);
  CHECK_THROWS_AS(WorkFunctionSolver({3, 3}), Error);
}

TEST_CASE("smin solver law") {
  SminSolver sm({4, 1}, Stream(1));
  for (double v : sm.distribution()) CHECK(v == Approx(0.25));
  CHECK_FALSE(sm.deterministic());
  SminSolver two({2, 0}, Stream(1));
  const double x = 2.0 * std::log(2.0);
  two.serve(std::vector<double>{x, 0.0});
  const auto p = two.distribution();
  CHECK(p[0] == Approx(1.0 / 3.0));
  CHECK(p[1] == Approx(2.0 / 3.0));
}

TEST_CASE("smin solver marginal follows its law") {
  constexpr int runs = 20000;
  std::vector<int> hist(3, 0);
  for (int r = 0; r < runs; ++r) {
    SminSolver sm({3, 1}, Stream(1000 + r));
    sm.serve(unit_task(3, 1));
    sm.serve(unit_task(3, 0));
    sm.serve(unit_task(3, 1));
    ++hist[sm.state()];
  }
  SminSolver ref({3, 1}, Stream(0));
  ref.serve(unit_task(3, 1));
  ref.serve(unit_task(3, 0));
  ref.serve(unit_task(3, 1));
  const auto p = ref.distribution();
  for (int s = 0; s < 3; ++s) CHECK(std::abs(hist[s] / double(runs) - p[s]) < 0.015);
}

TEST_CASE("offline optimum") {
  CHECK(offline_opt({3, 1}, {}) == 0.0);
  CHECK(offline_opt_unit({2, 0}, std::vector<std::size_t>{0, 0, 0}) == 1);
  std::vector<std::size_t> alt;
  for (int i = 0; i < 10; ++i) alt.push_back(i % 2 ? 2 : 0);
  CHECK(offline_opt_unit({3, 1}, alt) == 0);
  CHECK(offline_opt_unit({5, 0}, std::vector<std::size_t>(10, 0)) == 1);
}

TEST_CASE("offline optimum matches enumeration and bounds the online solvers") {
  Stream rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.below(4);
    const std::size_t N = rng.below(8);
    const LineProblem p{m, rng.below(m)};
    std::vector<std::vector<double>> tasks;
    for (std::size_t t = 0; t < N; ++t) {
      std::vector<double> v(m);
      for (auto& c : v) c = std::floor(rng.uniform01() * 4.0);
      tasks.push_back(v);
    }
    const double opt = offline_opt(p, tasks);
    CHECK(opt == Approx(brute_force(p, tasks)));
    WorkFunctionSolver wfa(p);
    SminSolver sm(p, rng.child(trial));
    for (const auto& t : tasks) {
      wfa.serve(t);
      sm.serve(t);
    }
    CHECK(wfa.total() >= opt - 1e-9);
    CHECK(sm.total() >= opt - 1e-9);
  }
}

TEST_CASE("solver factory") {
  CHECK(parse_solver_kind("smin") == SolverKind::smin);
  CHECK(parse_solver_kind("wfa") == SolverKind::wfa);
  CHECK_THROWS_AS(parse_solver_kind("x"), Error);
  CHECK(make_solver(SolverKind::wfa, {3, 1}, Stream(0))->name() == "wfa");
  CHECK(make_solver(SolverKind::smin, {3, 1}, Stream(0))->name() == "smin");
}
