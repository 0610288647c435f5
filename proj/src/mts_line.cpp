#include "ringpart/mts_line.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ringpart/error.hpp"
#include "ringpart/hitting_game.hpp"
#include "ringpart/smin.hpp"

namespace ringpart::mts {
namespace {

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

// g(s) = min_s' f(s') + |s' - s|, in place.
void relax_line(std::vector<double>& f) {
  for (std::size_t s = 1; s < f.size(); ++s) f[s] = std::min(f[s], f[s - 1] + 1.0);
  for (std::size_t s = f.size() - 1; s-- > 0;) f[s] = std::min(f[s], f[s + 1] + 1.0);
}

void check_task(std::span<const double> t, std::size_t m) {
  require(t.size() == m, Errc::instance,
          "cost vector has length " + std::to_string(t.size()) + ", expected " + std::to_string(m));
}

}  // namespace

void LineProblem::validate() const {
  require(m >= 1, Errc::instance, "MTS line needs at least one state");
  require(start < m, Errc::instance, "MTS start state out of range");
}

std::vector<double> unit_task(std::size_t m, std::size_t state) {
  std::vector<double> t(m, 0.0);
  t.at(state) = 1.0;
  return t;
}

WorkFunctionSolver::WorkFunctionSolver(LineProblem problem) : problem_(problem), state_(problem.start) {
  problem_.validate();
  w_.resize(problem_.m);
  for (std::size_t s = 0; s < problem_.m; ++s) w_[s] = static_cast<double>(distance(problem_.start, s));
}

ServeResult WorkFunctionSolver::serve(std::span<const double> t) {
  check_task(t, problem_.m);
  relax_line(w_);
  for (std::size_t s = 0; s < w_.size(); ++s) w_[s] += t[s];

  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < w_.size(); ++s) {
    const double v = w_[s] + static_cast<double>(distance(state_, s));
    if (v < best_value - 1e-12) {
      best_value = v;
      best = s;
    }
  }
  ServeResult r;
  r.move = distance(state_, best);
  r.state = best;
  r.cost = static_cast<double>(r.move) + t[best];
  state_ = best;
  total_ += r.cost;
  return r;
}

SminSolver::SminSolver(LineProblem problem, Stream rng)
    : problem_(problem), rng_(rng), state_(problem.start) {
  problem_.validate();
  x_.assign(problem_.m, 0.0);
  law_.assign(problem_.m, 0.0);
  law_[problem_.start] = 1.0;
}

std::vector<double> SminSolver::distribution() const {
  return smin::grad_smin_c(x_, static_cast<double>(problem_.m));
}

ServeResult SminSolver::serve(std::span<const double> t) {
  check_task(t, problem_.m);
  for (std::size_t s = 0; s < x_.size(); ++s) x_[s] += t[s];
  auto next_law = distribution();
  const std::size_t next = hitting::couple(law_, next_law, state_, rng_);
  law_ = std::move(next_law);

  ServeResult r;
  r.move = distance(state_, next);
  r.state = next;
  r.cost = static_cast<double>(r.move) + t[next];
  state_ = next;
  total_ += r.cost;
  return r;
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "smin") return SolverKind::smin;
  if (name == "wfa") return SolverKind::wfa;
  fail(Errc::parameter, "unknown MTS solver '" + std::string(name) + "' (expected smin or wfa)");
}

std::string_view to_string(SolverKind kind) noexcept { return kind == SolverKind::smin ? "smin" : "wfa"; }

std::unique_ptr<Solver> make_solver(SolverKind kind, LineProblem problem, Stream rng) {
  if (kind == SolverKind::wfa) return std::make_unique<WorkFunctionSolver>(problem);
  return std::make_unique<SminSolver>(problem, rng);
}

double offline_opt(const LineProblem& problem, std::span<const std::vector<double>> tasks) {
  problem.validate();
  if (tasks.empty()) return 0.0;
  std::vector<double> f(problem.m);
  for (std::size_t s = 0; s < problem.m; ++s) f[s] = static_cast<double>(distance(problem.start, s));
  for (const auto& t : tasks) {
    check_task(t, problem.m);
    relax_line(f);
    for (std::size_t s = 0; s < f.size(); ++s) f[s] += t[s];
  }
  return *std::min_element(f.begin(), f.end());
}

std::uint64_t offline_opt_unit(const LineProblem& problem, std::span<const std::size_t> hits) {
  problem.validate();
  if (hits.empty()) return 0;
  std::vector<double> f(problem.m);
  for (std::size_t s = 0; s < problem.m; ++s) f[s] = static_cast<double>(distance(problem.start, s));
  for (std::size_t h : hits) {
    require(h < problem.m, Errc::instance, "requested state out of range");
    relax_line(f);
    f[h] += 1.0;
  }
  return static_cast<std::uint64_t>(std::llround(*std::min_element(f.begin(), f.end())));
}

}  // namespace ringpart::mts
