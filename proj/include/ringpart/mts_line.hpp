#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ringpart/rng.hpp"

namespace ringpart::mts {

/// Metrical task system on the line metric d(i, j) = |i - j| over m states.
struct LineProblem {
  std::size_t m = 1;
  std::size_t start = 0;

  void validate() const;
};

struct ServeResult {
  std::size_t state = 0;
  std::size_t move = 0;
  double cost = 0.0;  // move + t(state)
};

/// Online MTS solver. One instance per interval; not thread-safe.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual std::size_t state() const = 0;
  /// Serves one cost vector of length m (Errc::instance otherwise).
  virtual ServeResult serve(std::span<const double> t) = 0;
  virtual bool deterministic() const = 0;
  virtual std::string_view name() const = 0;

  double total() const noexcept { return total_; }

 protected:
  double total_ = 0.0;
};

/// Work function algorithm: tracks w_t(s) = t_t(s) + min_s'(w_{t-1}(s') + |s'-s|)
/// and moves to argmin_s w_t(s) + |current - s|, smallest index on ties.
class WorkFunctionSolver final : public Solver {
 public:
  explicit WorkFunctionSolver(LineProblem problem);

  std::size_t state() const override { return state_; }
  ServeResult serve(std::span<const double> t) override;
  bool deterministic() const override { return true; }
  std::string_view name() const override { return "wfa"; }

  std::span<const double> work_function() const noexcept { return w_; }

 private:
  LineProblem problem_;
  std::size_t state_;
  std::vector<double> w_;
};

/// Randomized solver: position law grad smin_m(X) of the cumulative cost
/// vector X, repositioned by maximal coupling after every task. Before the
/// first task the position is the start state with certainty.
class SminSolver final : public Solver {
 public:
  SminSolver(LineProblem problem, Stream rng);

  std::size_t state() const override { return state_; }
  ServeResult serve(std::span<const double> t) override;
  bool deterministic() const override { return problem_.m == 1; }
  std::string_view name() const override { return "smin"; }

  /// grad smin_c(X) with c = m.
  std::vector<double> distribution() const;
  std::span<const double> cumulative() const noexcept { return x_; }

 private:
  LineProblem problem_;
  Stream rng_;
  std::size_t state_;
  std::vector<double> x_;
  std::vector<double> law_;
};

enum class SolverKind { smin, wfa };

SolverKind parse_solver_kind(std::string_view name);
std::string_view to_string(SolverKind kind) noexcept;

std::unique_ptr<Solver> make_solver(SolverKind kind, LineProblem problem, Stream rng);

/// Exact offline optimum: f_0(s) = |start - s|,
/// f_t(s) = t_t(s) + min_s'(f_{t-1}(s') + |s' - s|), answer min_s f_N(s).
/// Runs in O(N m) with two sweeps per step.
double offline_opt(const LineProblem& problem, std::span<const std::vector<double>> tasks);

/// Same optimum for unit tasks, given as the sequence of requested states.
std::uint64_t offline_opt_unit(const LineProblem& problem, std::span<const std::size_t> hits);

/// Unit cost vector with a single 1 at `state`.
std::vector<double> unit_task(std::size_t m, std::size_t state);

}  // namespace ringpart::mts
