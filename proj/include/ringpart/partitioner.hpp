#pragma once

#include <string_view>

#include "ringpart/ring_core.hpp"

namespace ringpart {

/// Online algorithm driven one request at a time.
class Partitioner {
 public:
  virtual ~Partitioner() = default;

  /// Serves a request on edge (i, i+1) and returns the step's cost increments.
  virtual StepRecord serve(std::size_t edge) = 0;

  virtual const Coloring& coloring() const = 0;
  virtual const CostLedger& ledger() const = 0;
  virtual CostLedger& ledger() = 0;
  virtual std::string_view algorithm() const = 0;
  /// Per-server load the algorithm promises to respect.
  virtual double load_bound() const = 0;
};

}  // namespace ringpart
