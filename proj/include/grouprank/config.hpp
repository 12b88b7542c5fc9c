#pragma once

#include <cstdint>

namespace grouprank {

/// Resource limits shared by every capped computation.  Capped searches
/// never degrade silently: a cap that fires raises CapExceeded or
/// Undecided, both of which carry the cap's name.
struct Config {
  // Largest group any constructor will materialize as a dense table.
  int order_cap = 2000;

  // Largest group order for exhaustive subgroup enumeration (and hence
  // for subgroup-scan rank computations).
  int subgroup_cap = 512;

  // Atomic-step budget for the naive formula evaluator.
  std::int64_t eval_step_cap = 1'000'000'000;

  // Node budget for generator-tuple and isomorphism backtracking.
  std::int64_t search_node_cap = 20'000'000;

  // Deepest finite quotient a family tower will attempt.
  int tower_depth_cap = 12;

  // Consecutive equal readings that count as "stabilized".
  int stabilization_reads = 2;

  // Layers dropped at the far end of a truncated Frattini series before
  // looking for a constant window.  The near end always drops
  // ceil(log_p |torsion|) + 1 layers.  Both ends of a truncated series
  // are distorted, but for torsion-free towers the final layers are
  // clean, so this is configurable.
  int layer_tail_trim = 2;

  // Batch parallelism; per-item execution stays single-threaded.
  int jobs = 1;

  // Dense Cayley tables grow quadratically; above this order the table
  // alone would dominate memory, so construction refuses regardless of
  // order_cap.
  static constexpr int hard_order_limit = 4096;
};

const Config& default_config();

}  // namespace grouprank
