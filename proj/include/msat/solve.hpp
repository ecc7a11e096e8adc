#pragma once
// The algorithm suite: brute-force oracle, linear-time special cases, the
// layered assignment graph, the greedy large-budget routine and its
// dispatcher, the dual-parameter (n-d) compatible-pair graph, the (tau, d)
// change-set enumeration, and a portfolio dispatcher.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "msat/formula.hpp"

namespace msat {

// Cooperative deadline exceeded (bench timeouts).
struct TimeoutError : CapacityError {
  using CapacityError::CapacityError;
};

struct SolverLimits {
  std::uint64_t max_graph_nodes = 1ull << 26;
  std::uint64_t max_graph_arcs = 1ull << 26;
  std::uint64_t max_candidates = 1ull << 26;  // dual / tau_d outer enumeration
  int max_brute_bits = 24;                    // brute force: n * tau <= this
  std::optional<std::chrono::steady_clock::time_point> deadline;

  // One knob that replaces every guard (CLI --max-nodes / MSAT_MAX_NODES).
  static SolverLimits with_budget(std::uint64_t budget);

  void check_deadline() const {
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      throw TimeoutError("deadline exceeded");
    }
  }
};

struct SolveStats {
  std::string algorithm;
  std::uint64_t nodes = 0;
  std::uint64_t arcs = 0;
  std::uint64_t assignments_enumerated = 0;
  std::uint64_t max_layer = 0;       // assignment graph instrumentation
  std::uint64_t max_out_degree = 0;  // assignment graph instrumentation
  double seconds = 0.0;

  std::string to_key_values() const;  // key=value lines
};

struct SolveOutcome {
  bool yes = false;
  std::optional<Witness> witness;  // present iff yes; always verified
  SolveStats stats;
};

// One vertex of the dual-parameter path graph: two compatible partial
// assignments over (n-d)-subsets anchored at stage index `stage` (0-based),
// constraining stages stage, stage+1, stage+2.
struct CompatiblePairNode {
  int stage = 0;
  PartialAssignment first;
  PartialAssignment second;
};

// Exhaustive oracle: walks assignment sequences in lexicographic order
// (variable 0 most significant, false < true), checking stages with evaluate
// and transitions with hamming; returns the lexicographically first witness.
// Accepts any clause width. Guarded by n * tau <= limits.max_brute_bits.
SolveOutcome solve_brute(const MultistageInstance& instance,
                         const SolverLimits& limits = {});

// Linear-time cases: tau = 1 (single 2-SAT), d = 0 (2-SAT on the conjunction,
// model replicated), d = n (stages decoupled). nullopt when none applies.
std::optional<SolveOutcome> solve_special(const MultistageInstance& instance,
                                          const SolverLimits& limits = {});

// Layered digraph over per-stage satisfying assignments with arcs between
// consecutive layers at hamming distance <= d; yes iff an s-t path exists.
SolveOutcome solve_assignment_graph(const MultistageInstance& instance,
                                    const SolverLimits& limits = {});

// Requires 2m < d (else UsageError): stage 1 takes any model, later stages
// re-solve locally and carry the previous assignment outside their own
// variables. Consecutive distances stay <= 2m. Answers no only when some
// stage is unsatisfiable by itself.
SolveOutcome solve_greedy(const MultistageInstance& instance,
                          const SolverLimits& limits = {});

// Dispatcher on how 2(m+n-d) relates to 2n-d: assignment graph when
// 2(m+n-d) >= 2n-d, greedy otherwise (equivalently 2m < d).
SolveOutcome solve_m_n_d(const MultistageInstance& instance,
                         const SolverLimits& limits = {});

// Dual-parameter algorithm: path search over compatible pairs of partial
// assignments on (n-d)-subsets. tau <= 2 and d = n are handled by direct
// pair enumeration / the special cases.
SolveOutcome solve_dual(const MultistageInstance& instance,
                        const SolverLimits& limits = {});

// Change-set enumeration: guesses the <= tau*d ever-changing variables, their
// initial values and per-stage flip patterns (at most min(|X'|, d) flips),
// then decides the simplified residual instance with d = 0. Delegates to the
// assignment graph when tau*d >= n.
SolveOutcome solve_tau_d(const MultistageInstance& instance,
                         const SolverLimits& limits = {});

// Kernelize, then route: special cases first, greedy when 2m < d, otherwise
// the cheapest of {assignment graph, dual, tau_d} by predicted cost, falling
// through to the next candidate on capacity errors. The witness is lifted
// back through the kernel's variable map.
SolveOutcome solve_auto(const MultistageInstance& instance,
                        const SolverLimits& limits = {});

}  // namespace msat
