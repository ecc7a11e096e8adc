#pragma once
// Linear-time 2-CNF satisfiability with model extraction, via strongly
// connected components of the implication graph.

#include <optional>
#include <span>
#include <vector>

#include "msat/formula.hpp"

namespace msat {

// One node per literal: node 2v is variable v positive, node 2v+1 negated.
// A clause (a or b) contributes the arcs not-a -> b and not-b -> a; a unit
// clause (a) contributes not-a -> a. An empty clause marks the whole graph
// unsatisfiable.
struct ImplicationGraph {
  int num_vars = 0;
  std::vector<std::vector<int>> adjacency;  // 2n nodes
  std::vector<bool> var_occurs;
  bool has_empty_clause = false;

  static int node_of(const Literal& lit) {
    return 2 * lit.var + (lit.negated ? 1 : 0);
  }
  static int negation_of(int node) { return node ^ 1; }

  // Throws UsageError on clauses wider than 2.
  static ImplicationGraph build(int n, std::span<const StageFormula> formulas);
};

// Satisfying assignment for a 2-CNF formula if one exists. Deterministic:
// literal nodes are explored in index order, a literal is set true iff its
// SCC comes after its negation's in topological order, and variables absent
// from every clause come out false.
std::optional<Assignment> solve_2sat(int n, const StageFormula& formula);

// Model of the conjunction of all given formulas, or nullopt.
std::optional<Assignment> solve_2sat_conjunction(
    int n, std::span<const StageFormula> formulas);

bool satisfiable_conjunction(int n, std::span<const StageFormula> formulas);

// Conjunction satisfiability/model with some variables pinned; the pins are
// injected as unit clauses. Used for partial-assignment feasibility checks
// and witness reconstruction.
std::optional<Assignment> solve_2sat_with_fixed(
    int n, std::span<const StageFormula> formulas,
    const PartialAssignment& fixed);

}  // namespace msat
