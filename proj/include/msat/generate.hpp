#pragma once
// Instance generators: the hardness-reduction constructions (used here as
// cross-validated instance sources) and a seeded uniform random generator.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "msat/formula.hpp"

namespace msat {

// Undirected graph, optionally with a vertex partition (for the multicolored
// independent set reduction). No self-loops.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<std::vector<int>>> partition;

  void validate() const;  // throws UsageError
};

// Weighted 2-SAT -> M2SAT: stage 1 forces everything false via n negative
// units, stage 2 is the input formula, d = k. Yes iff the input has a model
// with at most k variables set true.
MultistageInstance from_weighted_2sat(int n, const StageFormula& cnf, int k);

// Exact-3-CNF -> M2SAT with d = 1. Three selector variables b1,b2,b3 are
// appended after the n input variables (indices n, n+1, n+2). Odd stages
// force at most one selector true, even stage 2i couples clause i's literal
// slots to the selectors and forces at least two selectors true; tau = 2m.
// Input clauses are raw literal triples (repeated literals allowed).
MultistageInstance from_3sat(int n,
                             const std::vector<std::array<Literal, 3>>& clauses);

// Multicolored independent set -> M2SAT with two stages and d = |V| - k.
// Variables are index-aligned with vertices. Requires the partition; classes
// must be non-empty.
MultistageInstance from_mis(const Graph& graph);

// AND-composition: chains t instances (all with d = 1 and equal n, tau) and
// separates consecutive blocks with n always-true padding stages (x1 or
// not-x1). Yes iff every input is yes.
MultistageInstance and_compose(const std::vector<MultistageInstance>& inputs);

// Vertex Cover -> M2SAT: variables are the n vertex variables followed by k
// ticker variables b1..bk; stage 0 is all-negative units, stage i carries
// vertex i's edge clauses plus all-positive (i even) or all-negative (i odd)
// ticker units; tau = |V| + 1, d = k.
MultistageInstance from_vertex_cover(const Graph& graph, int k);

struct RandomInstanceParams {
  std::uint64_t seed = 0;
  int n = 1;
  int tau = 1;
  int q = 2;
  int d = 0;
  int clauses_per_stage = 0;
};

// Deterministic for a fixed seed. Each clause is drawn independently and
// uniformly from the set of canonical non-tautological clauses of width
// 1..min(q, n): width w with probability proportional to C(n,w)*2^w, then a
// uniform w-subset of variables and uniform signs. d > n is clamped to n.
MultistageInstance random_instance(const RandomInstanceParams& params,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace msat
