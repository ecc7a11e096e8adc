#pragma once
// Shared test helpers: compact construction syntax and independent
// brute-force oracles. The oracles only use evaluate/hamming and plain
// enumeration, never the implication-graph or search machinery they check.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "msat/formula.hpp"
#include "msat/generate.hpp"

namespace msat::testing {

// DIMACS-style literal: +k is variable k-1 positive, -k negated.
inline Literal lit(int dimacs) {
  return dimacs > 0 ? pos(dimacs - 1) : neg(-dimacs - 1);
}

inline Clause clause(std::initializer_list<int> dimacs_lits) {
  std::vector<Literal> lits;
  for (int l : dimacs_lits) lits.push_back(lit(l));
  return Clause(std::move(lits));
}

inline StageFormula stage(
    std::initializer_list<std::initializer_list<int>> clauses) {
  StageFormula formula;
  for (const auto& c : clauses) formula.clauses.push_back(clause(c));
  return formula;
}

inline MultistageInstance instance(
    int n, int d,
    std::initializer_list<std::initializer_list<std::initializer_list<int>>>
        stages,
    int q = 2) {
  std::vector<StageFormula> formulas;
  for (const auto& s : stages) formulas.push_back(stage(s));
  return MultistageInstance::make(n, q, std::move(formulas), d);
}

inline Assignment assignment(std::initializer_list<int> bits) {
  std::vector<bool> values;
  for (int b : bits) values.push_back(b != 0);
  return Assignment(std::move(values));
}

inline Witness witness(std::initializer_list<std::initializer_list<int>> rows) {
  Witness w;
  for (const auto& row : rows) {
    std::vector<bool> values;
    for (int b : row) values.push_back(b != 0);
    w.assignments.emplace_back(std::move(values));
  }
  return w;
}

// Lexicographic successor of a bit vector read index-0-first (false < true).
// Returns false once the all-true vector wraps around.
inline bool next_lex(std::vector<bool>& bits) {
  for (size_t i = bits.size(); i-- > 0;) {
    if (!bits[i]) {
      bits[i] = true;
      return true;
    }
    bits[i] = false;
  }
  return false;
}

// All satisfying assignments of a formula, in lexicographic order.
inline std::vector<Assignment> oracle_models(int n, const StageFormula& formula) {
  std::vector<Assignment> models;
  std::vector<bool> bits(static_cast<size_t>(n), false);
  do {
    Assignment f(bits);
    if (evaluate(f, formula)) models.push_back(f);
  } while (next_lex(bits));
  return models;
}

inline bool oracle_satisfiable(int n, const StageFormula& formula) {
  std::vector<bool> bits(static_cast<size_t>(n), false);
  do {
    if (evaluate(Assignment(bits), formula)) return true;
  } while (next_lex(bits));
  return false;
}

inline bool valid_witness(const MultistageInstance& inst, const Witness& w) {
  for (int i = 0; i < inst.tau(); ++i) {
    if (!evaluate(w.assignments[static_cast<size_t>(i)],
                  inst.stages[static_cast<size_t>(i)])) {
      return false;
    }
  }
  for (int i = 0; i + 1 < inst.tau(); ++i) {
    if (hamming(w.assignments[static_cast<size_t>(i)],
                w.assignments[static_cast<size_t>(i + 1)]) > inst.d) {
      return false;
    }
  }
  return true;
}

// Full enumeration of every assignment sequence (one flat odometer over
// n*tau bits, lexicographic), returning the first valid witness. Intended
// for n*tau small enough to enumerate completely.
inline std::optional<Witness> oracle_first_witness(
    const MultistageInstance& inst) {
  std::vector<bool> bits(static_cast<size_t>(inst.n) * inst.tau(), false);
  do {
    Witness w;
    for (int i = 0; i < inst.tau(); ++i) {
      std::vector<bool> values(
          bits.begin() + static_cast<long>(i) * inst.n,
          bits.begin() + static_cast<long>(i + 1) * inst.n);
      w.assignments.emplace_back(std::move(values));
    }
    if (valid_witness(inst, w)) return w;
  } while (next_lex(bits));
  return std::nullopt;
}

inline bool oracle_yes(const MultistageInstance& inst) {
  return oracle_first_witness(inst).has_value();
}

inline std::vector<Witness> oracle_all_witnesses(const MultistageInstance& inst) {
  std::vector<Witness> all;
  std::vector<bool> bits(static_cast<size_t>(inst.n) * inst.tau(), false);
  do {
    Witness w;
    for (int i = 0; i < inst.tau(); ++i) {
      std::vector<bool> values(
          bits.begin() + static_cast<long>(i) * inst.n,
          bits.begin() + static_cast<long>(i + 1) * inst.n);
      w.assignments.emplace_back(std::move(values));
    }
    if (valid_witness(inst, w)) all.push_back(std::move(w));
  } while (next_lex(bits));
  return all;
}

// Source-problem brute forces for the reduction generators.

inline bool oracle_weighted_2sat(int n, const StageFormula& cnf, int k) {
  std::vector<bool> bits(static_cast<size_t>(n), false);
  do {
    Assignment f(bits);
    if (!evaluate(f, cnf)) continue;
    int true_count = 0;
    for (bool b : bits) true_count += b;
    if (true_count <= k) return true;
  } while (next_lex(bits));
  return false;
}

inline bool oracle_3sat(int n,
                        const std::vector<std::array<Literal, 3>>& clauses) {
  std::vector<bool> bits(static_cast<size_t>(n), false);
  do {
    bool all = true;
    for (const auto& triple : clauses) {
      bool sat = false;
      for (const Literal& l : triple) {
        if (bits[static_cast<size_t>(l.var)] != l.negated) sat = true;
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  } while (next_lex(bits));
  return false;
}

// One vertex per class, pairwise non-adjacent.
inline bool oracle_mis(const Graph& graph) {
  const auto& classes = *graph.partition;
  std::vector<size_t> pick(classes.size(), 0);
  while (true) {
    std::vector<int> chosen;
    for (size_t c = 0; c < classes.size(); ++c) {
      chosen.push_back(classes[c][pick[c]]);
    }
    bool independent = true;
    for (const auto& [u, v] : graph.edges) {
      for (size_t i = 0; i < chosen.size() && independent; ++i) {
        for (size_t j = i + 1; j < chosen.size(); ++j) {
          if ((chosen[i] == u && chosen[j] == v) ||
              (chosen[i] == v && chosen[j] == u)) {
            independent = false;
            break;
          }
        }
      }
    }
    if (independent) return true;
    size_t c = classes.size();
    while (c-- > 0) {
      if (++pick[c] < classes[c].size()) break;
      pick[c] = 0;
      if (c == 0) return false;
    }
  }
}

inline bool oracle_vertex_cover(const Graph& graph, int k) {
  const int n = graph.num_vertices;
  for (std::uint64_t subset = 0; subset < (1ull << n); ++subset) {
    if (std::popcount(subset) > k) continue;
    bool covers = true;
    for (const auto& [u, v] : graph.edges) {
      if (!((subset >> u) & 1) && !((subset >> v) & 1)) {
        covers = false;
        break;
      }
    }
    if (covers) return true;
  }
  return false;
}

}  // namespace msat::testing
