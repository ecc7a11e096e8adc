#include "msat/twosat.hpp"

#include <algorithm>
#include <vector>

namespace msat {

namespace {

// Iterative Tarjan. Component ids are assigned in completion order, which is
// reverse topological order of the condensation: comp[u] < comp[v] means u's
// component comes later along arcs.
std::vector<int> strongly_connected_components(
    const std::vector<std::vector<int>>& adjacency) {
  const int num_nodes = static_cast<int>(adjacency.size());
  std::vector<int> comp(static_cast<size_t>(num_nodes), -1);
  std::vector<int> index(static_cast<size_t>(num_nodes), -1);
  std::vector<int> lowlink(static_cast<size_t>(num_nodes), 0);
  std::vector<bool> on_stack(static_cast<size_t>(num_nodes), false);
  std::vector<int> stack;
  int next_index = 0;
  int next_comp = 0;

  struct Frame {
    int node;
    size_t next_child;
  };
  std::vector<Frame> call_stack;

  for (int root = 0; root < num_nodes; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    call_stack.push_back({root, 0});
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const int v = frame.node;
      if (frame.next_child == 0) {
        index[static_cast<size_t>(v)] = lowlink[static_cast<size_t>(v)] =
            next_index++;
        stack.push_back(v);
        on_stack[static_cast<size_t>(v)] = true;
      }
      bool descended = false;
      while (frame.next_child < adjacency[static_cast<size_t>(v)].size()) {
        const int w = adjacency[static_cast<size_t>(v)][frame.next_child++];
        if (index[static_cast<size_t>(w)] == -1) {
          call_stack.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[static_cast<size_t>(w)]) {
          lowlink[static_cast<size_t>(v)] = std::min(
              lowlink[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
      }
      if (descended) continue;
      if (lowlink[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<size_t>(w)] = false;
          comp[static_cast<size_t>(w)] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        Frame& parent = call_stack.back();
        lowlink[static_cast<size_t>(parent.node)] =
            std::min(lowlink[static_cast<size_t>(parent.node)],
                     lowlink[static_cast<size_t>(v)]);
      }
    }
  }
  return comp;
}

std::optional<Assignment> extract_model(const ImplicationGraph& graph) {
  if (graph.has_empty_clause) return std::nullopt;
  const std::vector<int> comp = strongly_connected_components(graph.adjacency);
  Assignment model(graph.num_vars, false);
  for (int v = 0; v < graph.num_vars; ++v) {
    const int pos_comp = comp[static_cast<size_t>(2 * v)];
    const int neg_comp = comp[static_cast<size_t>(2 * v + 1)];
    if (pos_comp == neg_comp) return std::nullopt;
    // comp ids are reverse topological: smaller id = later in order.
    model.values[static_cast<size_t>(v)] =
        graph.var_occurs[static_cast<size_t>(v)] && pos_comp < neg_comp;
  }
  return model;
}

}  // namespace

ImplicationGraph ImplicationGraph::build(
    int n, std::span<const StageFormula> formulas) {
  ImplicationGraph graph;
  graph.num_vars = n;
  graph.adjacency.assign(static_cast<size_t>(2 * n), {});
  graph.var_occurs.assign(static_cast<size_t>(n), false);
  for (const StageFormula& formula : formulas) {
    for (const Clause& clause : formula.clauses) {
      if (clause.width() > 2) {
        throw UsageError("2-SAT engine got a clause wider than 2");
      }
      if (clause.max_var() >= n) {
        throw UsageError("2-SAT engine got a variable outside [0, n)");
      }
      const auto& lits = clause.literals();
      if (lits.empty()) {
        graph.has_empty_clause = true;
        continue;
      }
      for (const Literal& lit : lits) {
        graph.var_occurs[static_cast<size_t>(lit.var)] = true;
      }
      if (lits.size() == 1) {
        const int a = node_of(lits[0]);
        graph.adjacency[static_cast<size_t>(negation_of(a))].push_back(a);
      } else {
        const int a = node_of(lits[0]);
        const int b = node_of(lits[1]);
        graph.adjacency[static_cast<size_t>(negation_of(a))].push_back(b);
        graph.adjacency[static_cast<size_t>(negation_of(b))].push_back(a);
      }
    }
  }
  return graph;
}

std::optional<Assignment> solve_2sat(int n, const StageFormula& formula) {
  return solve_2sat_conjunction(n, std::span(&formula, 1));
}

std::optional<Assignment> solve_2sat_conjunction(
    int n, std::span<const StageFormula> formulas) {
  return extract_model(ImplicationGraph::build(n, formulas));
}

bool satisfiable_conjunction(int n, std::span<const StageFormula> formulas) {
  return solve_2sat_conjunction(n, formulas).has_value();
}

std::optional<Assignment> solve_2sat_with_fixed(
    int n, std::span<const StageFormula> formulas,
    const PartialAssignment& fixed) {
  StageFormula units;
  units.clauses.reserve(fixed.domain().size());
  for (size_t i = 0; i < fixed.domain().size(); ++i) {
    units.clauses.push_back(Clause{Literal{fixed.domain()[i], !fixed.values()[i]}});
  }
  std::vector<StageFormula> all(formulas.begin(), formulas.end());
  all.push_back(std::move(units));
  return solve_2sat_conjunction(n, all);
}

}  // namespace msat
