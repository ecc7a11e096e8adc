#include "msat/generate.hpp"

#include <algorithm>
#include <random>

namespace msat {

namespace {

// Uniform integer in [0, bound) from the raw engine, by rejection; avoids the
// implementation-defined std::uniform_int_distribution so outputs are stable.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

// rank-th size-k subset of [0, n) in lexicographic order.
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
  std::vector<int> subset;
  subset.reserve(static_cast<size_t>(k));
  int next = 0;
  for (int remaining = k; remaining > 0; --remaining) {
    while (true) {
      const std::uint64_t with_next = binomial_u64(n - next - 1, remaining - 1);
      if (rank < with_next) {
        subset.push_back(next);
        ++next;
        break;
      }
      rank -= with_next;
      ++next;
    }
  }
  return subset;
}

}  // namespace

void Graph::validate() const {
  if (num_vertices < 0) throw UsageError("graph has negative vertex count");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices) {
      throw UsageError("graph edge endpoint out of range");
    }
    if (u == v) throw UsageError("graph has a self-loop");
  }
  if (partition) {
    std::vector<bool> seen(static_cast<size_t>(num_vertices), false);
    for (const auto& cls : *partition) {
      if (cls.empty()) throw UsageError("graph partition has an empty class");
      for (int v : cls) {
        if (v < 0 || v >= num_vertices) {
          throw UsageError("graph partition vertex out of range");
        }
        if (seen[static_cast<size_t>(v)]) {
          throw UsageError("graph partition classes are not disjoint");
        }
        seen[static_cast<size_t>(v)] = true;
      }
    }
    for (bool covered : seen) {
      if (!covered) throw UsageError("graph partition does not cover all vertices");
    }
  }
}

MultistageInstance from_weighted_2sat(int n, const StageFormula& cnf, int k) {
  if (n < 0 || k < 0) throw UsageError("weighted 2-SAT needs n, k >= 0");
  for (const Clause& clause : cnf.clauses) {
    if (clause.width() > 2) {
      throw UsageError("weighted 2-SAT source clause wider than 2");
    }
  }
  StageFormula all_false;
  all_false.clauses.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) all_false.clauses.push_back(Clause{neg(v)});
  return MultistageInstance::make(n, 2, {std::move(all_false), cnf},
                                  std::min(k, n));
}

MultistageInstance from_3sat(
    int n, const std::vector<std::array<Literal, 3>>& clauses) {
  if (n < 0) throw UsageError("3-SAT source needs n >= 0");
  if (clauses.empty()) throw UsageError("3-SAT source needs at least one clause");
  const int b1 = n, b2 = n + 1, b3 = n + 2;
  StageFormula selectors_off;  // at most one of b1,b2,b3 true
  selectors_off.clauses = {Clause{neg(b1), neg(b2)}, Clause{neg(b1), neg(b3)},
                           Clause{neg(b2), neg(b3)}};
  const std::vector<Clause> selectors_on = {// at least two true
                                            Clause{pos(b1), pos(b2)},
                                            Clause{pos(b1), pos(b3)},
                                            Clause{pos(b2), pos(b3)}};
  std::vector<StageFormula> stages;
  stages.reserve(2 * clauses.size());
  for (const auto& triple : clauses) {
    for (const Literal& lit : triple) {
      if (lit.var < 0 || lit.var >= n) {
        throw UsageError("3-SAT literal out of range");
      }
    }
    stages.push_back(selectors_off);
    StageFormula even;
    even.clauses = {Clause{triple[0], pos(b1)}, Clause{triple[1], pos(b2)},
                    Clause{triple[2], pos(b3)}};
    even.clauses.insert(even.clauses.end(), selectors_on.begin(),
                        selectors_on.end());
    stages.push_back(std::move(even));
  }
  return MultistageInstance::make(n + 3, 2, std::move(stages), 1);
}

MultistageInstance from_mis(const Graph& graph) {
  graph.validate();
  if (!graph.partition) {
    throw UsageError("multicolored independent set needs a vertex partition");
  }
  const int n = graph.num_vertices;
  const int k = static_cast<int>(graph.partition->size());
  StageFormula all_true;
  all_true.clauses.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) all_true.clauses.push_back(Clause{pos(v)});
  StageFormula selection;
  for (const auto& [u, v] : graph.edges) {
    selection.clauses.push_back(Clause{neg(u), neg(v)});
  }
  for (const auto& cls : *graph.partition) {
    for (size_t i = 0; i < cls.size(); ++i) {
      for (size_t j = i + 1; j < cls.size(); ++j) {
        selection.clauses.push_back(Clause{neg(cls[i]), neg(cls[j])});
      }
    }
  }
  return MultistageInstance::make(n, 2, {std::move(all_true), std::move(selection)},
                                  n - k);
}

MultistageInstance and_compose(const std::vector<MultistageInstance>& inputs) {
  if (inputs.empty()) throw UsageError("AND-composition needs at least one input");
  const int n = inputs.front().n;
  const int tau = inputs.front().tau();
  if (n < 1) throw UsageError("AND-composition needs n >= 1");
  int q = 2;
  for (const MultistageInstance& input : inputs) {
    if (input.d != 1) throw UsageError("AND-composition inputs must have d=1");
    if (input.n != n || input.tau() != tau) {
      throw UsageError("AND-composition inputs must share n and tau");
    }
    q = std::max(q, input.q);
  }
  StageFormula padding;  // always-true stage separating the blocks
  padding.clauses.push_back(Clause{pos(0), neg(0)});
  std::vector<StageFormula> stages;
  stages.reserve(inputs.size() * static_cast<size_t>(tau + n));
  for (const MultistageInstance& input : inputs) {
    stages.insert(stages.end(), input.stages.begin(), input.stages.end());
    for (int i = 0; i < n; ++i) stages.push_back(padding);
  }
  return MultistageInstance::make(n, q, std::move(stages), 1);
}

MultistageInstance from_vertex_cover(const Graph& graph, int k) {
  graph.validate();
  const int n = graph.num_vertices;
  if (k < 0 || k > n) throw UsageError("vertex cover budget k must lie in [0, |V|]");
  const int num_vars = n + k;

  std::vector<std::vector<int>> neighbors(static_cast<size_t>(n));
  for (const auto& [u, v] : graph.edges) {
    neighbors[static_cast<size_t>(u)].push_back(v);
    neighbors[static_cast<size_t>(v)].push_back(u);
  }

  std::vector<StageFormula> stages;
  stages.reserve(static_cast<size_t>(n) + 1);
  StageFormula start;
  for (int v = 0; v < num_vars; ++v) start.clauses.push_back(Clause{neg(v)});
  stages.push_back(std::move(start));
  for (int i = 0; i < n; ++i) {
    StageFormula stage;
    for (int j : neighbors[static_cast<size_t>(i)]) {
      stage.clauses.push_back(Clause{pos(i), pos(j)});
    }
    const bool ticker_on = (i + 1) % 2 == 0;  // stage i+1 in 1-based terms
    for (int b = 0; b < k; ++b) {
      stage.clauses.push_back(ticker_on ? Clause{pos(n + b)} : Clause{neg(n + b)});
    }
    stages.push_back(std::move(stage));
  }
  return MultistageInstance::make(num_vars, 2, std::move(stages), k);
}

MultistageInstance random_instance(const RandomInstanceParams& params,
                                   std::vector<std::string>* warnings) {
  if (params.n < 1) throw UsageError("random instance needs n >= 1");
  if (params.tau < 1) throw UsageError("random instance needs tau >= 1");
  if (params.q < 1) throw UsageError("random instance needs q >= 1");
  if (params.d < 0) throw UsageError("random instance needs d >= 0");
  if (params.clauses_per_stage < 0) {
    throw UsageError("random instance needs clauses_per_stage >= 0");
  }

  const int max_width = std::min(params.q, params.n);
  std::vector<std::uint64_t> cumulative(static_cast<size_t>(max_width) + 1, 0);
  for (int w = 1; w <= max_width; ++w) {
    cumulative[static_cast<size_t>(w)] =
        cumulative[static_cast<size_t>(w) - 1] +
        binomial_u64(params.n, w) * (1ull << w);
  }
  const std::uint64_t universe = cumulative.back();

  std::mt19937_64 rng(params.seed);
  std::vector<StageFormula> stages;
  stages.reserve(static_cast<size_t>(params.tau));
  for (int s = 0; s < params.tau; ++s) {
    StageFormula stage;
    stage.clauses.reserve(static_cast<size_t>(params.clauses_per_stage));
    for (int c = 0; c < params.clauses_per_stage; ++c) {
      const std::uint64_t pick = rand_below(rng, universe);
      int width = 1;
      while (pick >= cumulative[static_cast<size_t>(width)]) ++width;
      const std::uint64_t within = pick - cumulative[static_cast<size_t>(width) - 1];
      const std::uint64_t signs = within % (1ull << width);
      const std::vector<int> vars =
          unrank_combination(params.n, width, within >> width);
      std::vector<Literal> lits;
      lits.reserve(static_cast<size_t>(width));
      for (int i = 0; i < width; ++i) {
        lits.push_back({vars[static_cast<size_t>(i)], ((signs >> i) & 1) != 0});
      }
      stage.clauses.emplace_back(std::move(lits));
    }
    stages.push_back(std::move(stage));
  }
  return MultistageInstance::make(params.n, params.q, std::move(stages),
                                  params.d, warnings);
}

}  // namespace msat
