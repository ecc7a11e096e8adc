#include "msat/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "msat/kernelize.hpp"
#include "msat/twosat.hpp"

namespace msat {

namespace {

constexpr std::uint64_t kUint64Max = std::numeric_limits<std::uint64_t>::max();

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

// Bit mask -> assignment, bit v = value of variable v.
Assignment assignment_from_mask(std::uint64_t mask, int n) {
  Assignment f(n, false);
  for (int v = 0; v < n; ++v) f.values[static_cast<size_t>(v)] = (mask >> v) & 1;
  return f;
}

// Masks in lexicographic order of the assignment vector (variable 0 most
// significant): counter bit n-1-v becomes mask bit v.
std::uint64_t lex_counter_to_mask(std::uint64_t counter, int n) {
  std::uint64_t mask = 0;
  for (int v = 0; v < n; ++v) {
    if ((counter >> (n - 1 - v)) & 1) mask |= 1ull << v;
  }
  return mask;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kUint64Max / a) return kUint64Max;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return (a > kUint64Max - b) ? kUint64Max : a + b;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = saturating_mul(result, static_cast<std::uint64_t>(n - k + i));
    if (result == kUint64Max) return result;
    result /= static_cast<std::uint64_t>(i);
  }
  return result;
}

// Sum_{j<=d} C(n, j), saturating.
std::uint64_t hamming_ball_size(int n, int d) {
  std::uint64_t total = 0;
  for (int j = 0; j <= std::min(d, n); ++j) {
    total = saturating_add(total, binomial(n, j));
  }
  return total;
}

// Size-k subsets of [0, n) in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return;
  std::vector<int> indices(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) indices[static_cast<size_t>(i)] = i;
  while (true) {
    fn(const_cast<const std::vector<int>&>(indices));
    int i = k - 1;
    while (i >= 0 && indices[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++indices[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      indices[static_cast<size_t>(j)] = indices[static_cast<size_t>(j - 1)] + 1;
    }
  }
}

SolveOutcome finish(const MultistageInstance& instance, bool yes,
                    std::optional<Witness> witness, SolveStats stats,
                    const Stopwatch& watch) {
  if (yes) {
    if (!witness || !verify_witness(instance, *witness).ok()) {
      throw std::logic_error("solver produced an invalid witness");
    }
  } else {
    witness.reset();
  }
  stats.seconds = watch.elapsed();
  return {yes, std::move(witness), std::move(stats)};
}

void require_2cnf(const MultistageInstance& instance, const char* who) {
  if (instance.q > 2) {
    throw UsageError(std::string(who) + " needs q <= 2, got q=" +
                     std::to_string(instance.q));
  }
}

// Per-stage satisfying-assignment masks in lexicographic order, by plain
// enumeration of all 2^n assignments.
std::vector<std::vector<std::uint64_t>> satisfying_layers(
    const MultistageInstance& instance, const SolverLimits& limits,
    SolveStats& stats) {
  const int n = instance.n;
  const std::uint64_t per_layer = 1ull << n;
  std::vector<std::vector<std::uint64_t>> layers;
  layers.reserve(static_cast<size_t>(instance.tau()));
  std::uint64_t tick = 0;
  for (const StageFormula& stage : instance.stages) {
    std::vector<std::uint64_t> layer;
    for (std::uint64_t counter = 0; counter < per_layer; ++counter) {
      if ((++tick & 0xFFF) == 0) limits.check_deadline();
      const std::uint64_t mask = lex_counter_to_mask(counter, n);
      ++stats.assignments_enumerated;
      if (evaluate(assignment_from_mask(mask, n), stage)) {
        layer.push_back(mask);
      }
    }
    stats.max_layer = std::max(stats.max_layer,
                               static_cast<std::uint64_t>(layer.size()));
    layers.push_back(std::move(layer));
  }
  return layers;
}

Witness witness_from_masks(const std::vector<std::uint64_t>& masks, int n) {
  Witness witness;
  witness.assignments.reserve(masks.size());
  for (std::uint64_t mask : masks) {
    witness.assignments.push_back(assignment_from_mask(mask, n));
  }
  return witness;
}

PartialAssignment partial_from_bits(const std::vector<int>& domain,
                                    std::uint64_t bits) {
  std::vector<bool> values(domain.size());
  for (size_t i = 0; i < domain.size(); ++i) values[i] = (bits >> i) & 1;
  return PartialAssignment(domain, std::move(values));
}

}  // namespace

SolverLimits SolverLimits::with_budget(std::uint64_t budget) {
  SolverLimits limits;
  limits.max_graph_nodes = budget;
  limits.max_graph_arcs = budget;
  limits.max_candidates = budget;
  int bits = 0;
  while (bits < 62 && (2ull << bits) <= budget) ++bits;
  limits.max_brute_bits = bits;
  return limits;
}

std::string SolveStats::to_key_values() const {
  std::ostringstream os;
  os << "algorithm=" << algorithm << '\n';
  os << "nodes=" << nodes << '\n';
  os << "arcs=" << arcs << '\n';
  os << "assignments_enumerated=" << assignments_enumerated << '\n';
  os << "max_layer=" << max_layer << '\n';
  os << "max_out_degree=" << max_out_degree << '\n';
  os << "seconds=" << seconds << '\n';
  return os.str();
}

SolveOutcome solve_brute(const MultistageInstance& instance,
                         const SolverLimits& limits) {
  Stopwatch watch;
  SolveStats stats;
  stats.algorithm = "brute";
  const int n = instance.n;
  const int tau = instance.tau();
  if (n >= 62 ||
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(tau) >
          static_cast<std::uint64_t>(limits.max_brute_bits)) {
    throw CapacityError("brute force needs n*tau <= " +
                        std::to_string(limits.max_brute_bits) + ", got " +
                        std::to_string(n) + "*" + std::to_string(tau));
  }

  // All 2^(n*tau) sequences in lexicographic order, pruned at the first stage
  // or transition a prefix violates; the first full sequence found is the
  // lexicographically first witness.
  const auto layers = satisfying_layers(instance, limits, stats);
  std::vector<size_t> position(static_cast<size_t>(tau), 0);
  std::vector<std::uint64_t> chosen(static_cast<size_t>(tau), 0);
  int level = 0;
  std::uint64_t tick = 0;
  while (level >= 0) {
    if ((++tick & 0xFFF) == 0) limits.check_deadline();
    auto& pos = position[static_cast<size_t>(level)];
    const auto& layer = layers[static_cast<size_t>(level)];
    bool advanced = false;
    while (pos < layer.size()) {
      const std::uint64_t candidate = layer[pos++];
      ++stats.assignments_enumerated;
      if (level > 0 &&
          std::popcount(candidate ^ chosen[static_cast<size_t>(level - 1)]) >
              instance.d) {
        continue;
      }
      chosen[static_cast<size_t>(level)] = candidate;
      advanced = true;
      break;
    }
    if (!advanced) {
      --level;  // exhausted: backtrack
      continue;
    }
    if (level == tau - 1) {
      return finish(instance, true, witness_from_masks(chosen, n),
                    std::move(stats), watch);
    }
    ++level;
    position[static_cast<size_t>(level)] = 0;
  }
  return finish(instance, false, std::nullopt, std::move(stats), watch);
}

std::optional<SolveOutcome> solve_special(const MultistageInstance& instance,
                                          const SolverLimits&) {
  require_2cnf(instance, "solve_special");
  Stopwatch watch;
  SolveStats stats;
  const int tau = instance.tau();

  if (tau == 1) {
    stats.algorithm = "special(tau=1)";
    auto model = solve_2sat(instance.n, instance.stages.front());
    if (!model) return finish(instance, false, std::nullopt, std::move(stats), watch);
    Witness witness;
    witness.assignments.push_back(std::move(*model));
    return finish(instance, true, std::move(witness), std::move(stats), watch);
  }
  if (instance.d == 0) {
    stats.algorithm = "special(d=0)";
    auto model = solve_2sat_conjunction(instance.n, instance.stages);
    if (!model) return finish(instance, false, std::nullopt, std::move(stats), watch);
    Witness witness;
    witness.assignments.assign(static_cast<size_t>(tau), *model);
    return finish(instance, true, std::move(witness), std::move(stats), watch);
  }
  if (instance.d == instance.n) {
    stats.algorithm = "special(d=n)";
    Witness witness;
    witness.assignments.reserve(static_cast<size_t>(tau));
    for (const StageFormula& stage : instance.stages) {
      auto model = solve_2sat(instance.n, stage);
      if (!model) return finish(instance, false, std::nullopt, std::move(stats), watch);
      witness.assignments.push_back(std::move(*model));
    }
    return finish(instance, true, std::move(witness), std::move(stats), watch);
  }
  return std::nullopt;
}

SolveOutcome solve_assignment_graph(const MultistageInstance& instance,
                                    const SolverLimits& limits) {
  Stopwatch watch;
  SolveStats stats;
  stats.algorithm = "assignment_graph";
  const int n = instance.n;
  const int tau = instance.tau();
  if (n >= 62 ||
      saturating_mul(1ull << n, static_cast<std::uint64_t>(tau)) >
          limits.max_graph_nodes) {
    throw CapacityError(
        "assignment graph needs tau*2^n <= " +
        std::to_string(limits.max_graph_nodes) + ", got n=" +
        std::to_string(n) + " tau=" + std::to_string(tau));
  }

  const auto layers = satisfying_layers(instance, limits, stats);
  stats.nodes = 2;  // s and t
  for (const auto& layer : layers) stats.nodes += layer.size();
  stats.arcs = layers.front().size() + layers.back().size();  // s and t arcs

  const std::uint64_t ball = hamming_ball_size(n, instance.d);
  std::uint64_t tick = 0;

  // Neighbors of `from` in `layer`, in the layer's lexicographic order.
  auto for_each_neighbor = [&](std::uint64_t from,
                               const std::vector<std::uint64_t>& layer,
                               const std::vector<std::uint64_t>& layer_sorted,
                               auto&& fn) {
    if (ball < layer.size()) {
      // Few possible flips: walk the hamming ball and keep members.
      for (int flips = 0; flips <= std::min(instance.d, n); ++flips) {
        for_each_combination(n, flips, [&](const std::vector<int>& subset) {
          if ((++tick & 0xFFF) == 0) limits.check_deadline();
          std::uint64_t flipped = from;
          for (int v : subset) flipped ^= 1ull << v;
          if (std::binary_search(layer_sorted.begin(), layer_sorted.end(),
                                 flipped)) {
            fn(flipped);
          }
        });
      }
    } else {
      for (std::uint64_t to : layer) {
        if ((++tick & 0xFFF) == 0) limits.check_deadline();
        if (std::popcount(from ^ to) <= instance.d) fn(to);
      }
    }
  };

  std::vector<std::vector<std::uint64_t>> sorted_layers(layers.size());
  for (size_t i = 0; i < layers.size(); ++i) {
    sorted_layers[i] = layers[i];
    std::sort(sorted_layers[i].begin(), sorted_layers[i].end());
  }

  // Full arc count and out-degree instrumentation over every node.
  for (int i = 0; i + 1 < tau; ++i) {
    const auto& layer = layers[static_cast<size_t>(i)];
    const auto& next = layers[static_cast<size_t>(i) + 1];
    const auto& next_sorted = sorted_layers[static_cast<size_t>(i) + 1];
    for (std::uint64_t from : layer) {
      std::uint64_t out_degree = 0;
      for_each_neighbor(from, next, next_sorted,
                        [&](std::uint64_t) { ++out_degree; });
      stats.max_out_degree = std::max(stats.max_out_degree, out_degree);
      stats.arcs += out_degree;
      if (stats.arcs > limits.max_graph_arcs) {
        throw CapacityError("assignment graph exceeds max arcs " +
                            std::to_string(limits.max_graph_arcs));
      }
    }
  }

  // Forward reachability with first-predecessor tracking. pred[i][j] is the
  // index in layer i-1 that first reaches node j of layer i (-2 = unreached,
  // -1 = source).
  std::vector<std::vector<int>> pred(layers.size());
  pred[0].assign(layers[0].size(), -1);
  for (int i = 0; i + 1 < tau; ++i) {
    const auto& layer = layers[static_cast<size_t>(i)];
    const auto& next = layers[static_cast<size_t>(i) + 1];
    const auto& next_sorted = sorted_layers[static_cast<size_t>(i) + 1];
    auto& next_pred = pred[static_cast<size_t>(i) + 1];
    next_pred.assign(next.size(), -2);
    std::unordered_map<std::uint64_t, size_t> index_of;
    index_of.reserve(next.size());
    for (size_t j = 0; j < next.size(); ++j) index_of.emplace(next[j], j);
    for (size_t from_index = 0; from_index < layer.size(); ++from_index) {
      if (pred[static_cast<size_t>(i)][from_index] == -2) continue;
      for_each_neighbor(layer[from_index], next, next_sorted,
                        [&](std::uint64_t to) {
                          const size_t j = index_of.at(to);
                          if (next_pred[j] == -2) {
                            next_pred[j] = static_cast<int>(from_index);
                          }
                        });
    }
  }

  const auto& last_pred = pred.back();
  int goal = -1;
  for (size_t j = 0; j < last_pred.size(); ++j) {
    if (last_pred[j] != -2) {
      goal = static_cast<int>(j);
      break;
    }
  }
  if (goal < 0) {
    return finish(instance, false, std::nullopt, std::move(stats), watch);
  }
  std::vector<std::uint64_t> path(static_cast<size_t>(tau));
  int node = goal;
  for (int i = tau - 1; i >= 0; --i) {
    path[static_cast<size_t>(i)] = layers[static_cast<size_t>(i)][static_cast<size_t>(node)];
    node = pred[static_cast<size_t>(i)][static_cast<size_t>(node)];
  }
  return finish(instance, true, witness_from_masks(path, n), std::move(stats),
                watch);
}

SolveOutcome solve_greedy(const MultistageInstance& instance,
                          const SolverLimits&) {
  Stopwatch watch;
  SolveStats stats;
  stats.algorithm = "greedy";
  require_2cnf(instance, "solve_greedy");
  const int m = instance.max_stage_clauses();
  if (2 * m >= instance.d) {
    throw UsageError("greedy requires 2m < d; m=" + std::to_string(m) +
                     " d=" + std::to_string(instance.d));
  }

  auto first = solve_2sat(instance.n, instance.stages.front());
  if (!first) return finish(instance, false, std::nullopt, std::move(stats), watch);
  ++stats.assignments_enumerated;

  Witness witness;
  witness.assignments.push_back(std::move(*first));
  for (int i = 1; i < instance.tau(); ++i) {
    const StageFormula& stage = instance.stages[static_cast<size_t>(i)];
    auto model = solve_2sat(instance.n, stage);
    if (!model) return finish(instance, false, std::nullopt, std::move(stats), watch);
    ++stats.assignments_enumerated;
    // Fresh values only on this stage's own variables.
    Assignment f = witness.assignments.back();
    for (const Clause& clause : stage.clauses) {
      for (const Literal& lit : clause.literals()) {
        f.values[static_cast<size_t>(lit.var)] =
            model->values[static_cast<size_t>(lit.var)];
      }
    }
    witness.assignments.push_back(std::move(f));
  }
  return finish(instance, true, std::move(witness), std::move(stats), watch);
}

SolveOutcome solve_m_n_d(const MultistageInstance& instance,
                         const SolverLimits& limits) {
  require_2cnf(instance, "solve_m_n_d");
  const int m = instance.max_stage_clauses();
  SolveOutcome outcome =
      2 * (m + instance.n - instance.d) >= 2 * instance.n - instance.d
          ? solve_assignment_graph(instance, limits)
          : solve_greedy(instance, limits);
  outcome.stats.algorithm = "mnd->" + outcome.stats.algorithm;
  return outcome;
}

SolveOutcome solve_dual(const MultistageInstance& instance,
                        const SolverLimits& limits) {
  require_2cnf(instance, "solve_dual");
  if (instance.tau() == 1 || instance.d == instance.n) {
    auto outcome = solve_special(instance, limits);
    outcome->stats.algorithm = "dual->" + outcome->stats.algorithm;
    return *outcome;
  }

  Stopwatch watch;
  SolveStats stats;
  stats.algorithm = "dual";
  const int n = instance.n;
  const int tau = instance.tau();
  const int keep = n - instance.d;  // >= 1 here

  const std::uint64_t partial_count =
      saturating_mul(binomial(n, keep), 1ull << std::min(keep, 62));
  if (saturating_mul(partial_count, partial_count) > limits.max_candidates) {
    throw CapacityError(
        "dual-parameter graph needs (C(n,n-d)*2^(n-d))^2 <= " +
        std::to_string(limits.max_candidates));
  }

  // All (Y, f_Y) with |Y| = n-d, Y-subsets and bit patterns in lex order.
  std::vector<PartialAssignment> partials;
  partials.reserve(partial_count);
  for_each_combination(n, keep, [&](const std::vector<int>& subset) {
    for (std::uint64_t counter = 0; counter < (1ull << keep); ++counter) {
      partials.push_back(
          partial_from_bits(subset, lex_counter_to_mask(counter, keep)));
    }
  });

  // Lazy per-stage feasibility of C_i under a partial assignment.
  std::vector<std::vector<signed char>> feasible(
      static_cast<size_t>(tau),
      std::vector<signed char>(partials.size(), -1));
  auto stage_allows = [&](int stage, size_t p) {
    signed char& entry = feasible[static_cast<size_t>(stage)][p];
    if (entry < 0) {
      const StageFormula& formula = instance.stages[static_cast<size_t>(stage)];
      entry = solve_2sat_with_fixed(n, std::span(&formula, 1), partials[p])
                  .has_value()
                  ? 1
                  : 0;
    }
    return entry == 1;
  };
  auto pair_allows = [&](int stage, size_t a, size_t b) {
    const StageFormula& formula = instance.stages[static_cast<size_t>(stage)];
    return solve_2sat_with_fixed(n, std::span(&formula, 1),
                                 partials[a].merged_with(partials[b]))
        .has_value();
  };

  std::uint64_t tick = 0;

  if (tau == 2) {
    // Single transition: one compatible pair pinning the agreement set.
    for (size_t a = 0; a < partials.size(); ++a) {
      for (size_t b = 0; b < partials.size(); ++b) {
        if ((++tick & 0x3F) == 0) limits.check_deadline();
        ++stats.assignments_enumerated;
        if (!partials[a].compatible_with(partials[b])) continue;
        if (!stage_allows(0, a)) continue;
        const PartialAssignment merged = partials[a].merged_with(partials[b]);
        const StageFormula& second = instance.stages[1];
        auto f2 = solve_2sat_with_fixed(n, std::span(&second, 1), merged);
        if (!f2) continue;
        const StageFormula& first_stage = instance.stages[0];
        auto f1 = solve_2sat_with_fixed(n, std::span(&first_stage, 1), partials[a]);
        Witness witness;
        witness.assignments.push_back(std::move(*f1));
        witness.assignments.push_back(std::move(*f2));
        stats.nodes = 1;
        return finish(instance, true, std::move(witness), std::move(stats),
                      watch);
      }
    }
    return finish(instance, false, std::nullopt, std::move(stats), watch);
  }

  // tau >= 3: layered path search over compatible pairs, built layer by
  // layer restricted to nodes reachable from s.
  struct Node {
    std::uint32_t first, second;
    int pred;  // index into the previous layer's nodes, -1 at layer 0
  };
  std::vector<std::vector<Node>> node_layers;
  node_layers.reserve(static_cast<size_t>(tau - 2));
  for (int layer = 0; layer + 2 < tau; ++layer) {
    std::vector<Node> nodes;
    if (layer == 0) {
      for (size_t a = 0; a < partials.size(); ++a) {
        if (!stage_allows(0, a)) continue;
        for (size_t b = 0; b < partials.size(); ++b) {
          if ((++tick & 0x3F) == 0) limits.check_deadline();
          ++stats.assignments_enumerated;
          if (!partials[a].compatible_with(partials[b])) continue;
          if (!stage_allows(2, b)) continue;
          if (!pair_allows(1, a, b)) continue;
          nodes.push_back({static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b), -1});
        }
      }
    } else {
      // First reachable predecessor per tail value, in node order.
      const auto& prev = node_layers.back();
      std::unordered_map<std::uint32_t, int> pred_of_tail;
      std::vector<std::uint32_t> tails;
      for (size_t i = 0; i < prev.size(); ++i) {
        if (pred_of_tail.emplace(prev[i].second, static_cast<int>(i)).second) {
          tails.push_back(prev[i].second);
        }
      }
      std::sort(tails.begin(), tails.end());
      for (std::uint32_t a : tails) {
        if (!stage_allows(layer, static_cast<size_t>(a))) continue;
        for (size_t b = 0; b < partials.size(); ++b) {
          if ((++tick & 0x3F) == 0) limits.check_deadline();
          ++stats.assignments_enumerated;
          if (!partials[a].compatible_with(partials[b])) continue;
          if (!stage_allows(layer + 2, b)) continue;
          if (!pair_allows(layer + 1, a, b)) continue;
          nodes.push_back({a, static_cast<std::uint32_t>(b),
                           pred_of_tail.at(a)});
          ++stats.arcs;
        }
      }
    }
    stats.nodes += nodes.size();
    if (nodes.empty()) {
      return finish(instance, false, std::nullopt, std::move(stats), watch);
    }
    node_layers.push_back(std::move(nodes));
  }

  // Trace back from the first node of the last layer.
  std::vector<CompatiblePairNode> path(static_cast<size_t>(tau - 2));
  int index = 0;
  for (int layer = tau - 3; layer >= 0; --layer) {
    const Node& node =
        node_layers[static_cast<size_t>(layer)][static_cast<size_t>(index)];
    path[static_cast<size_t>(layer)] = {layer,
                                        partials[node.first],
                                        partials[node.second]};
    index = node.pred;
  }

  // Agreement sets per transition: path[0].first, then every node's second.
  std::vector<PartialAssignment> agreements;
  agreements.reserve(static_cast<size_t>(tau - 1));
  agreements.push_back(path.front().first);
  for (const CompatiblePairNode& node : path) agreements.push_back(node.second);

  Witness witness;
  witness.assignments.reserve(static_cast<size_t>(tau));
  for (int i = 0; i < tau; ++i) {
    PartialAssignment fixed;
    if (i == 0) {
      fixed = agreements.front();
    } else if (i == tau - 1) {
      fixed = agreements.back();
    } else {
      fixed = agreements[static_cast<size_t>(i) - 1].merged_with(
          agreements[static_cast<size_t>(i)]);
    }
    const StageFormula& stage = instance.stages[static_cast<size_t>(i)];
    auto model = solve_2sat_with_fixed(n, std::span(&stage, 1), fixed);
    if (!model) throw std::logic_error("dual path stage went infeasible");
    witness.assignments.push_back(std::move(*model));
  }
  return finish(instance, true, std::move(witness), std::move(stats), watch);
}

SolveOutcome solve_tau_d(const MultistageInstance& instance,
                         const SolverLimits& limits) {
  require_2cnf(instance, "solve_tau_d");
  const int n = instance.n;
  const int tau = instance.tau();
  const std::uint64_t change_cap =
      static_cast<std::uint64_t>(tau) * static_cast<std::uint64_t>(instance.d);
  if (change_cap >= static_cast<std::uint64_t>(n)) {
    SolveOutcome outcome = solve_assignment_graph(instance, limits);
    outcome.stats.algorithm = "taud->" + outcome.stats.algorithm;
    return outcome;
  }

  Stopwatch watch;
  SolveStats stats;
  stats.algorithm = "taud";
  const int cap = static_cast<int>(change_cap);  // < n

  // Work estimate: sum over subset sizes of C(n,s) * 2^s * |F|^(tau-1).
  long double predicted = 0.0L;
  for (int s = 0; s <= cap; ++s) {
    const long double flips =
        static_cast<long double>(hamming_ball_size(s, std::min(s, instance.d)));
    predicted += static_cast<long double>(binomial(n, s)) *
                 std::pow(2.0L, s) * std::pow(flips, tau - 1);
  }
  if (predicted > static_cast<long double>(limits.max_candidates)) {
    throw CapacityError("tau*d enumeration needs <= " +
                        std::to_string(limits.max_candidates) +
                        " candidates, predicted ~" +
                        std::to_string(static_cast<double>(predicted)));
  }

  std::vector<StageFormula> simplified(static_cast<size_t>(tau));
  std::uint64_t tick = 0;
  SolveOutcome result;
  bool done = false;

  for (int s = 0; s <= cap && !done; ++s) {
    const int max_true = std::min(s, instance.d);
    // Flip patterns over s bits with at most max_true flips, in lexicographic
    // order; index 0 is the all-zero pattern.
    std::vector<std::uint64_t> flip_patterns;
    for (std::uint64_t counter = 0; counter < (1ull << s); ++counter) {
      const std::uint64_t mask = lex_counter_to_mask(counter, s);
      if (std::popcount(mask) <= max_true) flip_patterns.push_back(mask);
    }

    for_each_combination(n, s, [&](const std::vector<int>& subset) {
      if (done) return;
      for (std::uint64_t f1_counter = 0; f1_counter < (1ull << s) && !done;
           ++f1_counter) {
        const std::uint64_t f1 = lex_counter_to_mask(f1_counter, s);
        // Odometer over (g_2, ..., g_tau), rightmost digit fastest.
        std::vector<size_t> digits(static_cast<size_t>(tau > 0 ? tau - 1 : 0), 0);
        while (!done) {
          if ((++tick & 0xFF) == 0) limits.check_deadline();
          ++stats.assignments_enumerated;
          std::uint64_t value = f1;
          bool dead = false;
          for (int i = 0; i < tau; ++i) {
            if (i > 0) value ^= flip_patterns[digits[static_cast<size_t>(i - 1)]];
            simplified[static_cast<size_t>(i)] =
                simplify(instance.stages[static_cast<size_t>(i)],
                         partial_from_bits(subset, value));
            for (const Clause& clause :
                 simplified[static_cast<size_t>(i)].clauses) {
              if (clause.empty()) {
                dead = true;
                break;
              }
            }
            if (dead) break;
          }
          if (!dead) {
            auto residual = solve_2sat_conjunction(n, simplified);
            if (residual) {
              Witness witness;
              witness.assignments.reserve(static_cast<size_t>(tau));
              std::uint64_t value_bits = f1;
              for (int i = 0; i < tau; ++i) {
                if (i > 0) {
                  value_bits ^=
                      flip_patterns[digits[static_cast<size_t>(i - 1)]];
                }
                Assignment f = *residual;
                for (size_t j = 0; j < subset.size(); ++j) {
                  f.values[static_cast<size_t>(subset[j])] =
                      (value_bits >> j) & 1;
                }
                witness.assignments.push_back(std::move(f));
              }
              result = finish(instance, true, std::move(witness),
                              std::move(stats), watch);
              done = true;
              return;
            }
          }
          // Advance the odometer.
          int digit = static_cast<int>(digits.size()) - 1;
          while (digit >= 0 &&
                 digits[static_cast<size_t>(digit)] + 1 == flip_patterns.size()) {
            digits[static_cast<size_t>(digit)] = 0;
            --digit;
          }
          if (digit < 0) break;
          ++digits[static_cast<size_t>(digit)];
        }
      }
    });
  }
  if (done) return result;
  return finish(instance, false, std::nullopt, std::move(stats), watch);
}

SolveOutcome solve_auto(const MultistageInstance& instance,
                        const SolverLimits& limits) {
  require_2cnf(instance, "solve_auto");
  Stopwatch watch;
  KernelResult kernel = kernelize(instance);
  if (kernel.report.no_instance) {
    SolveStats stats;
    stats.algorithm = "auto(kernel-no)";
    stats.seconds = watch.elapsed();
    return {false, std::nullopt, std::move(stats)};
  }
  const MultistageInstance& reduced = *kernel.instance;

  auto lift = [&](SolveOutcome outcome) {
    if (outcome.yes) {
      Witness lifted =
          lift_witness(*outcome.witness, instance.n, kernel.report.var_map);
      if (!verify_witness(instance, lifted).ok()) {
        throw std::logic_error("lifted witness failed verification");
      }
      outcome.witness = std::move(lifted);
    }
    outcome.stats.algorithm = "auto(" + outcome.stats.algorithm + ")";
    outcome.stats.seconds = watch.elapsed();
    return outcome;
  };

  if (auto special = solve_special(reduced, limits)) {
    return lift(std::move(*special));
  }
  if (2 * reduced.max_stage_clauses() < reduced.d) {
    return lift(solve_greedy(reduced, limits));
  }

  // Predicted costs from the analyses of the three general algorithms.
  const long double n = reduced.n;
  const long double tau = reduced.tau();
  const long double d = reduced.d;
  const long double keep = n - d;
  const long double cost_graph =
      std::min(std::pow(2.0L, n) * std::pow(n, d), std::pow(4.0L, n)) * tau;
  const long double cost_dual =
      std::pow(n, 4 * keep + 1) * std::pow(2.0L, 4 * keep) * tau;
  const long double cost_taud =
      std::pow(n, 2 * tau * d) * std::pow(2.0L, tau * d + 1) * tau;

  struct Candidate {
    long double cost;
    SolveOutcome (*run)(const MultistageInstance&, const SolverLimits&);
    const char* name;
  };
  std::vector<Candidate> candidates = {
      {cost_graph, &solve_assignment_graph, "assignment_graph"},
      {cost_dual, &solve_dual, "dual"},
      {cost_taud, &solve_tau_d, "taud"},
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.cost < b.cost;
                   });
  for (const Candidate& candidate : candidates) {
    try {
      return lift(candidate.run(reduced, limits));
    } catch (const TimeoutError&) {
      throw;
    } catch (const CapacityError&) {
      // try the next-cheapest algorithm
    }
  }
  std::ostringstream os;
  os << "every algorithm exceeds its capacity guard; cheapest predicted was "
     << candidates.front().name << " (~" << static_cast<double>(candidates.front().cost)
     << " steps)";
  throw CapacityError(os.str());
}

}  // namespace msat
