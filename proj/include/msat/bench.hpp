#pragma once
// Benchmark harness behind `msat bench`: runs a set of solvers over a corpus
// with per-cell timeouts, emits CSV rows in a fixed deterministic order, and
// flags yes/no disagreements between solvers.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "msat/formula.hpp"
#include "msat/solve.hpp"

namespace msat {

using SolverFn =
    std::function<SolveOutcome(const MultistageInstance&, const SolverLimits&)>;

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string answer;  // yes | no | timeout | error
  double seconds = 0.0;
  std::uint64_t nodes = 0;
  std::uint64_t arcs = 0;
  std::uint64_t assignments = 0;
  std::string detail;  // error text, empty otherwise
};

struct BenchResult {
  std::vector<BenchRow> rows;  // instance-major, algos in the given order
  // One line per instance whose solvers returned differing yes/no answers.
  std::vector<std::string> disagreements;
};

// Cells run in parallel up to `jobs` threads; every cell gets `base` limits
// plus a deadline `timeout` from its start. Row order is independent of
// completion order.
BenchResult run_bench(
    const std::vector<std::pair<std::string, MultistageInstance>>& corpus,
    const std::vector<std::pair<std::string, SolverFn>>& algos,
    std::chrono::milliseconds timeout, int jobs, const SolverLimits& base);

std::string bench_csv_header();
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace msat
