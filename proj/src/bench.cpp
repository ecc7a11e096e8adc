#include "msat/bench.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace msat {

BenchResult run_bench(
    const std::vector<std::pair<std::string, MultistageInstance>>& corpus,
    const std::vector<std::pair<std::string, SolverFn>>& algos,
    std::chrono::milliseconds timeout, int jobs, const SolverLimits& base) {
  BenchResult result;
  const size_t cells = corpus.size() * algos.size();
  result.rows.resize(cells);
  if (cells == 0) return result;

  std::atomic<size_t> next_cell{0};
  auto worker = [&]() {
    while (true) {
      const size_t cell = next_cell.fetch_add(1);
      if (cell >= cells) return;
      const auto& [path, instance] = corpus[cell / algos.size()];
      const auto& [algo_name, solver] = algos[cell % algos.size()];
      BenchRow& row = result.rows[cell];
      row.instance = path;
      row.algo = algo_name;
      SolverLimits limits = base;
      limits.deadline = std::chrono::steady_clock::now() + timeout;
      const auto start = std::chrono::steady_clock::now();
      try {
        SolveOutcome outcome = solver(instance, limits);
        row.answer = outcome.yes ? "yes" : "no";
        row.seconds = outcome.stats.seconds;
        row.nodes = outcome.stats.nodes;
        row.arcs = outcome.stats.arcs;
        row.assignments = outcome.stats.assignments_enumerated;
      } catch (const TimeoutError&) {
        row.answer = "timeout";
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
      } catch (const std::exception& e) {
        row.answer = "error";
        row.detail = e.what();
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
      }
    }
  };

  const int thread_count =
      std::max(1, std::min<int>(jobs, static_cast<int>(cells)));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  for (size_t i = 0; i < corpus.size(); ++i) {
    std::string yes_algo, no_algo;
    for (size_t a = 0; a < algos.size(); ++a) {
      const BenchRow& row = result.rows[i * algos.size() + a];
      if (row.answer == "yes" && yes_algo.empty()) yes_algo = row.algo;
      if (row.answer == "no" && no_algo.empty()) no_algo = row.algo;
    }
    if (!yes_algo.empty() && !no_algo.empty()) {
      result.disagreements.push_back(corpus[i].first + ": " + yes_algo +
                                     "=yes " + no_algo + "=no");
    }
  }
  return result;
}

std::string bench_csv_header() {
  return "instance,algo,answer,seconds,nodes,arcs,assignments\n";
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << bench_csv_header();
  for (const BenchRow& row : rows) {
    os << row.instance << ',' << row.algo << ',' << row.answer << ','
       << row.seconds << ',' << row.nodes << ',' << row.arcs << ','
       << row.assignments << '\n';
  }
  return os.str();
}

}  // namespace msat
