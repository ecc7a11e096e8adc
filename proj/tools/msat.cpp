// Command-line front end: solve, kernelize, generate, verify, bench.
//
// Exit codes: solve 0=yes 1=no, verify 0=ok 1=violation, kernelize 0=reduced
// 1=no-instance, bench 0=ok 1=disagreement; 2 is usage, parse, or capacity
// failure for every subcommand.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "msat/bench.hpp"
#include "msat/generate.hpp"
#include "msat/io.hpp"
#include "msat/kernelize.hpp"
#include "msat/solve.hpp"

namespace {

using namespace msat;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

MultistageInstance load_instance(const std::string& path) {
  std::vector<std::string> warnings;
  MultistageInstance instance = parse_instance(read_file(path), &warnings);
  for (const std::string& warning : warnings) {
    std::cerr << "warning: " << path << ": " << warning << '\n';
  }
  return instance;
}

const std::map<std::string, SolverFn>& solver_registry() {
  static const std::map<std::string, SolverFn> registry = {
      {"auto", [](const MultistageInstance& i, const SolverLimits& l) { return solve_auto(i, l); }},
      {"brute", [](const MultistageInstance& i, const SolverLimits& l) { return solve_brute(i, l); }},
      {"graph", [](const MultistageInstance& i, const SolverLimits& l) { return solve_assignment_graph(i, l); }},
      {"greedy", [](const MultistageInstance& i, const SolverLimits& l) { return solve_greedy(i, l); }},
      {"mnd", [](const MultistageInstance& i, const SolverLimits& l) { return solve_m_n_d(i, l); }},
      {"dual", [](const MultistageInstance& i, const SolverLimits& l) { return solve_dual(i, l); }},
      {"taud", [](const MultistageInstance& i, const SolverLimits& l) { return solve_tau_d(i, l); }},
  };
  return registry;
}

struct SolveArgs {
  std::string instance_path;
  std::string algo = "auto";
  std::string witness_out;
  bool stats = false;
  std::uint64_t max_nodes = 0;
};

struct KernelizeArgs {
  std::string instance_path;
  std::string out;
  bool stats = false;
};

struct GenerateArgs {
  std::string from;
  std::string cnf_path;
  std::string graph_path;
  std::vector<std::string> inputs;
  int k = 0;
  std::uint64_t seed = 0;
  int n = 4;
  int tau = 2;
  int q = 2;
  int d = 1;
  int clauses = 4;
  std::string out;
};

struct VerifyArgs {
  std::string instance_path;
  std::string witness_path;
};

struct BenchArgs {
  std::string corpus_dir;
  std::vector<std::string> algos = {"auto"};
  double timeout_s = 10.0;
  std::string csv_out;
  int jobs = 1;
  std::uint64_t max_nodes = 0;
};

SolverLimits make_limits(std::uint64_t max_nodes_flag) {
  if (max_nodes_flag != 0) return SolverLimits::with_budget(max_nodes_flag);
  if (const char* env = std::getenv("MSAT_MAX_NODES")) {
    const std::uint64_t budget = std::strtoull(env, nullptr, 10);
    if (budget != 0) return SolverLimits::with_budget(budget);
  }
  return SolverLimits{};
}

int cmd_solve(const SolveArgs& args) {
  const MultistageInstance instance = load_instance(args.instance_path);
  const SolverLimits limits = make_limits(args.max_nodes);
  const SolveOutcome outcome = solver_registry().at(args.algo)(instance, limits);
  std::cout << (outcome.yes ? "YES" : "NO") << '\n';
  if (outcome.yes && !args.witness_out.empty()) {
    write_file(args.witness_out, serialize_witness(*outcome.witness));
  }
  if (args.stats) std::cout << outcome.stats.to_key_values();
  return outcome.yes ? 0 : 1;
}

int cmd_kernelize(const KernelizeArgs& args) {
  const MultistageInstance instance = load_instance(args.instance_path);
  const KernelResult result = kernelize(instance);
  if (args.stats) std::cerr << result.report.summary();
  if (result.report.no_instance) {
    std::cout << "NO\n";
    return 1;
  }
  const std::string text = serialize_instance(*result.instance);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    write_file(args.out, text);
  }
  return 0;
}

int cmd_generate(const GenerateArgs& args) {
  MultistageInstance instance;
  std::vector<std::string> warnings;
  if (args.from == "wsat") {
    const DimacsCnf cnf = parse_dimacs_cnf(read_file(args.cnf_path));
    StageFormula formula;
    for (const auto& lits : cnf.clauses) formula.clauses.emplace_back(lits);
    instance = from_weighted_2sat(cnf.num_vars, formula, args.k);
  } else if (args.from == "3sat") {
    const DimacsCnf cnf = parse_dimacs_cnf(read_file(args.cnf_path));
    std::vector<std::array<Literal, 3>> clauses;
    for (const auto& lits : cnf.clauses) {
      if (lits.size() != 3) {
        throw UsageError("3sat source clauses must have exactly 3 literals");
      }
      clauses.push_back({lits[0], lits[1], lits[2]});
    }
    instance = from_3sat(cnf.num_vars, clauses);
  } else if (args.from == "mis") {
    instance = from_mis(parse_graph(read_file(args.graph_path)));
  } else if (args.from == "vc") {
    instance = from_vertex_cover(parse_graph(read_file(args.graph_path)), args.k);
  } else if (args.from == "and") {
    if (args.inputs.empty()) {
      throw UsageError("--from and needs --inputs instance files");
    }
    std::vector<MultistageInstance> blocks;
    for (const std::string& path : args.inputs) {
      blocks.push_back(load_instance(path));
    }
    instance = and_compose(blocks);
  } else {  // random
    RandomInstanceParams params;
    params.seed = args.seed;
    params.n = args.n;
    params.tau = args.tau;
    params.q = args.q;
    params.d = args.d;
    params.clauses_per_stage = args.clauses;
    instance = random_instance(params, &warnings);
  }
  for (const std::string& warning : warnings) {
    std::cerr << "warning: " << warning << '\n';
  }

  std::ostringstream summary;
  if (args.from == "random") summary << "seed=" << args.seed << ' ';
  summary << "n=" << instance.n << " tau=" << instance.tau() << " d="
          << instance.d << '\n';
  const std::string text = serialize_instance(instance);
  if (args.out.empty()) {
    std::cout << text;
    std::cerr << summary.str();
  } else {
    write_file(args.out, text);
    std::cout << summary.str();
  }
  return 0;
}

int cmd_verify(const VerifyArgs& args) {
  const MultistageInstance instance = load_instance(args.instance_path);
  const Witness witness = parse_witness(read_file(args.witness_path));
  const VerifyResult result = verify_witness(instance, witness);
  std::cout << result.message() << '\n';
  return result.ok() ? 0 : 1;
}

int cmd_bench(const BenchArgs& args) {
  std::vector<std::pair<std::string, MultistageInstance>> corpus;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(args.corpus_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".msat") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    corpus.emplace_back(path.filename().string(), load_instance(path.string()));
  }

  std::vector<std::pair<std::string, SolverFn>> algos;
  for (const std::string& name : args.algos) {
    auto it = solver_registry().find(name);
    if (it == solver_registry().end()) {
      throw UsageError("unknown algorithm '" + name + "'");
    }
    algos.emplace_back(it->first, it->second);
  }

  const auto timeout = std::chrono::milliseconds(
      static_cast<long long>(args.timeout_s * 1000.0));
  const BenchResult result =
      run_bench(corpus, algos, timeout, args.jobs, make_limits(args.max_nodes));

  const std::string csv = to_csv(result.rows);
  if (args.csv_out.empty()) {
    std::cout << csv;
  } else {
    write_file(args.csv_out, csv);
  }
  for (const BenchRow& row : result.rows) {
    if (row.answer == "error") {
      std::cerr << row.instance << " " << row.algo << ": " << row.detail << '\n';
    }
  }
  if (!result.disagreements.empty()) {
    for (const std::string& line : result.disagreements) {
      std::cerr << "disagreement: " << line << '\n';
    }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multistage 2-SAT solver toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "decide an instance file");
  solve->add_option("instance", solve_args.instance_path, "instance file")
      ->required();
  solve->add_option("--algo", solve_args.algo, "algorithm")
      ->check(CLI::IsMember({"auto", "brute", "graph", "greedy", "mnd", "dual",
                             "taud"}));
  solve->add_option("--witness", solve_args.witness_out,
                    "write the witness here on yes");
  solve->add_flag("--stats", solve_args.stats, "print key=value statistics");
  solve->add_option("--max-nodes", solve_args.max_nodes,
                    "override every capacity guard");

  KernelizeArgs kernelize_args;
  auto* kern = app.add_subcommand("kernelize", "apply the data reduction rules");
  kern->add_option("instance", kernelize_args.instance_path, "instance file")
      ->required();
  kern->add_option("--out", kernelize_args.out, "output file (default stdout)");
  kern->add_flag("--stats", kernelize_args.stats, "report reductions on stderr");

  GenerateArgs generate_args;
  auto* gen = app.add_subcommand("generate", "emit an instance file");
  gen->add_option("--from", generate_args.from, "construction")
      ->required()
      ->check(CLI::IsMember({"wsat", "3sat", "mis", "vc", "and", "random"}));
  gen->add_option("--cnf", generate_args.cnf_path, "DIMACS CNF source");
  gen->add_option("--graph", generate_args.graph_path, "graph source");
  gen->add_option("--inputs", generate_args.inputs,
                  "instance files for --from and");
  gen->add_option("--k", generate_args.k, "budget (wsat/vc)");
  gen->add_option("--seed", generate_args.seed, "random seed");
  gen->add_option("--n", generate_args.n, "variables (random)");
  gen->add_option("--tau", generate_args.tau, "stages (random)");
  gen->add_option("--q", generate_args.q, "clause width bound (random)");
  gen->add_option("--d", generate_args.d, "change budget (random)");
  gen->add_option("--clauses", generate_args.clauses,
                  "clauses per stage (random)");
  gen->add_option("--out", generate_args.out, "output file (default stdout)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a witness");
  verify->add_option("instance", verify_args.instance_path, "instance file")
      ->required();
  verify->add_option("witness", verify_args.witness_path, "witness file")
      ->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run algorithms over a corpus");
  bench->add_option("corpus", bench_args.corpus_dir, "directory of .msat files")
      ->required();
  bench->add_option("--algos", bench_args.algos, "algorithms to run")
      ->delimiter(',');
  bench->add_option("--timeout", bench_args.timeout_s, "seconds per cell");
  bench->add_option("--csv", bench_args.csv_out, "CSV output file");
  bench->add_option("--jobs", bench_args.jobs, "parallel cells");
  bench->add_option("--max-nodes", bench_args.max_nodes,
                    "override every capacity guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*kern) return cmd_kernelize(kernelize_args);
    if (*gen) return cmd_generate(generate_args);
    if (*verify) return cmd_verify(verify_args);
    if (*bench) return cmd_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
