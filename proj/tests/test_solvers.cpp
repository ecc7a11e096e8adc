#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "msat/generate.hpp"
#include "msat/solve.hpp"
#include "msat/twosat.hpp"

using namespace msat;
using namespace msat::testing;

namespace {

SolverLimits test_limits() {
  SolverLimits limits;
  limits.max_brute_bits = 36;  // pruned search keeps this cheap at test scale
  return limits;
}

MultistageInstance random_small(std::mt19937_64& rng, int max_n, int max_tau,
                                int max_bits = 18) {
  while (true) {
    RandomInstanceParams params;
    params.seed = rng();
    params.n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    params.tau = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_tau));
    if (params.n * params.tau > max_bits) continue;
    params.d = static_cast<int>(rng() % static_cast<unsigned>(params.n + 1));
    params.clauses_per_stage = static_cast<int>(rng() % (2u * params.n + 1));
    return random_instance(params);
  }
}

}  // namespace

TEST_CASE("solve_brute basics") {
  CHECK_FALSE(solve_brute(instance(1, 0, {{{1}}, {{-1}}})).yes);

  const auto flip = solve_brute(instance(1, 1, {{{1}}, {{-1}}}));
  REQUIRE(flip.yes);
  CHECK(*flip.witness == witness({{1}, {0}}));

  // Frozen via full-enumeration oracle: first valid sequence in lex order.
  const auto inst = instance(2, 1, {{{1, 2}}, {{-1}}, {{-2}}});
  const auto expected = oracle_first_witness(inst);
  REQUIRE(expected.has_value());
  CHECK(*expected == witness({{0, 1}, {0, 0}, {0, 0}}));
  const auto outcome = solve_brute(inst);
  REQUIRE(outcome.yes);
  CHECK(*outcome.witness == *expected);
}

TEST_CASE("solve_brute matches the flat enumeration oracle") {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = random_small(rng, 4, 3, 12);
    const auto expected = oracle_first_witness(inst);
    const auto outcome = solve_brute(inst);
    CHECK(outcome.yes == expected.has_value());
    if (expected) CHECK(*outcome.witness == *expected);
  }
}

TEST_CASE("solve_brute capacity guard") {
  RandomInstanceParams params;
  params.n = 13;
  params.tau = 2;
  params.clauses_per_stage = 2;
  CHECK_THROWS_AS(solve_brute(random_instance(params)), CapacityError);
}

TEST_CASE("solve_special") {
  const auto single = solve_special(instance(1, 0, {{{1}}}));
  REQUIRE(single.has_value());
  CHECK(single->yes);
  CHECK(*single->witness == witness({{1}}));

  const auto frozen = solve_special(instance(1, 0, {{{1}}, {{-1}}}));
  REQUIRE(frozen.has_value());
  CHECK_FALSE(frozen->yes);

  const auto decoupled = solve_special(instance(2, 2, {{{1}}, {{-1, -2}}}));
  REQUIRE(decoupled.has_value());
  CHECK(decoupled->yes);

  CHECK_FALSE(solve_special(instance(2, 1, {{{1}}, {{-1}}})).has_value());
  CHECK_THROWS_AS(solve_special(instance(3, 0, {{{1, 2, 3}}}, 3)), UsageError);

  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 120; ++trial) {
    auto inst = random_small(rng, 4, 3, 12);
    switch (trial % 3) {
      case 0:
        inst.stages.resize(1);
        break;
      case 1:
        inst.d = 0;
        break;
      default:
        inst.d = inst.n;
        break;
    }
    const auto special = solve_special(inst);
    REQUIRE(special.has_value());
    CHECK(special->yes == oracle_yes(inst));
    if (inst.d == 0 && inst.tau() > 1) {
      CHECK(special->yes == satisfiable_conjunction(inst.n, inst.stages));
    }
    if (inst.d == inst.n && inst.tau() > 1) {
      bool each = true;
      for (const auto& stage : inst.stages) {
        each = each && solve_2sat(inst.n, stage).has_value();
      }
      CHECK(special->yes == each);
    }
  }
}

TEST_CASE("solve_assignment_graph") {
  const auto flip = solve_assignment_graph(instance(1, 1, {{{1}}, {{-1}}}));
  REQUIRE(flip.yes);
  CHECK(flip.stats.max_layer == 1);

  CHECK_FALSE(solve_assignment_graph(instance(1, 1, {{{1}, {-1}}, {{1}}})).yes);

  std::mt19937_64 rng(331);
  const auto limits = test_limits();
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_small(rng, 7, 4, 18);
    const auto outcome = solve_assignment_graph(inst, limits);
    CHECK(outcome.yes == solve_brute(inst, limits).yes);
    if (outcome.yes) CHECK(verify_witness(inst, *outcome.witness).ok());

    // instrumented bounds from the construction
    CHECK(outcome.stats.max_layer <= (1ull << inst.n));
    std::uint64_t ball = 0;
    for (int j = 0; j <= inst.d; ++j) {
      std::uint64_t c = 1;
      for (int i = 0; i < j; ++i) c = c * (inst.n - i) / (i + 1);
      ball += c;
    }
    CHECK(outcome.stats.max_out_degree <= ball);
  }
}

TEST_CASE("solve_assignment_graph capacity guard") {
  RandomInstanceParams params;
  params.n = 30;
  params.tau = 2;
  params.clauses_per_stage = 1;
  params.d = 1;
  CHECK_THROWS_AS(solve_assignment_graph(random_instance(params)), CapacityError);
}

TEST_CASE("solve_greedy") {
  // disjoint unit-clause stages, m = 1, d = 3 > 2m
  const auto disjoint = solve_greedy(instance(3, 3, {{{1}}, {{2}}, {{3}}}));
  CHECK(disjoint.yes);

  const auto wide = solve_greedy(instance(3, 3, {{{1}}, {{-1}}}));
  REQUIRE(wide.yes);
  CHECK(hamming(wide.witness->assignments[0], wide.witness->assignments[1]) <= 2);

  CHECK_THROWS_WITH_AS(solve_greedy(instance(3, 2, {{{1}, {2}}, {{3}}})),
                       "greedy requires 2m < d; m=2 d=2", UsageError);

  // per-stage unsatisfiable (empty clause): answers no instead of erroring
  const auto empty_clause =
      MultistageInstance::make(3, 2, {StageFormula{{Clause{}}}}, 3);
  CHECK_FALSE(solve_greedy(empty_clause).yes);

  std::mt19937_64 rng(337);
  const auto limits = test_limits();
  int checked = 0;
  while (checked < 60) {
    RandomInstanceParams params;
    params.seed = rng();
    params.n = 5 + static_cast<int>(rng() % 3);
    params.tau = 1 + static_cast<int>(rng() % 3);
    params.clauses_per_stage = 1 + static_cast<int>(rng() % 2);
    params.d = 2 * params.clauses_per_stage + 1 +
               static_cast<int>(rng() % 2);
    if (params.d > params.n) continue;
    const auto inst = random_instance(params);
    bool stages_ok = true;
    for (const auto& stage : inst.stages) {
      stages_ok = stages_ok && oracle_satisfiable(inst.n, stage);
    }
    if (!stages_ok) continue;
    ++checked;
    const auto outcome = solve_greedy(inst, limits);
    REQUIRE(outcome.yes);
    const int m = inst.max_stage_clauses();
    for (int i = 0; i + 1 < inst.tau(); ++i) {
      CHECK(hamming(outcome.witness->assignments[static_cast<size_t>(i)],
                    outcome.witness->assignments[static_cast<size_t>(i + 1)]) <=
            2 * m);
    }
    CHECK(solve_brute(inst, limits).yes);
  }
}

TEST_CASE("solve_m_n_d dispatch") {
  const auto greedy_branch = solve_m_n_d(instance(3, 3, {{{1}}, {{2}}}));
  CHECK(greedy_branch.stats.algorithm == "mnd->greedy");

  const auto graph_branch = solve_m_n_d(instance(2, 1, {{{1}}, {{-1}}}));
  CHECK(graph_branch.stats.algorithm == "mnd->assignment_graph");

  std::mt19937_64 rng(347);
  const auto limits = test_limits();
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_small(rng, 6, 4, 18);
    CHECK(solve_m_n_d(inst, limits).yes == solve_brute(inst, limits).yes);
  }
}

TEST_CASE("solve_dual small tau and degenerate budget") {
  const auto one = solve_dual(instance(1, 0, {{{1}}}));
  CHECK(one.yes);
  CHECK(one.stats.algorithm == "dual->special(tau=1)");

  const auto loose = solve_dual(instance(2, 2, {{{1}}, {{-1}}, {{1}}}));
  CHECK(loose.yes);
  CHECK(loose.stats.algorithm == "dual->special(d=n)");

  std::mt19937_64 rng(353);
  const auto limits = test_limits();
  for (int trial = 0; trial < 120; ++trial) {
    auto inst = random_small(rng, 6, 1, 6);
    inst.stages.push_back(inst.stages.front());  // tau = 2
    if (inst.d == inst.n) inst.d = inst.n - 1;
    const auto outcome = solve_dual(inst, limits);
    CHECK(outcome.yes == solve_brute(inst, limits).yes);
  }
}

TEST_CASE("solve_dual pins an agreement set") {
  const auto inst = instance(2, 1, {{{1}}, {{1}}, {{-1}}});
  const auto outcome = solve_dual(inst);
  REQUIRE(outcome.yes);
  const auto& w = outcome.witness->assignments;
  CHECK(w[0].values[0] == true);
  CHECK(w[1].values[0] == true);
  CHECK(w[2].values[0] == false);  // x flips at the 2->3 transition
}

TEST_CASE("solve_dual matches the oracle") {
  std::mt19937_64 rng(359);
  const auto limits = test_limits();
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_small(rng, 6, 5, 30);
    if (inst.tau() < 3) continue;
    const auto outcome = solve_dual(inst, limits);
    CHECK(outcome.yes == solve_brute(inst, limits).yes);
    if (outcome.yes) CHECK(verify_witness(inst, *outcome.witness).ok());
  }
}

TEST_CASE("solve_tau_d") {
  // d = 0: only the empty change set is enumerated
  const auto frozen = solve_tau_d(instance(2, 0, {{{1, 2}}, {{-1, 2}}}));
  CHECK(frozen.yes == satisfiable_conjunction(
                          2, instance(2, 0, {{{1, 2}}, {{-1, 2}}}).stages));

  const auto flip = solve_tau_d(instance(1, 1, {{{1}}, {{-1}}}));
  CHECK(flip.yes);
  CHECK(flip.stats.algorithm == "taud->assignment_graph");  // tau*d >= n

  const auto direct = solve_tau_d(instance(4, 1, {{{1}}, {{-1}}, {{2, 3}}}));
  CHECK(direct.stats.algorithm == "taud");
  CHECK(direct.yes);

  std::mt19937_64 rng(367);
  const auto limits = test_limits();
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_small(rng, 6, 3, 18);
    inst.d = std::min(inst.d, 2);
    const auto outcome = solve_tau_d(inst, limits);
    CHECK(outcome.yes == solve_brute(inst, limits).yes);
    if (outcome.yes) CHECK(verify_witness(inst, *outcome.witness).ok());
  }
}

TEST_CASE("solve_auto routing") {
  const auto single = solve_auto(instance(1, 0, {{{1}}}));
  CHECK(single.stats.algorithm == "auto(special(tau=1))");

  // n - d = 1 with large d and many stages: dual predicted cheapest. Each
  // stage pairs up all 12 variables so the kernel keeps everything and the
  // m=6, d=11 combination rules out the special and greedy routes.
  StageFormula paired;
  for (int v = 0; v < 12; v += 2) {
    paired.clauses.push_back(Clause{pos(v), pos(v + 1)});
  }
  const auto inst = MultistageInstance::make(
      12, 2, std::vector<StageFormula>(10, paired), 11);
  const auto outcome = solve_auto(inst);
  CHECK(outcome.yes);
  CHECK(outcome.stats.algorithm.find("dual") != std::string::npos);

  const auto dead = solve_auto(instance(1, 0, {{{1}, {-1}}, {{1}}}));
  CHECK_FALSE(dead.yes);
  CHECK(dead.stats.algorithm == "auto(kernel-no)");
}

TEST_CASE("solve_auto matches the oracle and lifts witnesses") {
  std::mt19937_64 rng(373);
  const auto limits = test_limits();
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_small(rng, 6, 4, 18);
    const auto outcome = solve_auto(inst, limits);
    CHECK(outcome.yes == solve_brute(inst, limits).yes);
    if (outcome.yes) CHECK(verify_witness(inst, *outcome.witness).ok());
  }
}

TEST_CASE("cross-algorithm agreement") {
  std::mt19937_64 rng(379);
  const auto limits = test_limits();
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = random_small(rng, 7, 4, 18);
    const bool expected = solve_brute(inst, limits).yes;
    CHECK(solve_assignment_graph(inst, limits).yes == expected);
    CHECK(solve_m_n_d(inst, limits).yes == expected);
    CHECK(solve_tau_d(inst, limits).yes == expected);
    CHECK(solve_auto(inst, limits).yes == expected);
    if (inst.tau() >= 3) CHECK(solve_dual(inst, limits).yes == expected);
  }
}

TEST_CASE("monotone in the budget and decoupled at d = n") {
  std::mt19937_64 rng(383);
  const auto limits = test_limits();
  for (int trial = 0; trial < 80; ++trial) {
    auto inst = random_small(rng, 5, 3, 15);
    if (inst.d < inst.n) {
      auto looser = inst;
      looser.d = inst.d + 1;
      if (solve_auto(inst, limits).yes) CHECK(solve_auto(looser, limits).yes);
    }
    auto decoupled = inst;
    decoupled.d = decoupled.n;
    bool per_stage = true;
    for (const auto& stage : decoupled.stages) {
      per_stage = per_stage && solve_2sat(decoupled.n, stage).has_value();
    }
    CHECK(solve_auto(decoupled, limits).yes == per_stage);
  }
}
