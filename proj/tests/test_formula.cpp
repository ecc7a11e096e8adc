#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "msat/formula.hpp"

using namespace msat;
using namespace msat::testing;

namespace {

StageFormula random_formula(std::mt19937_64& rng, int n, int clauses,
                            int max_width = 2) {
  StageFormula formula;
  for (int c = 0; c < clauses; ++c) {
    const int width = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_width));
    std::vector<Literal> lits;
    for (int i = 0; i < width; ++i) {
      lits.push_back({static_cast<int>(rng() % static_cast<unsigned>(n)),
                      (rng() & 1) != 0});
    }
    formula.clauses.emplace_back(std::move(lits));
  }
  return formula;
}

Assignment random_assignment(std::mt19937_64& rng, int n) {
  std::vector<bool> values(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<size_t>(i)] = (rng() & 1) != 0;
  return Assignment(std::move(values));
}

}  // namespace

TEST_CASE("hamming distance") {
  CHECK(hamming(assignment({0, 0, 0}), assignment({0, 0, 0})) == 0);
  CHECK(hamming(assignment({0, 1}), assignment({1, 0})) == 2);
  CHECK(hamming(assignment({1, 0, 1, 0}), assignment({1, 1, 1, 0})) == 1);
  CHECK_THROWS_AS(hamming(assignment({0}), assignment({0, 1})), UsageError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Assignment a = random_assignment(rng, n);
    const Assignment b = random_assignment(rng, n);
    const Assignment c = random_assignment(rng, n);
    CHECK(hamming(a, b) == hamming(b, a));
    CHECK(hamming(a, a) == 0);
    CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
  }
}

TEST_CASE("evaluate") {
  CHECK(evaluate(assignment({1}), stage({{1}})));
  CHECK_FALSE(evaluate(assignment({0, 0}), stage({{1, 2}})));
  CHECK(evaluate(assignment({0}), StageFormula{}));
  // empty clause is never satisfied
  CHECK_FALSE(evaluate(assignment({1}), StageFormula{{Clause{}}}));
  CHECK_THROWS_AS(evaluate(assignment({1}), stage({{2}})), UsageError);
}

TEST_CASE("simplify") {
  const PartialAssignment x_true({0}, {true});
  const PartialAssignment x_false({0}, {false});

  CHECK(simplify(stage({{1, 2}}), x_true) == StageFormula{});
  CHECK(simplify(stage({{1, 2}, {-1, 2}}), x_true) == stage({{2}}));

  const StageFormula contradiction = simplify(stage({{1}}), x_false);
  REQUIRE(contradiction.size() == 1);
  CHECK(contradiction.clauses.front().empty());
}

TEST_CASE("simplify agrees with direct evaluation on all extensions") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 variables
    const StageFormula formula = random_formula(rng, n, 1 + static_cast<int>(rng() % 7));
    std::vector<int> domain;
    std::vector<bool> values;
    for (int v = 0; v < n; ++v) {
      if (rng() & 1) {
        domain.push_back(v);
        values.push_back((rng() & 1) != 0);
      }
    }
    const PartialAssignment fixed(domain, values);
    const StageFormula reduced = simplify(formula, fixed);
    for (const Clause& clause : reduced.clauses) {
      for (const Literal& l : clause.literals()) {
        CHECK_FALSE(fixed.value_of(l.var).has_value());
      }
    }
    std::vector<bool> bits(static_cast<size_t>(n), false);
    do {
      Assignment f(bits);
      bool extends = true;
      for (size_t i = 0; i < domain.size(); ++i) {
        if (f.values[static_cast<size_t>(domain[i])] != values[i]) extends = false;
      }
      if (!extends) continue;
      CHECK(evaluate(f, formula) == evaluate(f, reduced));
    } while (next_lex(bits));
  }
}

TEST_CASE("verify_witness") {
  const auto ok = verify_witness(instance(1, 0, {{{1}}, {{1}}}), witness({{1}, {1}}));
  CHECK(ok.ok());

  const auto too_far =
      verify_witness(instance(1, 0, {{{1}}, {{-1}}}), witness({{1}, {0}}));
  CHECK_FALSE(too_far.ok());
  CHECK(too_far.violation == VerifyResult::Violation::distance_exceeded);
  CHECK(too_far.index == 0);
  CHECK(too_far.distance == 1);

  CHECK(verify_witness(instance(1, 1, {{{1}}, {{-1}}}), witness({{1}, {0}})).ok());

  const auto unsat =
      verify_witness(instance(1, 1, {{{1}}, {{-1}}}), witness({{1}, {1}}));
  CHECK(unsat.violation == VerifyResult::Violation::unsatisfied_stage);
  CHECK(unsat.index == 1);

  CHECK_THROWS_AS(
      verify_witness(instance(1, 0, {{{1}}, {{1}}}), witness({{1}})),
      UsageError);
  CHECK_THROWS_AS(
      verify_witness(instance(1, 0, {{{1}}, {{1}}}), witness({{1, 0}, {1, 0}})),
      UsageError);
}

TEST_CASE("verify_witness matches exhaustive solution enumeration") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int tau = 1 + static_cast<int>(rng() % 3);
    std::vector<StageFormula> stages;
    for (int i = 0; i < tau; ++i) {
      stages.push_back(random_formula(rng, n, static_cast<int>(rng() % 4)));
    }
    const auto inst = MultistageInstance::make(
        n, 2, std::move(stages), static_cast<int>(rng() % static_cast<unsigned>(n + 1)));
    const auto solutions = oracle_all_witnesses(inst);
    for (int w = 0; w < 25; ++w) {
      Witness candidate;
      for (int i = 0; i < tau; ++i) {
        candidate.assignments.push_back(random_assignment(rng, n));
      }
      const bool listed =
          std::find(solutions.begin(), solutions.end(), candidate) != solutions.end();
      CHECK(verify_witness(inst, candidate).ok() == listed);
    }
  }
}

TEST_CASE("canonicalize") {
  CHECK(clause({2, 1}) == clause({1, 2}));            // sorted at construction
  CHECK(clause({1, 1}) == clause({1}));               // duplicate literal
  CHECK(canonicalize(stage({{1, -1}, {2}})) == stage({{2}}));

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    StageFormula formula = random_formula(rng, n, 1 + static_cast<int>(rng() % 6));
    if (rng() & 1) {  // sprinkle in a tautology
      const int v = static_cast<int>(rng() % static_cast<unsigned>(n));
      formula.clauses.push_back(Clause{pos(v), neg(v)});
    }
    const StageFormula canonical = canonicalize(formula);
    CHECK(canonicalize(canonical) == canonical);
    CHECK(oracle_models(n, formula) == oracle_models(n, canonical));
  }
}

TEST_CASE("instance construction clamps d") {
  std::vector<std::string> warnings;
  const auto inst =
      MultistageInstance::make(2, 2, {stage({{1}})}, 5, &warnings);
  CHECK(inst.d == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings.front().find("clamped") != std::string::npos);

  CHECK_THROWS_AS(MultistageInstance::make(2, 2, {}, 0), UsageError);
  CHECK_THROWS_AS(MultistageInstance::make(2, 2, {stage({{3}})}, 0), UsageError);
  CHECK_THROWS_AS(MultistageInstance::make(2, 1, {stage({{1, 2}})}, 0),
                  UsageError);
}

TEST_CASE("partial assignments") {
  const PartialAssignment p({3, 1}, {true, false});
  CHECK(p.domain() == std::vector<int>{1, 3});
  CHECK(p.value_of(1) == false);
  CHECK(p.value_of(3) == true);
  CHECK_FALSE(p.value_of(2).has_value());
  CHECK_THROWS_AS(PartialAssignment({1, 1}, {true, true}), UsageError);

  const PartialAssignment q({1, 2}, {false, true});
  CHECK(p.compatible_with(q));
  const PartialAssignment merged = p.merged_with(q);
  CHECK(merged.domain() == std::vector<int>{1, 2, 3});
  CHECK(merged.value_of(2) == true);

  const PartialAssignment clash({1}, {true});
  CHECK_FALSE(p.compatible_with(clash));
  CHECK_THROWS_AS(p.merged_with(clash), UsageError);
}
