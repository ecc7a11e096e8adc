#include "msat/kernelize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "msat/twosat.hpp"

namespace msat {

std::string KernelReport::summary() const {
  std::ostringstream os;
  os << "kernel_rounds=" << rounds << '\n';
  os << "kernel_no_instance=" << (no_instance ? 1 : 0) << '\n';
  if (unsat_stage >= 0) os << "kernel_unsat_stage=" << unsat_stage + 1 << '\n';
  os << "kernel_tautologies_removed=" << tautologies_removed << '\n';
  os << "kernel_duplicates_removed=" << duplicates_removed << '\n';
  os << "kernel_variables_dropped=" << variables_dropped << '\n';
  os << "kernel_n=" << before_n << "->" << after_n << '\n';
  int before_max = 0, after_max = 0;
  for (int m : before_m) before_max = std::max(before_max, m);
  for (int m : after_m) after_max = std::max(after_max, m);
  os << "kernel_m_max=" << before_max << "->" << after_max << '\n';
  os << "kernel_tau=" << before_tau << "->" << after_tau << '\n';
  return os.str();
}

Rr1Verdict rr_trivial_no(const MultistageInstance& instance) {
  if (instance.q > 2) {
    throw UsageError("rr_trivial_no needs q <= 2");
  }
  for (const StageFormula& stage : instance.stages) {
    if (!satisfiable_conjunction(instance.n, std::span(&stage, 1))) {
      return Rr1Verdict::no_instance;
    }
  }
  return Rr1Verdict::pass;
}

MultistageInstance rr_dedup(const MultistageInstance& instance, int* removed) {
  MultistageInstance result = instance;
  int dropped = 0;
  for (StageFormula& stage : result.stages) {
    std::set<Clause> seen;
    std::vector<Clause> kept;
    kept.reserve(stage.clauses.size());
    for (Clause& clause : stage.clauses) {
      if (seen.insert(clause).second) {
        kept.push_back(std::move(clause));
      } else {
        ++dropped;
      }
    }
    stage.clauses = std::move(kept);
  }
  if (removed != nullptr) *removed = dropped;
  return result;
}

std::pair<MultistageInstance, std::vector<int>> rr_drop_unused(
    const MultistageInstance& instance) {
  std::vector<bool> used(static_cast<size_t>(instance.n), false);
  for (const StageFormula& stage : instance.stages) {
    for (const Clause& clause : stage.clauses) {
      for (const Literal& lit : clause.literals()) {
        used[static_cast<size_t>(lit.var)] = true;
      }
    }
  }
  std::vector<int> var_map;
  std::vector<int> new_index(static_cast<size_t>(instance.n), -1);
  for (int v = 0; v < instance.n; ++v) {
    if (used[static_cast<size_t>(v)]) {
      new_index[static_cast<size_t>(v)] = static_cast<int>(var_map.size());
      var_map.push_back(v);
    }
  }
  const int new_n = static_cast<int>(var_map.size());

  MultistageInstance result;
  result.n = new_n;
  result.q = instance.q;
  result.d = std::min(instance.d, new_n);
  result.stages.reserve(instance.stages.size());
  for (const StageFormula& stage : instance.stages) {
    StageFormula mapped;
    mapped.clauses.reserve(stage.clauses.size());
    for (const Clause& clause : stage.clauses) {
      std::vector<Literal> lits;
      lits.reserve(clause.literals().size());
      for (const Literal& lit : clause.literals()) {
        lits.push_back({new_index[static_cast<size_t>(lit.var)], lit.negated});
      }
      mapped.clauses.emplace_back(std::move(lits));
    }
    result.stages.push_back(std::move(mapped));
  }
  return {std::move(result), std::move(var_map)};
}

KernelResult kernelize(const MultistageInstance& instance) {
  if (instance.q > 2) {
    throw UsageError("kernelize needs q <= 2");
  }
  KernelReport report;
  report.before_n = instance.n;
  report.before_tau = instance.tau();
  for (const StageFormula& stage : instance.stages) {
    report.before_m.push_back(stage.size());
  }

  MultistageInstance current = instance;
  // Composed new -> original map across rounds.
  std::vector<int> composed(static_cast<size_t>(instance.n));
  for (int v = 0; v < instance.n; ++v) composed[static_cast<size_t>(v)] = v;

  bool changed = true;
  while (changed) {
    changed = false;
    ++report.rounds;

    for (int stage_index = 0; stage_index < current.tau(); ++stage_index) {
      const StageFormula& stage =
          current.stages[static_cast<size_t>(stage_index)];
      if (!satisfiable_conjunction(current.n, std::span(&stage, 1))) {
        report.no_instance = true;
        report.unsat_stage = stage_index;
        report.after_n = current.n;
        report.after_tau = current.tau();
        for (const StageFormula& s : current.stages) {
          report.after_m.push_back(s.size());
        }
        report.var_map = std::move(composed);
        return {std::nullopt, std::move(report)};
      }
    }

    const MultistageInstance canonical = canonicalize(current);
    for (int i = 0; i < current.tau(); ++i) {
      const int delta = current.stages[static_cast<size_t>(i)].size() -
                        canonical.stages[static_cast<size_t>(i)].size();
      report.tautologies_removed += delta;
      if (delta != 0) changed = true;
    }

    int dup_removed = 0;
    MultistageInstance deduped = rr_dedup(canonical, &dup_removed);
    report.duplicates_removed += dup_removed;
    if (dup_removed != 0) changed = true;

    auto [compacted, var_map] = rr_drop_unused(deduped);
    if (compacted.n != deduped.n) {
      report.variables_dropped += deduped.n - compacted.n;
      changed = true;
      std::vector<int> next(var_map.size());
      for (size_t i = 0; i < var_map.size(); ++i) {
        next[i] = composed[static_cast<size_t>(var_map[i])];
      }
      composed = std::move(next);
    }
    current = std::move(compacted);
  }

  report.after_n = current.n;
  report.after_tau = current.tau();
  for (const StageFormula& stage : current.stages) {
    report.after_m.push_back(stage.size());
  }
  report.var_map = std::move(composed);
  return {std::move(current), std::move(report)};
}

Witness lift_witness(const Witness& witness, int original_n,
                     const std::vector<int>& var_map) {
  Witness lifted;
  lifted.assignments.reserve(witness.assignments.size());
  for (const Assignment& f : witness.assignments) {
    if (f.size() != static_cast<int>(var_map.size())) {
      throw UsageError("witness does not match the kernel variable map");
    }
    Assignment full(original_n, false);
    for (size_t i = 0; i < var_map.size(); ++i) {
      full.values[static_cast<size_t>(var_map[i])] = f.values[i];
    }
    lifted.assignments.push_back(std::move(full));
  }
  return lifted;
}

}  // namespace msat
