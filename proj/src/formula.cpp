#include "msat/formula.hpp"

#include <algorithm>
#include <sstream>

namespace msat {

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Clause::tautological() const {
  // Sorted order puts x directly before not-x.
  for (size_t i = 0; i + 1 < lits_.size(); ++i) {
    if (lits_[i].var == lits_[i + 1].var) return true;
  }
  return false;
}

int Clause::max_var() const {
  return lits_.empty() ? -1 : lits_.back().var;
}

int MultistageInstance::max_stage_clauses() const {
  int m = 0;
  for (const auto& stage : stages) m = std::max(m, stage.size());
  return m;
}

MultistageInstance MultistageInstance::make(
    int n, int q, std::vector<StageFormula> stages, int d,
    std::vector<std::string>* warnings) {
  MultistageInstance instance{n, q, std::move(stages), d};
  if (d > n) {
    instance.d = n;
    if (warnings != nullptr) {
      std::ostringstream os;
      os << "d=" << d << " exceeds n=" << n << "; clamped to " << n;
      warnings->push_back(os.str());
    }
  }
  instance.validate();
  return instance;
}

void MultistageInstance::validate() const {
  if (n < 0) throw UsageError("variable count must be non-negative");
  if (q < 1) throw UsageError("clause width bound q must be at least 1");
  if (stages.empty()) throw UsageError("instance needs at least one stage");
  if (d < 0 || d > n) throw UsageError("change budget d must lie in [0, n]");
  for (size_t i = 0; i < stages.size(); ++i) {
    for (const Clause& clause : stages[i].clauses) {
      if (clause.width() > q) {
        throw UsageError("stage " + std::to_string(i + 1) +
                         " has a clause wider than q=" + std::to_string(q));
      }
      if (clause.max_var() >= n) {
        throw UsageError("stage " + std::to_string(i + 1) +
                         " references a variable outside [0, n)");
      }
    }
  }
}

PartialAssignment::PartialAssignment(std::vector<int> domain,
                                     std::vector<bool> values) {
  if (domain.size() != values.size()) {
    throw UsageError("partial assignment domain/value length mismatch");
  }
  std::vector<size_t> order(domain.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return domain[a] < domain[b]; });
  domain_.reserve(domain.size());
  values_.reserve(values.size());
  for (size_t i : order) {
    if (!domain_.empty() && domain_.back() == domain[i]) {
      throw UsageError("partial assignment domain contains duplicates");
    }
    domain_.push_back(domain[i]);
    values_.push_back(values[i]);
  }
}

std::optional<bool> PartialAssignment::value_of(int var) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), var);
  if (it == domain_.end() || *it != var) return std::nullopt;
  return values_[static_cast<size_t>(it - domain_.begin())];
}

bool PartialAssignment::compatible_with(const PartialAssignment& other) const {
  size_t i = 0, j = 0;
  while (i < domain_.size() && j < other.domain_.size()) {
    if (domain_[i] < other.domain_[j]) {
      ++i;
    } else if (domain_[i] > other.domain_[j]) {
      ++j;
    } else {
      if (values_[i] != other.values_[j]) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

PartialAssignment PartialAssignment::merged_with(
    const PartialAssignment& other) const {
  if (!compatible_with(other)) {
    throw UsageError("cannot merge incompatible partial assignments");
  }
  std::vector<int> domain;
  std::vector<bool> values;
  domain.reserve(domain_.size() + other.domain_.size());
  size_t i = 0, j = 0;
  while (i < domain_.size() || j < other.domain_.size()) {
    if (j == other.domain_.size() ||
        (i < domain_.size() && domain_[i] <= other.domain_[j])) {
      if (j < other.domain_.size() && domain_[i] == other.domain_[j]) ++j;
      domain.push_back(domain_[i]);
      values.push_back(values_[i]);
      ++i;
    } else {
      domain.push_back(other.domain_[j]);
      values.push_back(other.values_[j]);
      ++j;
    }
  }
  PartialAssignment merged;
  merged.domain_ = std::move(domain);
  merged.values_ = std::move(values);
  return merged;
}

int hamming(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) {
    throw UsageError("hamming distance needs equal-length assignments");
  }
  int count = 0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    count += a.values[i] != b.values[i];
  }
  return count;
}

bool evaluate(const Assignment& f, const Clause& clause) {
  for (const Literal& lit : clause.literals()) {
    if (lit.var < 0 || lit.var >= f.size()) {
      throw UsageError("literal variable out of range");
    }
    if (f.values[static_cast<size_t>(lit.var)] != lit.negated) return true;
  }
  return false;
}

bool evaluate(const Assignment& f, const StageFormula& formula) {
  for (const Clause& clause : formula.clauses) {
    if (!evaluate(f, clause)) return false;
  }
  return true;
}

StageFormula simplify(const StageFormula& formula,
                      const PartialAssignment& fixed) {
  StageFormula result;
  result.clauses.reserve(formula.clauses.size());
  std::vector<Literal> remaining;
  for (const Clause& clause : formula.clauses) {
    remaining.clear();
    bool satisfied = false;
    for (const Literal& lit : clause.literals()) {
      if (auto value = fixed.value_of(lit.var)) {
        if (*value != lit.negated) {
          satisfied = true;
          break;
        }
        // falsified literal: dropped
      } else {
        remaining.push_back(lit);
      }
    }
    if (!satisfied) result.clauses.emplace_back(remaining);
  }
  return result;
}

StageFormula canonicalize(const StageFormula& formula) {
  StageFormula result;
  result.clauses.reserve(formula.clauses.size());
  for (const Clause& clause : formula.clauses) {
    if (!clause.tautological()) result.clauses.push_back(clause);
  }
  return result;
}

MultistageInstance canonicalize(const MultistageInstance& instance) {
  MultistageInstance result = instance;
  for (StageFormula& stage : result.stages) stage = canonicalize(stage);
  return result;
}

std::string VerifyResult::message() const {
  std::ostringstream os;
  switch (violation) {
    case Violation::none:
      os << "ok";
      break;
    case Violation::unsatisfied_stage:
      os << "stage " << index + 1 << " unsatisfied";
      break;
    case Violation::distance_exceeded:
      os << "transition " << index + 1 << "->" << index + 2 << " distance "
         << distance << " exceeds budget";
      break;
  }
  return os.str();
}

VerifyResult verify_witness(const MultistageInstance& instance,
                            const Witness& witness) {
  if (witness.size() != instance.tau()) {
    throw UsageError("witness length does not match stage count");
  }
  for (const Assignment& f : witness.assignments) {
    if (f.size() != instance.n) {
      throw UsageError("witness assignment length does not match n");
    }
  }
  for (int i = 0; i < instance.tau(); ++i) {
    if (!evaluate(witness.assignments[static_cast<size_t>(i)],
                  instance.stages[static_cast<size_t>(i)])) {
      return {VerifyResult::Violation::unsatisfied_stage, i, 0};
    }
  }
  for (int i = 0; i + 1 < instance.tau(); ++i) {
    int dist = hamming(witness.assignments[static_cast<size_t>(i)],
                       witness.assignments[static_cast<size_t>(i) + 1]);
    if (dist > instance.d) {
      return {VerifyResult::Violation::distance_exceeded, i, dist};
    }
  }
  return {};
}

}  // namespace msat
