#pragma once
// Core data model shared by every algorithm: literals, clauses, stage
// formulas, multistage instances, (partial) assignments, witnesses, and the
// evaluation/simplification/distance primitives.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace msat {

// Caller violated an operation's precondition (bad shape, bad parameter).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Work or memory would exceed the configured guard.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A variable index together with a sign. Ordering is (var, negated) with the
// positive literal first; this order is the canonical within-clause order.
struct Literal {
  int var = 0;
  bool negated = false;

  friend constexpr bool operator==(const Literal&, const Literal&) = default;
  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

constexpr Literal pos(int var) { return {var, false}; }
constexpr Literal neg(int var) { return {var, true}; }

// Disjunction of literals, kept sorted and duplicate-free. An empty clause is
// representable and means "unsatisfiable"; simplification produces it when a
// clause loses all its literals. Tautologies (x or not-x) are representable
// too and only removed by canonicalize().
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Literal> lits)
      : Clause(std::vector<Literal>(lits)) {}
  explicit Clause(std::vector<Literal> lits);

  const std::vector<Literal>& literals() const { return lits_; }
  int width() const { return static_cast<int>(lits_.size()); }
  bool empty() const { return lits_.empty(); }
  bool tautological() const;
  int max_var() const;  // -1 when empty

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

// One stage's CNF formula. Duplicate clauses are allowed (rr_dedup removes
// them); clause order is meaningful for serialization.
struct StageFormula {
  std::vector<Clause> clauses;

  int size() const { return static_cast<int>(clauses.size()); }
  friend bool operator==(const StageFormula&, const StageFormula&) = default;
};

// The full problem input: n variables, width bound q, the stage sequence, and
// the per-transition change budget d. Use make() for checked construction;
// it clamps d > n down to n (a budget of n already allows arbitrary change)
// and reports the clamp through `warnings`.
struct MultistageInstance {
  int n = 0;
  int q = 2;
  std::vector<StageFormula> stages;
  int d = 0;

  int tau() const { return static_cast<int>(stages.size()); }
  int max_stage_clauses() const;  // m: max clause count over all stages

  static MultistageInstance make(int n, int q, std::vector<StageFormula> stages,
                                 int d,
                                 std::vector<std::string>* warnings = nullptr);
  void validate() const;  // throws UsageError on any invariant violation

  friend bool operator==(const MultistageInstance&,
                         const MultistageInstance&) = default;
};

// Total truth assignment; values[v] is the value of variable v.
struct Assignment {
  std::vector<bool> values;

  Assignment() = default;
  explicit Assignment(std::vector<bool> v) : values(std::move(v)) {}
  Assignment(int n, bool fill) : values(static_cast<size_t>(n), fill) {}

  int size() const { return static_cast<int>(values.size()); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Candidate solution: one assignment per stage.
struct Witness {
  std::vector<Assignment> assignments;

  int size() const { return static_cast<int>(assignments.size()); }
  friend bool operator==(const Witness&, const Witness&) = default;
};

// Assignment of a subset of the variables. Domain is kept sorted; values are
// aligned with the sorted domain.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::vector<int> domain, std::vector<bool> values);

  const std::vector<int>& domain() const { return domain_; }
  const std::vector<bool>& values() const { return values_; }
  int size() const { return static_cast<int>(domain_.size()); }
  std::optional<bool> value_of(int var) const;

  // Agree on every shared variable.
  bool compatible_with(const PartialAssignment& other) const;
  // Union of two compatible partial assignments.
  PartialAssignment merged_with(const PartialAssignment& other) const;

  friend bool operator==(const PartialAssignment&,
                         const PartialAssignment&) = default;

 private:
  std::vector<int> domain_;
  std::vector<bool> values_;
};

// |{x : a(x) != b(x)}|. Throws UsageError on length mismatch.
int hamming(const Assignment& a, const Assignment& b);

bool evaluate(const Assignment& f, const Clause& clause);
// True iff every clause has a literal evaluated true; the empty formula is
// vacuously true. Throws UsageError if a literal's variable is out of range.
bool evaluate(const Assignment& f, const StageFormula& formula);

// Substitute the fixed variables: clauses with a satisfied literal are
// removed, falsified literals are deleted from the rest, and a clause that
// loses all literals is kept as an empty clause so the contradiction stays
// visible. The result mentions only variables outside the fixed domain.
StageFormula simplify(const StageFormula& formula,
                      const PartialAssignment& fixed);

// Per-clause duplicate literal removal happens at Clause construction; this
// additionally drops tautological clauses. Idempotent, order preserving.
StageFormula canonicalize(const StageFormula& formula);
MultistageInstance canonicalize(const MultistageInstance& instance);

struct VerifyResult {
  enum class Violation { none, unsatisfied_stage, distance_exceeded };

  Violation violation = Violation::none;
  int index = -1;    // 0-based: stage index, or transition index i (stage i -> i+1)
  int distance = 0;  // offending distance, for distance_exceeded

  bool ok() const { return violation == Violation::none; }
  std::string message() const;  // human-readable, 1-based indices
};

// Checks both solution conditions: every stage satisfied and every
// consecutive distance within budget. Reports the first violation. Shape
// mismatches (wrong witness length, wrong assignment length) throw.
VerifyResult verify_witness(const MultistageInstance& instance,
                            const Witness& witness);

}  // namespace msat
