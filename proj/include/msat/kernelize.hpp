#pragma once
// Data reduction: unsatisfiable-stage short-circuit, duplicate-clause
// removal, unused-variable removal, and the fixpoint driver that yields the
// O(n^2 tau) / O(m tau) kernels.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msat/formula.hpp"

namespace msat {

struct KernelReport {
  int rounds = 0;
  int unsat_stage = -1;        // 0-based stage RR1 fired on, -1 otherwise
  int tautologies_removed = 0;
  int duplicates_removed = 0;  // RR2
  int variables_dropped = 0;   // RR3
  int before_n = 0, after_n = 0;
  int before_tau = 0, after_tau = 0;
  std::vector<int> before_m, after_m;  // per-stage clause counts
  std::vector<int> var_map;            // new index -> original index
  bool no_instance = false;

  // Line-oriented key=value summary for CLI --stats.
  std::string summary() const;
};

enum class Rr1Verdict { pass, no_instance };

// Reduction rule 1: answer no outright when some stage is unsatisfiable on
// its own. Needs q <= 2 (per-stage 2-SAT check).
Rr1Verdict rr_trivial_no(const MultistageInstance& instance);

// Reduction rule 2: within each stage keep the first occurrence of every
// clause. Expects canonical clauses so reordered duplicates compare equal.
MultistageInstance rr_dedup(const MultistageInstance& instance,
                            int* removed = nullptr);

// Reduction rule 3: drop variables occurring in no stage and compact the
// index space. Returns the map from new to original indices.
std::pair<MultistageInstance, std::vector<int>> rr_drop_unused(
    const MultistageInstance& instance);

struct KernelResult {
  std::optional<MultistageInstance> instance;  // empty iff no_instance
  KernelReport report;
};

// RR1, canonicalize, RR2, RR3, looped to fixpoint. Equivalent instance out,
// or an immediate no. Needs q <= 2.
KernelResult kernelize(const MultistageInstance& instance);

// Extend a witness of the reduced instance back to the original variable
// space; variables removed by RR3 stay false in every stage.
Witness lift_witness(const Witness& witness, int original_n,
                     const std::vector<int>& var_map);

}  // namespace msat
