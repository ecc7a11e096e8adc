#pragma once
// Text formats. Instance files are DIMACS-flavored:
//
//   c free-form comment
//   p msat <q> <n> <tau> <d>
//   s <m_1>
//   <lit> ... 0        (m_1 clause lines; literal k>0 is variable k-1,
//   ...                 negative k is its negation)
//   s <m_2>
//   ...
//
// Witness files are tau lines of n characters from {0,1}, line i being f_i
// (1 = true). Graph files (generator sources) are:
//
//   p graph <nv> <ne>
//   e <u> <v>          (ne lines, 1-indexed endpoints)
//   part <v> <v> ...   (optional; one line per class of a vertex partition)
//
// Serializers emit canonical output: LF newlines, single spaces, no trailing
// whitespace, clause literals in canonical order. parse(serialize(x)) == x.

#include <string>
#include <string_view>
#include <vector>

#include "msat/formula.hpp"
#include "msat/generate.hpp"

namespace msat {

// Malformed input; message carries the 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
};

// Clause width is checked against q on the raw literal count per line,
// before duplicate-literal normalization. d > n is clamped to n and noted in
// `warnings`.
MultistageInstance parse_instance(std::string_view text,
                                  std::vector<std::string>* warnings = nullptr);
std::string serialize_instance(const MultistageInstance& instance);

Witness parse_witness(std::string_view text);
std::string serialize_witness(const Witness& witness);

Graph parse_graph(std::string_view text);

// Plain DIMACS CNF ("p cnf <n> <m>"), one clause per line, raw literal lists
// preserved (duplicates kept) since the 3-SAT reduction needs exact literal
// slots.
struct DimacsCnf {
  int num_vars = 0;
  std::vector<std::vector<Literal>> clauses;
};
DimacsCnf parse_dimacs_cnf(std::string_view text);

}  // namespace msat
