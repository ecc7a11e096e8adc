#include "msat/io.hpp"

#include <cctype>
#include <sstream>

namespace msat {

namespace {

struct Line {
  int number;  // 1-based
  std::string text;
};

// Non-empty, non-comment lines with their original numbers.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (raw[first] == 'c') continue;
    size_t last = raw.find_last_not_of(" \t\r");
    lines.push_back({number, std::string(raw.substr(first, last - first + 1))});
    if (end == text.size()) break;
  }
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

long long parse_int(const Line& line, const std::string& token,
                    const char* what) {
  size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &consumed);
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" +
                                      token + "'");
  }
  if (consumed != token.size()) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" +
                                      token + "'");
  }
  return value;
}

}  // namespace

MultistageInstance parse_instance(std::string_view text,
                                  std::vector<std::string>* warnings) {
  const std::vector<Line> lines = content_lines(text);
  size_t pos = 0;
  if (pos == lines.size()) throw ParseError(1, "missing 'p msat' header");

  const Line& header = lines[pos];
  auto head_tokens = tokens_of(header.text);
  if (head_tokens.size() != 6 || head_tokens[0] != "p" ||
      head_tokens[1] != "msat") {
    throw ParseError(header.number, "expected header 'p msat <q> <n> <tau> <d>'");
  }
  const long long q = parse_int(header, head_tokens[2], "q");
  const long long n = parse_int(header, head_tokens[3], "n");
  const long long tau = parse_int(header, head_tokens[4], "tau");
  const long long d = parse_int(header, head_tokens[5], "d");
  if (q < 1) throw ParseError(header.number, "q must be at least 1");
  if (n < 0) throw ParseError(header.number, "n must be non-negative");
  if (tau < 1) throw ParseError(header.number, "tau must be at least 1");
  if (d < 0) throw ParseError(header.number, "d must be non-negative");
  ++pos;

  std::vector<StageFormula> stages;
  stages.reserve(static_cast<size_t>(tau));
  for (long long stage_index = 0; stage_index < tau; ++stage_index) {
    if (pos == lines.size()) {
      throw ParseError(lines.back().number,
                       "expected stage header 's <m>' for stage " +
                           std::to_string(stage_index + 1));
    }
    const Line& stage_header = lines[pos];
    auto stage_tokens = tokens_of(stage_header.text);
    if (stage_tokens.size() != 2 || stage_tokens[0] != "s") {
      throw ParseError(stage_header.number,
                       "expected stage header 's <m>' for stage " +
                           std::to_string(stage_index + 1));
    }
    const long long clause_count =
        parse_int(stage_header, stage_tokens[1], "clause count");
    if (clause_count < 0) {
      throw ParseError(stage_header.number, "clause count must be non-negative");
    }
    ++pos;

    StageFormula stage;
    stage.clauses.reserve(static_cast<size_t>(clause_count));
    for (long long c = 0; c < clause_count; ++c) {
      if (pos == lines.size()) {
        throw ParseError(lines.back().number,
                         "stage " + std::to_string(stage_index + 1) +
                             " is missing clause lines");
      }
      const Line& clause_line = lines[pos];
      auto clause_tokens = tokens_of(clause_line.text);
      if (clause_tokens.empty() || clause_tokens.back() != "0") {
        throw ParseError(clause_line.number,
                         "clause line must be terminated by 0");
      }
      std::vector<Literal> lits;
      lits.reserve(clause_tokens.size() - 1);
      for (size_t t = 0; t + 1 < clause_tokens.size(); ++t) {
        const long long lit = parse_int(clause_line, clause_tokens[t], "literal");
        if (lit == 0) {
          throw ParseError(clause_line.number,
                           "literal 0 before end of clause line");
        }
        const long long magnitude = lit > 0 ? lit : -lit;
        if (magnitude > n) {
          throw ParseError(clause_line.number,
                           "literal " + std::to_string(lit) +
                               " exceeds variable count " + std::to_string(n));
        }
        lits.push_back({static_cast<int>(magnitude - 1), lit < 0});
      }
      if (static_cast<long long>(lits.size()) > q) {
        throw ParseError(clause_line.number,
                         "clause width " + std::to_string(lits.size()) +
                             " exceeds q=" + std::to_string(q));
      }
      stage.clauses.emplace_back(std::move(lits));
      ++pos;
    }
    stages.push_back(std::move(stage));
  }
  if (pos != lines.size()) {
    throw ParseError(lines[pos].number, "unexpected content after final stage");
  }
  return MultistageInstance::make(static_cast<int>(n), static_cast<int>(q),
                                  std::move(stages), static_cast<int>(d),
                                  warnings);
}

std::string serialize_instance(const MultistageInstance& instance) {
  std::ostringstream os;
  os << "p msat " << instance.q << ' ' << instance.n << ' ' << instance.tau()
     << ' ' << instance.d << '\n';
  for (const StageFormula& stage : instance.stages) {
    os << "s " << stage.size() << '\n';
    for (const Clause& clause : stage.clauses) {
      for (const Literal& lit : clause.literals()) {
        os << (lit.negated ? -(lit.var + 1) : lit.var + 1) << ' ';
      }
      os << "0\n";
    }
  }
  return os.str();
}

Witness parse_witness(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "witness file has no assignment lines");
  Witness witness;
  witness.assignments.reserve(lines.size());
  const size_t n = lines.front().text.size();
  for (const Line& line : lines) {
    if (line.text.size() != n) {
      throw ParseError(line.number, "assignment line length differs from first line");
    }
    Assignment f(static_cast<int>(n), false);
    for (size_t i = 0; i < n; ++i) {
      if (line.text[i] == '1') {
        f.values[i] = true;
      } else if (line.text[i] != '0') {
        throw ParseError(line.number, "assignment characters must be 0 or 1");
      }
    }
    witness.assignments.push_back(std::move(f));
  }
  return witness;
}

std::string serialize_witness(const Witness& witness) {
  std::ostringstream os;
  for (const Assignment& f : witness.assignments) {
    for (bool value : f.values) os << (value ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

Graph parse_graph(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  size_t pos = 0;
  if (pos == lines.size()) throw ParseError(1, "missing 'p graph' header");
  const Line& header = lines[pos];
  auto head_tokens = tokens_of(header.text);
  if (head_tokens.size() != 4 || head_tokens[0] != "p" ||
      head_tokens[1] != "graph") {
    throw ParseError(header.number, "expected header 'p graph <nv> <ne>'");
  }
  const long long nv = parse_int(header, head_tokens[2], "vertex count");
  const long long ne = parse_int(header, head_tokens[3], "edge count");
  if (nv < 0 || ne < 0) {
    throw ParseError(header.number, "vertex/edge counts must be non-negative");
  }
  ++pos;

  Graph graph;
  graph.num_vertices = static_cast<int>(nv);
  for (long long e = 0; e < ne; ++e) {
    if (pos == lines.size()) {
      throw ParseError(lines.back().number, "missing edge lines");
    }
    const Line& line = lines[pos];
    auto edge_tokens = tokens_of(line.text);
    if (edge_tokens.size() != 3 || edge_tokens[0] != "e") {
      throw ParseError(line.number, "expected edge line 'e <u> <v>'");
    }
    const long long u = parse_int(line, edge_tokens[1], "vertex");
    const long long v = parse_int(line, edge_tokens[2], "vertex");
    if (u < 1 || u > nv || v < 1 || v > nv) {
      throw ParseError(line.number, "edge endpoint outside [1, nv]");
    }
    if (u == v) throw ParseError(line.number, "self-loops are not allowed");
    graph.edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    ++pos;
  }

  std::vector<std::vector<int>> partition;
  while (pos < lines.size()) {
    const Line& line = lines[pos];
    auto part_tokens = tokens_of(line.text);
    if (part_tokens.empty() || part_tokens[0] != "part") {
      throw ParseError(line.number, "expected 'part <v> ...' or end of file");
    }
    std::vector<int> cls;
    for (size_t t = 1; t < part_tokens.size(); ++t) {
      const long long v = parse_int(line, part_tokens[t], "vertex");
      if (v < 1 || v > nv) {
        throw ParseError(line.number, "partition vertex outside [1, nv]");
      }
      cls.push_back(static_cast<int>(v - 1));
    }
    if (cls.empty()) throw ParseError(line.number, "empty partition class");
    partition.push_back(std::move(cls));
    ++pos;
  }
  if (!partition.empty()) graph.partition = std::move(partition);
  graph.validate();
  return graph;
}

DimacsCnf parse_dimacs_cnf(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  size_t pos = 0;
  if (pos == lines.size()) throw ParseError(1, "missing 'p cnf' header");
  const Line& header = lines[pos];
  auto head_tokens = tokens_of(header.text);
  if (head_tokens.size() != 4 || head_tokens[0] != "p" ||
      head_tokens[1] != "cnf") {
    throw ParseError(header.number, "expected header 'p cnf <n> <m>'");
  }
  const long long n = parse_int(header, head_tokens[2], "variable count");
  const long long m = parse_int(header, head_tokens[3], "clause count");
  if (n < 0 || m < 0) {
    throw ParseError(header.number, "counts must be non-negative");
  }
  ++pos;

  DimacsCnf cnf;
  cnf.num_vars = static_cast<int>(n);
  for (long long c = 0; c < m; ++c) {
    if (pos == lines.size()) {
      throw ParseError(lines.back().number, "missing clause lines");
    }
    const Line& line = lines[pos];
    auto clause_tokens = tokens_of(line.text);
    if (clause_tokens.empty() || clause_tokens.back() != "0") {
      throw ParseError(line.number, "clause line must be terminated by 0");
    }
    std::vector<Literal> lits;
    for (size_t t = 0; t + 1 < clause_tokens.size(); ++t) {
      const long long lit = parse_int(line, clause_tokens[t], "literal");
      if (lit == 0) throw ParseError(line.number, "literal 0 before end of line");
      const long long magnitude = lit > 0 ? lit : -lit;
      if (magnitude > n) {
        throw ParseError(line.number, "literal " + std::to_string(lit) +
                                          " exceeds variable count");
      }
      lits.push_back({static_cast<int>(magnitude - 1), lit < 0});
    }
    cnf.clauses.push_back(std::move(lits));
    ++pos;
  }
  if (pos != lines.size()) {
    throw ParseError(lines[pos].number, "unexpected content after final clause");
  }
  return cnf;
}

}  // namespace msat
