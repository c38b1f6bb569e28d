#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "equi/base.hpp"
#include "equi/cnf.hpp"

namespace equi {

// Byte-deterministic serialization. Extended mode writes xor constraints as
// lines prefixed with 'x'; they are counted in the header.
inline void write_dimacs(const CnfDoc& doc, std::ostream& os, bool annotate = false) {
  os << "p cnf " << doc.num_vars << ' ' << doc.clause_count() << '\n';
  if (doc.unsat) {
    os << "0\n";
    return;
  }
  size_t next_note = 0;
  for (size_t i = 0; i < doc.clauses.size(); ++i) {
    if (annotate) {
      while (next_note < doc.notes.size() && doc.notes[next_note].first_clause == i) {
        if (doc.notes[next_note].n_clauses > 0)
          os << "c " << doc.notes[next_note].label << " ("
             << doc.notes[next_note].n_clauses << " clauses)\n";
        ++next_note;
      }
    }
    for (int l : doc.clauses[i]) os << l << ' ';
    os << "0\n";
  }
  for (const auto& c : doc.xor_clauses) {
    os << 'x';
    for (int l : c) os << ' ' << l;
    os << " 0\n";
  }
}

inline std::string dimacs_string(const CnfDoc& doc, bool annotate = false) {
  std::ostringstream os;
  write_dimacs(doc, os, annotate);
  return os.str();
}

// Output of a DIMACS-speaking solver subprocess: an 's' status line and,
// when satisfiable, 'v' lines of literals terminated by 0. Together with
// write_dimacs this lets any external solver stand in for the embedded one;
// callers then decode through the varmap as usual.
struct ExternalResult {
  bool sat = false;
  std::vector<uint8_t> values; // index v holds the value of variable v
};

inline ExternalResult parse_solver_output(std::istream& is) {
  ExternalResult r;
  std::string line;
  bool saw_status = false;
  while (std::getline(is, line)) {
    if (line.rfind("s ", 0) == 0) {
      saw_status = true;
      r.sat = line.find("UNSATISFIABLE") == std::string::npos &&
              line.find("SATISFIABLE") != std::string::npos;
      continue;
    }
    if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
      std::istringstream ls(line.substr(1));
      long long l;
      while (ls >> l) {
        if (l == 0) continue;
        size_t v = static_cast<size_t>(l > 0 ? l : -l);
        if (r.values.size() <= v) r.values.resize(v + 1, 0);
        r.values[v] = l > 0 ? 1 : 0;
      }
    }
  }
  if (!saw_status) fail("no solver status line found");
  return r;
}

// Accepts comments, a 'p cnf' header, clause lines, and extended 'x' lines.
inline CnfDoc read_dimacs(std::istream& is) {
  CnfDoc doc;
  std::string line;
  bool saw_header = false;
  long long declared_clauses = -1;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t s = line.find_first_not_of(" \t\r");
    if (s == std::string::npos) continue;
    if (line[s] == 'c') continue;
    if (line[s] == 'p') {
      std::istringstream ls(line.substr(s + 1));
      std::string fmt;
      long long nv = 0;
      if (!(ls >> fmt >> nv >> declared_clauses) || fmt != "cnf")
        fail("bad DIMACS header", lineno);
      doc.num_vars = static_cast<int>(nv);
      saw_header = true;
      continue;
    }
    bool is_xor = line[s] == 'x';
    std::istringstream ls(line.substr(is_xor ? s + 1 : s));
    std::vector<int> c;
    long long l;
    bool terminated = false;
    while (ls >> l) {
      if (l == 0) { terminated = true; break; }
      int v = static_cast<int>(l > 0 ? l : -l);
      if (v > doc.num_vars) doc.num_vars = v;
      c.push_back(static_cast<int>(l));
    }
    if (!terminated) fail("clause not terminated by 0", lineno);
    if (c.empty() && !is_xor) {
      doc.unsat = true;
      continue;
    }
    (is_xor ? doc.xor_clauses : doc.clauses).push_back(std::move(c));
  }
  if (!saw_header && doc.clauses.empty() && doc.xor_clauses.empty() && !doc.unsat)
    fail("no DIMACS content");
  return doc;
}

} // namespace equi
