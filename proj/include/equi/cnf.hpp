#pragma once

#include <string>
#include <vector>

#include "equi/base.hpp"

namespace equi {

// A clause database over DIMACS-style literals (nonzero ints), with variable
// accounting, optional xor lines (extended mode), and provenance notes
// mapping clause ranges back to the constraints that produced them.
struct CnfDoc {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::vector<int>> xor_clauses; // each asserts xor of lits = true
  bool unsat = false;                        // compile-time unsat: one empty clause

  struct Note {
    size_t first_clause;
    size_t n_clauses;
    std::string label;
  };
  std::vector<Note> notes;

  size_t clause_count() const { return unsat ? 1 : clauses.size() + xor_clauses.size(); }

  void check() const {
    for (const auto& c : clauses) {
      if (c.empty()) fail("internal: empty clause in satisfiable doc");
      for (int l : c) {
        int v = l > 0 ? l : -l;
        if (v == 0 || v > num_vars) fail("internal: clause mentions var beyond num_vars");
      }
    }
  }
};

} // namespace equi
