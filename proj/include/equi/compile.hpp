#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "equi/cep.hpp"
#include "equi/encode.hpp"
#include "equi/model.hpp"
#include "equi/parser.hpp"
#include "equi/simplify.hpp"

namespace equi {

struct CompileResult {
  SourceModel source;
  Model model;
  CnfDoc cnf;
  VarMap varmap;
  EncodeStats encode_stats;
  SimplifyResult simplify_stats;
  std::vector<CepPassReport> cep_reports;
  double compile_ms = 0;
};

inline CompileResult compile_model(const SourceModel& src, const Options& opts) {
  auto t0 = std::chrono::steady_clock::now();
  CompileResult r;
  r.source = src;
  r.model = lower(src);
  r.simplify_stats = simplify(r.model, opts);
  for (const std::string& gname : opts.cep_groups) {
    int gid = -1;
    for (size_t i = 0; i < r.model.groups.size(); ++i)
      if (r.model.groups[i] == gname) gid = static_cast<int>(i);
    if (gid < 0) fail("unknown CEP group '" + gname + "'");
    if (r.model.status() == ModelStatus::UnsatAtCompileTime) break;
    r.cep_reports.push_back(apply_cep_pass(r.model, gid, opts));
    SimplifyResult again = simplify(r.model, opts);
    r.simplify_stats.firings += again.firings;
    for (auto& t : again.trace) r.simplify_stats.trace.push_back(std::move(t));
  }
  Encoder enc(r.model, opts);
  enc.run();
  r.cnf = std::move(enc.doc);
  r.varmap = std::move(enc.varmap);
  r.encode_stats = std::move(enc.stats);
  auto t1 = std::chrono::steady_clock::now();
  r.compile_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

inline CompileResult compile_text(const std::string& text, const Options& opts) {
  return compile_model(parse_model(text), opts);
}

// convenience for "apply CEP to every labelled group"
inline std::vector<std::string> all_group_names(const SourceModel& src) {
  std::vector<std::string> names;
  for (const auto& t : src.terms) {
    if (t.group.empty()) continue;
    bool seen = false;
    for (const auto& n : names)
      if (n == t.group) { seen = true; break; }
    if (!seen) names.push_back(t.group);
  }
  return names;
}

} // namespace equi
