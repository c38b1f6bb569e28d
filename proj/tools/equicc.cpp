// equicc: compile finite-domain constraint models to CNF, solve them with
// the embedded solver, run backbone / equivalence analysis on CNF files,
// and generate benchmark instances.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "equi/bench.hpp"
#include "equi/cep.hpp"
#include "equi/compile.hpp"
#include "equi/dimacs.hpp"

using namespace equi;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string card = "hybrid";
  std::vector<std::string> cep;
  bool cep_all = false;
  bool xor_mode = false;
  bool annotate = false;
  bool onesided = false;
  bool stats = false;
  bool trace = false;
  bool restarts = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--card", o.card, "cardinality strategy")
      ->check(CLI::IsMember({"adder", "merger", "hybrid"}));
  cmd->add_option("--cep", o.cep, "apply complete equi-propagation to this constraint group");
  cmd->add_flag("--cep-all", o.cep_all, "apply complete equi-propagation to every labelled group");
  cmd->add_flag("--xor", o.xor_mode, "emit xor constraints as extended DIMACS x-lines");
  cmd->add_flag("--annotate", o.annotate, "write provenance comments into the CNF");
  cmd->add_flag("--onesided", o.onesided, "3-clause comparators in capacity-only contexts");
  cmd->add_flag("--stats", o.stats, "print key=value statistics");
  cmd->add_flag("--trace", o.trace, "print one line per simplification rule firing");
  cmd->add_flag("--restarts", o.restarts, "enable solver restarts");
}

Options to_options(const CommonOpts& o, const SourceModel& src) {
  Options opts;
  opts.card = o.card == "adder"    ? CardStrategy::Adder
              : o.card == "merger" ? CardStrategy::Merger
                                   : CardStrategy::Hybrid;
  opts.onesided_comparators = o.onesided;
  opts.xor_mode = o.xor_mode;
  opts.annotate = o.annotate;
  opts.trace = o.trace;
  opts.solver_restarts = o.restarts;
  opts.cep_groups = o.cep;
  if (o.cep_all)
    for (const auto& g : all_group_names(src))
      opts.cep_groups.push_back(g);
  return opts;
}

void print_stats(const CompileResult& r, double solve_ms, const std::string& result) {
  std::cout << "vars=" << r.cnf.num_vars << "\n";
  std::cout << "clauses=" << r.cnf.clause_count() << "\n";
  std::cout << "compile_ms=" << r.compile_ms << "\n";
  if (solve_ms >= 0) std::cout << "solve_ms=" << solve_ms << "\n";
  if (!result.empty()) std::cout << "result=" << result << "\n";
}

void print_trace(const CompileResult& r) {
  for (const auto& line : r.simplify_stats.trace) std::cout << "trace: " << line << "\n";
}

int solve_compiled(const CompileResult& r, bool restarts, bool stats, bool quiet,
                   std::map<std::string, long long>* decoded_out, double* solve_ms_out) {
  if (r.cnf.unsat) {
    if (stats) print_stats(r, 0, "UNSAT");
    if (!quiet) std::cout << "UNSAT\n";
    return kExitUnsat;
  }
  Solver s;
  s.opts.restarts = restarts;
  s.ensure_var(r.cnf.num_vars);
  bool ok = true;
  for (const auto& c : r.cnf.clauses)
    if (!s.add_clause(c)) { ok = false; break; }
  // xor lines, if any, expand through a parity chain
  int next = r.cnf.num_vars;
  for (const auto& x : r.cnf.xor_clauses) {
    if (!ok) break;
    if (x.empty()) { ok = false; break; }
    int t = x[0];
    for (size_t i = 1; i + 1 < x.size(); ++i) {
      int tn = ++next;
      s.ensure_var(tn);
      ok &= s.add_clause({-tn, t, x[i]});
      ok &= s.add_clause({-tn, -t, -x[i]});
      ok &= s.add_clause({tn, -t, x[i]});
      ok &= s.add_clause({tn, t, -x[i]});
      t = tn;
    }
    if (x.size() == 1) {
      ok &= s.add_clause({t});
    } else {
      ok &= s.add_clause({t, x.back()});
      ok &= s.add_clause({-t, -x.back()});
    }
  }
  auto t0 = std::chrono::steady_clock::now();
  bool sat = ok && s.solve() == Solver::Result::Sat;
  auto t1 = std::chrono::steady_clock::now();
  double solve_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (solve_ms_out) *solve_ms_out = solve_ms;
  if (!sat) {
    if (stats) print_stats(r, solve_ms, "UNSAT");
    if (!quiet) std::cout << "UNSAT\n";
    return kExitUnsat;
  }
  if (stats) print_stats(r, solve_ms, "SAT");
  for (const auto& e : r.varmap.entries) {
    long long v = decode_int(e, [&](int var) { return s.model_value(var); });
    if (decoded_out) (*decoded_out)[e.name] = v;
    if (quiet) continue;
    if (e.kind == DeclKind::Bool)
      std::cout << e.name << " = " << (v ? "true" : "false") << "\n";
    else
      std::cout << e.name << " = " << v << "\n";
  }
  return kExitSat;
}

int run_sat_file(const std::string& path, bool restarts) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  CnfDoc doc = read_dimacs(in);
  Solver s;
  s.opts.restarts = restarts;
  s.ensure_var(doc.num_vars);
  bool ok = !doc.unsat;
  for (const auto& c : doc.clauses)
    if (ok && !s.add_clause(c)) ok = false;
  if (!doc.xor_clauses.empty()) fail("sat: extended xor lines are not supported here");
  if (ok && s.solve() == Solver::Result::Sat) {
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= doc.num_vars; ++v)
      std::cout << ' ' << (s.model_value(v) ? v : -v);
    std::cout << " 0\n";
    return kExitSat;
  }
  std::cout << "s UNSATISFIABLE\n";
  return kExitUnsat;
}

int run_cep_file(const std::string& path, bool restarts) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  CnfDoc doc = read_dimacs(in);
  if (!doc.xor_clauses.empty()) fail("cep: extended xor lines are not supported here");
  std::vector<int> tracked;
  for (int v = 1; v <= doc.num_vars; ++v) tracked.push_back(v);
  Solver::Options so;
  so.restarts = restarts;
  CepResult r = cep(doc, tracked, so);
  if (r.unsat) {
    std::cout << "UNSAT\n";
    return kExitUnsat;
  }
  for (const auto& eq : r.equations) {
    if (eq.a == 0)
      std::cout << (eq.opposite ? -eq.b : eq.b) << "\n";
    else
      std::cout << eq.a << " = " << (eq.opposite ? "-" : "") << eq.b << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-domain constraint to CNF compiler (unary order-encoding "
               "with equi-propagation)"};
  app.require_subcommand(1);

  auto* c_compile = app.add_subcommand("compile", "compile a model to DIMACS CNF");
  std::string in_path, out_path;
  CommonOpts co;
  c_compile->add_option("model", in_path, "model file")->required();
  c_compile->add_option("-o,--output", out_path, "output CNF path")->required();
  add_common(c_compile, co);

  auto* c_solve = app.add_subcommand("solve", "compile and solve with the embedded solver");
  std::string solve_path;
  CommonOpts so;
  c_solve->add_option("model", solve_path, "model file")->required();
  add_common(c_solve, so);

  auto* c_cep = app.add_subcommand("cep", "print backbone literals and equivalences of a CNF");
  std::string cep_path;
  bool cep_restarts = false;
  c_cep->add_option("cnf", cep_path, "DIMACS CNF file")->required();
  c_cep->add_flag("--restarts", cep_restarts, "enable solver restarts");

  auto* c_sat = app.add_subcommand("sat", "solve a DIMACS CNF file");
  std::string sat_path;
  bool sat_restarts = false;
  c_sat->add_option("cnf", sat_path, "DIMACS CNF file")->required();
  c_sat->add_flag("--restarts", sat_restarts, "enable solver restarts");

  auto* c_decode = app.add_subcommand(
      "decode", "decode solver output (s/v lines) against a varmap sidecar");
  std::string map_path, out_file;
  c_decode->add_option("map", map_path, "varmap written by compile")->required();
  c_decode->add_option("solution", out_file, "solver output file (default stdin)");

  auto* c_bench = app.add_subcommand("bench", "generate (and optionally solve) benchmarks");
  std::string family;
  std::vector<int> params;
  std::string bench_out;
  std::string via = "pb";
  bool do_solve = false, csv = false;
  CommonOpts bo;
  c_bench->add_option("family", family, "girth5 | fractions | partition")->required();
  c_bench->add_option("params", params, "family parameters")->required();
  c_bench->add_option("-o,--output", bench_out, "write the generated model here");
  c_bench->add_option("--via", via, "partition square-sum path")
      ->check(CLI::IsMember({"pb", "binary"}));
  c_bench->add_flag("--solve", do_solve, "solve and verify the instance");
  c_bench->add_flag("--csv", csv,
                    "one CSV line: family,params,vars,clauses,compile_ms,solve_ms,result");
  add_common(c_bench, bo); // --cep-all applies CEP to the generated symmetry groups

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c_compile) {
      SourceModel src = parse_model(slurp(in_path));
      Options opts = to_options(co, src);
      CompileResult r = compile_model(src, opts);
      if (co.trace) print_trace(r);
      std::ofstream out(out_path);
      if (!out) fail("cannot write " + out_path);
      write_dimacs(r.cnf, out, opts.annotate);
      std::ofstream map(out_path + ".map");
      if (!map) fail("cannot write " + out_path + ".map");
      write_varmap(r.varmap, map);
      if (co.stats) print_stats(r, -1, r.cnf.unsat ? "UNSAT" : "");
      return 0;
    }
    if (*c_solve) {
      SourceModel src = parse_model(slurp(solve_path));
      Options opts = to_options(so, src);
      CompileResult r = compile_model(src, opts);
      if (so.trace) print_trace(r);
      return solve_compiled(r, so.restarts, so.stats, false, nullptr, nullptr);
    }
    if (*c_cep) return run_cep_file(cep_path, cep_restarts);
    if (*c_sat) return run_sat_file(sat_path, sat_restarts);
    if (*c_decode) {
      std::ifstream mapin(map_path);
      if (!mapin) fail("cannot open " + map_path);
      VarMap vm = read_varmap(mapin);
      ExternalResult ext;
      if (out_file.empty()) {
        ext = parse_solver_output(std::cin);
      } else {
        std::ifstream sin(out_file);
        if (!sin) fail("cannot open " + out_file);
        ext = parse_solver_output(sin);
      }
      if (!ext.sat) {
        std::cout << "UNSAT\n";
        return kExitUnsat;
      }
      auto value = [&](int v) {
        return static_cast<size_t>(v) < ext.values.size() && ext.values[static_cast<size_t>(v)];
      };
      for (const auto& e : vm.entries) {
        long long v = decode_int(e, value);
        if (e.kind == DeclKind::Bool)
          std::cout << e.name << " = " << (v ? "true" : "false") << "\n";
        else
          std::cout << e.name << " = " << v << "\n";
      }
      return kExitSat;
    }
    if (*c_bench) {
      BenchInstance inst;
      if (family == "girth5") {
        if (params.size() != 2) fail("girth5 takes <nodes> <edges>");
        inst = bench::gen_girth(params[0], params[1]);
      } else if (family == "fractions") {
        if (params.size() != 1) fail("fractions takes <n>");
        inst = bench::gen_fractions(params[0]);
      } else if (family == "partition") {
        if (params.size() != 1) fail("partition takes <n>");
        if (params[0] % 4 != 0)
          std::cerr << "warning: partition(" << params[0]
                    << ") with n not divisible by 4 is unsatisfiable\n";
        inst = bench::gen_partition(params[0], via == "binary");
      } else {
        fail("unknown benchmark family " + family);
      }
      if (!bench_out.empty()) {
        std::ofstream out(bench_out);
        if (!out) fail("cannot write " + bench_out);
        out << inst.text;
      }
      if (!do_solve) {
        if (bench_out.empty()) std::cout << inst.text;
        return 0;
      }
      SourceModel src = parse_model(inst.text);
      Options opts = to_options(bo, src);
      CompileResult r = compile_model(src, opts);
      std::map<std::string, long long> sol;
      double solve_ms = -1;
      int code = solve_compiled(r, bo.restarts, false, true, &sol, &solve_ms);
      std::string result = code == kExitSat ? "SAT" : "UNSAT";
      if (code == kExitSat) {
        std::string why;
        if (!inst.verify(sol, why)) {
          std::cerr << "verification FAILED: " << why << "\n";
          return 1;
        }
      }
      if (csv) {
        std::cout << inst.family;
        for (int p : params) std::cout << ',' << p;
        std::cout << ',' << r.cnf.num_vars << ',' << r.cnf.clause_count() << ','
                  << r.compile_ms << ',' << solve_ms << ',' << result << "\n";
      } else if (bo.stats) {
        print_stats(r, solve_ms, result);
        std::cout << result << "\n";
      } else {
        std::cout << result << "\n";
      }
      if (code == kExitSat)
        std::cout << "verified: solution satisfies the " << inst.family << " statement\n";
      return code;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (e.line) std::cerr << " (line " << e.line << ")";
    std::cerr << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
