#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "equi/base.hpp"
#include "equi/constraint.hpp"
#include "equi/model.hpp"

namespace equi {

// ---------------------------------------------------------------------------
// Source representation: one constraint term per line, Prolog-term-like.
//
//   stmt    := [ident ':'] term ['.']
//   term    := name '(' arg (',' arg)* ')'
//   arg     := ident | '-'ident | integer | 'true' | 'false' | '[' args ']'
//   '%' starts a comment; statements are separated by newlines.
//
// The optional `label:` prefix assigns the constraint to a named group
// (used to select constraint sets for complete equi-propagation).
// ---------------------------------------------------------------------------

struct SrcArg {
  enum Type { Ident, NegIdent, Num, True, False, List };
  Type type = Num;
  std::string name;
  long long num = 0;
  std::vector<SrcArg> list;
  int line = 0, col = 0;
};

struct SrcTerm {
  std::string name;
  std::vector<SrcArg> args;
  std::string group; // empty = none
  int line = 0, col = 0;
};

struct SourceModel {
  std::vector<SrcTerm> terms; // declarations and constraints, in order
  std::map<std::string, DeclKind> symbols;
  std::map<std::string, std::pair<long long, long long>> int_domains;
  std::map<std::string, int> bin_widths;
};

namespace detail {

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws_and_comments(bool stop_at_newline) {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '%') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (c == '\n') {
        if (stop_at_newline) return;
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool eof() {
    skip_ws_and_comments(false);
    return pos >= src.size();
  }

  char peek() const { return pos < src.size() ? src[pos] : '\0'; }
};

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::string lex_ident(Lexer& lx) {
  std::string s;
  while (lx.pos < lx.src.size() && ident_char(lx.peek())) {
    s += lx.peek();
    lx.advance();
  }
  return s;
}

inline SrcArg parse_arg(Lexer& lx);

inline void parse_arg_list(Lexer& lx, std::vector<SrcArg>& out, char close) {
  lx.skip_ws_and_comments(false);
  if (lx.peek() == close) {
    lx.advance();
    return;
  }
  for (;;) {
    out.push_back(parse_arg(lx));
    lx.skip_ws_and_comments(false);
    if (lx.peek() == ',') {
      lx.advance();
      lx.skip_ws_and_comments(false);
      continue;
    }
    if (lx.peek() == close) {
      lx.advance();
      return;
    }
    fail(std::string("expected ',' or '") + close + "'", lx.line, lx.col);
  }
}

inline SrcArg parse_arg(Lexer& lx) {
  lx.skip_ws_and_comments(false);
  SrcArg a;
  a.line = lx.line;
  a.col = lx.col;
  char c = lx.peek();
  if (c == '[') {
    lx.advance();
    a.type = SrcArg::List;
    parse_arg_list(lx, a.list, ']');
    return a;
  }
  if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
    bool neg = c == '-';
    if (neg) lx.advance();
    if (ident_start(lx.peek())) {
      if (!neg) fail("expected argument", lx.line, lx.col);
      a.type = SrcArg::NegIdent;
      a.name = lex_ident(lx);
      return a;
    }
    if (!std::isdigit(static_cast<unsigned char>(lx.peek())))
      fail("expected number or identifier after '-'", lx.line, lx.col);
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      v = v * 10 + (lx.peek() - '0');
      lx.advance();
    }
    a.type = SrcArg::Num;
    a.num = neg ? -v : v;
    return a;
  }
  if (ident_start(c)) {
    std::string id = lex_ident(lx);
    if (id == "true") {
      a.type = SrcArg::True;
    } else if (id == "false") {
      a.type = SrcArg::False;
    } else {
      a.type = SrcArg::Ident;
      a.name = id;
    }
    return a;
  }
  fail("expected argument", lx.line, lx.col);
}

// Template signatures. Letters: b bool literal, i int operand, c constant,
// n fresh name, B/I/C lists of those, y binary operand, Y binary list.
inline const std::map<std::string, std::string>& signatures() {
  static const std::map<std::string, std::string> sig = {
      {"new_bool", "n"},
      {"new_int", "ncc"},
      {"new_binary", "nc"},
      {"bool2int", "bi"},
      {"bool_eq", "bb"},
      {"bool_array_or", "B"},
      {"bool_array_and", "B"},
      {"bool_array_xor", "B"},
      {"bool_array_iff", "B"},
      {"bool_array_or_reif", "Bb"},
      {"bool_array_and_reif", "Bb"},
      {"bool_array_xor_reif", "Bb"},
      {"bool_array_iff_reif", "Bb"},
      {"bool_or_reif", "bbb"},
      {"bool_and_reif", "bbb"},
      {"bool_xor_reif", "bbb"},
      {"bool_iff_reif", "bbb"},
      {"comparator", "bbbb"},
      {"int_leq", "ii"},
      {"int_geq", "ii"},
      {"int_eq", "ii"},
      {"int_lt", "ii"},
      {"int_gt", "ii"},
      {"int_neq", "ii"},
      {"int_leq_reif", "iib"},
      {"int_geq_reif", "iib"},
      {"int_eq_reif", "iib"},
      {"int_lt_reif", "iib"},
      {"int_gt_reif", "iib"},
      {"int_neq_reif", "iib"},
      {"int_array_allDiff", "I"},
      {"int_abs", "ii"},
      {"int_plus", "iii"},
      {"int_times", "iii"},
      {"int_div", "iii"},
      {"int_mod", "iii"},
      {"int_max", "iii"},
      {"int_min", "iii"},
      {"int_array_plus", "Ii"},
      {"int_array_times", "Ii"},
      {"int_array_max", "Ii"},
      {"int_array_min", "Ii"},
      {"bool_array_sum_leq", "Bi"},
      {"bool_array_sum_geq", "Bi"},
      {"bool_array_sum_eq", "Bi"},
      {"bool_array_sum_lt", "Bi"},
      {"bool_array_sum_gt", "Bi"},
      {"bool_array_pb_leq", "CBi"},
      {"bool_array_pb_geq", "CBi"},
      {"bool_array_pb_eq", "CBi"},
      {"bool_array_pb_lt", "CBi"},
      {"bool_array_pb_gt", "CBi"},
      {"bool_array_sum_modK", "Bci"},
      {"int_array_sum_leq", "Ii"},
      {"int_array_sum_geq", "Ii"},
      {"int_array_sum_eq", "Ii"},
      {"int_array_sum_lt", "Ii"},
      {"int_array_sum_gt", "Ii"},
      {"int_array_lin_leq", "CIi"},
      {"int_array_lin_geq", "CIi"},
      {"int_array_lin_eq", "CIi"},
      {"int_array_lin_lt", "CIi"},
      {"int_array_lin_gt", "CIi"},
      {"int_array_sum_modK", "Ici"},
      {"bool_arrays_lex", "BB"},
      {"bool_arrays_lexLt", "BB"},
      {"bool_arrays_lex_reif", "BBb"},
      {"bool_arrays_lexLt_reif", "BBb"},
      {"int_arrays_lex", "II"},
      {"int_arrays_lexLt", "II"},
      {"binary_array_sum_eq", "Yy"},
      {"binary_times", "yyy"},
      {"binary_square", "yy"},
      {"int2binary", "iy"},
  };
  return sig;
}

inline void check_arg(const SourceModel& m, const SrcTerm& t, const SrcArg& a, char spec) {
  auto need_decl = [&](const std::string& n, DeclKind k, const char* what) {
    auto it = m.symbols.find(n);
    if (it == m.symbols.end())
      fail("undeclared identifier '" + n + "' in " + t.name, a.line, a.col);
    if (it->second != k)
      fail("'" + n + "' is not a " + std::string(what) + " in " + t.name, a.line, a.col);
  };
  switch (spec) {
    case 'b':
      if (a.type == SrcArg::Ident || a.type == SrcArg::NegIdent)
        need_decl(a.name, DeclKind::Bool, "Boolean");
      else if (a.type != SrcArg::True && a.type != SrcArg::False)
        fail("expected Boolean literal in " + t.name, a.line, a.col);
      break;
    case 'i':
      if (a.type == SrcArg::Ident)
        need_decl(a.name, DeclKind::Int, "declared integer");
      else if (a.type != SrcArg::Num)
        fail("expected integer variable or constant in " + t.name, a.line, a.col);
      break;
    case 'y':
      if (a.type == SrcArg::Ident)
        need_decl(a.name, DeclKind::Binary, "binary number");
      else if (a.type == SrcArg::Num) {
        if (a.num < 0) fail("binary constants must be nonnegative", a.line, a.col);
      } else
        fail("expected binary variable or constant in " + t.name, a.line, a.col);
      break;
    case 'c':
      if (a.type != SrcArg::Num) fail("expected integer constant in " + t.name, a.line, a.col);
      break;
    default:
      fail("internal: bad signature", a.line, a.col);
  }
}

} // namespace detail

inline SourceModel parse_model(const std::string& text) {
  using namespace detail;
  SourceModel m;
  Lexer lx(text);
  while (!lx.eof()) {
    SrcTerm t;
    t.line = lx.line;
    t.col = lx.col;
    if (!ident_start(lx.peek())) fail("expected constraint term", lx.line, lx.col);
    std::string head = lex_ident(lx);
    lx.skip_ws_and_comments(true);
    if (lx.peek() == ':') {
      lx.advance();
      t.group = head;
      lx.skip_ws_and_comments(false);
      if (!ident_start(lx.peek())) fail("expected constraint term after group label", lx.line, lx.col);
      head = lex_ident(lx);
      lx.skip_ws_and_comments(true);
    }
    t.name = head;
    if (lx.peek() != '(') fail("expected '(' after '" + t.name + "'", lx.line, lx.col);
    lx.advance();
    parse_arg_list(lx, t.args, ')');
    lx.skip_ws_and_comments(true);
    if (lx.peek() == '.') lx.advance();

    auto sit = signatures().find(t.name);
    if (sit == signatures().end()) fail("unknown constraint '" + t.name + "'", t.line, t.col);
    const std::string& sig = sit->second;
    if (t.args.size() != sig.size())
      fail(t.name + " expects " + std::to_string(sig.size()) + " arguments, got " +
               std::to_string(t.args.size()),
           t.line, t.col);

    for (size_t i = 0; i < sig.size(); ++i) {
      char spec = sig[i];
      const SrcArg& a = t.args[i];
      if (spec == 'n') {
        if (a.type != SrcArg::Ident) fail("expected fresh identifier", a.line, a.col);
        if (m.symbols.count(a.name))
          fail("duplicate declaration of '" + a.name + "'", a.line, a.col);
        continue;
      }
      if (spec == 'B' || spec == 'I' || spec == 'C' || spec == 'Y') {
        if (a.type != SrcArg::List) fail("expected a list in " + t.name, a.line, a.col);
        char inner = spec == 'B' ? 'b' : spec == 'I' ? 'i' : spec == 'C' ? 'c' : 'y';
        for (const auto& e : a.list) check_arg(m, t, e, inner);
        continue;
      }
      check_arg(m, t, a, spec);
    }

    // register declarations
    if (t.name == "new_bool") {
      m.symbols[t.args[0].name] = DeclKind::Bool;
    } else if (t.name == "new_int") {
      long long lo = t.args[1].num, hi = t.args[2].num;
      if (lo > hi)
        fail("empty domain [" + std::to_string(lo) + "," + std::to_string(hi) + "] for '" +
                 t.args[0].name + "'",
             t.line, t.col);
      m.symbols[t.args[0].name] = DeclKind::Int;
      m.int_domains[t.args[0].name] = {lo, hi};
    } else if (t.name == "new_binary") {
      long long w = t.args[1].num;
      if (w < 1 || w > 62) fail("binary width must be in [1,62]", t.line, t.col);
      m.symbols[t.args[0].name] = DeclKind::Binary;
      m.bin_widths[t.args[0].name] = static_cast<int>(w);
    }
    m.terms.push_back(std::move(t));
  }
  return m;
}

// Canonical printer: one term per line, lists bracketed, no trailing period.
inline std::string print_arg(const SrcArg& a) {
  switch (a.type) {
    case SrcArg::Ident: return a.name;
    case SrcArg::NegIdent: return "-" + a.name;
    case SrcArg::Num: return std::to_string(a.num);
    case SrcArg::True: return "true";
    case SrcArg::False: return "false";
    case SrcArg::List: {
      std::string s = "[";
      for (size_t i = 0; i < a.list.size(); ++i) {
        if (i) s += ", ";
        s += print_arg(a.list[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

inline std::string print_model(const SourceModel& m) {
  std::string out;
  for (const auto& t : m.terms) {
    if (!t.group.empty()) {
      out += t.group;
      out += ": ";
    }
    out += t.name;
    out += "(";
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ", ";
      out += print_arg(t.args[i]);
    }
    out += ")\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lowering: unary bit-blasting of declarations, constant lifting, and
// normalization of surface forms onto the canonical constraint kinds.
// ---------------------------------------------------------------------------

namespace detail {

struct Lowerer {
  Model& model;
  std::map<std::string, int> decl_index;

  Lit lower_bool(const SrcArg& a) {
    switch (a.type) {
      case SrcArg::True: return Lit::t();
      case SrcArg::False: return Lit::f();
      case SrcArg::Ident: return model.decls[decl_index.at(a.name)].lit;
      case SrcArg::NegIdent: return ~model.decls[decl_index.at(a.name)].lit;
      default: fail("expected Boolean literal", a.line, a.col);
    }
  }

  UnaryInt lower_int(const SrcArg& a) {
    if (a.type == SrcArg::Num) return UnaryInt::constant(a.num);
    return model.decls[decl_index.at(a.name)].num;
  }

  BinaryInt lower_bin(const SrcArg& a) {
    if (a.type == SrcArg::Num) {
      int w = 0;
      while ((1ll << w) <= a.num) ++w;
      return BinaryInt::constant(static_cast<unsigned long long>(a.num), w);
    }
    return model.decls[decl_index.at(a.name)].bin;
  }

  std::vector<Lit> lower_bools(const SrcArg& a) {
    std::vector<Lit> out;
    for (const auto& e : a.list) out.push_back(lower_bool(e));
    return out;
  }
  std::vector<UnaryInt> lower_ints(const SrcArg& a) {
    std::vector<UnaryInt> out;
    for (const auto& e : a.list) out.push_back(lower_int(e));
    return out;
  }
  std::vector<BinaryInt> lower_bins(const SrcArg& a) {
    std::vector<BinaryInt> out;
    for (const auto& e : a.list) out.push_back(lower_bin(e));
    return out;
  }
  std::vector<long long> lower_consts(const SrcArg& a) {
    std::vector<long long> out;
    for (const auto& e : a.list) out.push_back(e.num);
    return out;
  }
};

inline Rel rel_of_suffix(const std::string& name) {
  auto ends = [&](const char* s) {
    size_t n = std::string(s).size();
    return name.size() >= n && name.compare(name.size() - n, n, s) == 0;
  };
  if (ends("leq")) return Rel::Leq;
  if (ends("geq")) return Rel::Geq;
  if (ends("neq")) return Rel::Neq;
  if (ends("eq")) return Rel::Eq;
  if (ends("lt")) return Rel::Lt;
  return Rel::Gt;
}

inline BOp bop_of(const std::string& s) {
  if (s == "or") return BOp::Or;
  if (s == "and") return BOp::And;
  if (s == "xor") return BOp::Xor;
  return BOp::Iff;
}

} // namespace detail

inline Model lower(const SourceModel& src) {
  using namespace detail;
  Model m;
  Lowerer lw{m, {}};

  auto add = [&](Constraint c, const SrcTerm& t) {
    if (!t.group.empty()) c.group = m.group_id(t.group);
    m.add(std::move(c));
  };

  for (const auto& t : src.terms) {
    const std::string& n = t.name;
    if (n == "new_bool") {
      Decl d;
      d.name = t.args[0].name;
      d.kind = DeclKind::Bool;
      d.lit = m.new_bool();
      lw.decl_index[d.name] = static_cast<int>(m.decls.size());
      m.decls.push_back(d);
      continue;
    }
    if (n == "new_int") {
      Decl d;
      d.name = t.args[0].name;
      d.kind = DeclKind::Int;
      d.num = m.new_unary(t.args[1].num, t.args[2].num);
      lw.decl_index[d.name] = static_cast<int>(m.decls.size());
      m.decls.push_back(d);
      continue;
    }
    if (n == "new_binary") {
      Decl d;
      d.name = t.args[0].name;
      d.kind = DeclKind::Binary;
      d.bin = m.new_binary(static_cast<int>(t.args[1].num));
      lw.decl_index[d.name] = static_cast<int>(m.decls.size());
      m.decls.push_back(d);
      continue;
    }
    if (n == "bool2int") {
      Lit x = lw.lower_bool(t.args[0]);
      UnaryInt i = lw.lower_int(t.args[1]);
      if (i.lo() != 0 || i.hi() != 1)
        fail("bool2int requires an integer with domain [0,1]", t.line, t.col);
      m.store.merge(x, i.geq_lit(1));
      continue;
    }

    // A chained iff over n literals holds exactly when their parity is
    // n mod 2, so iff forms normalize onto xor with an adjusted polarity.
    auto norm_iff = [&](Constraint& cc) {
      if (cc.bop != BOp::Iff) return true;
      size_t len = cc.L[0].size();
      cc.bop = BOp::Xor;
      if (cc.kind == Kind::BoolArrayOp) {
        if (len == 0) return false; // empty chain: vacuously true
        if (len % 2 == 0) cc.L[0][0] = ~cc.L[0][0];
      } else {
        if (len == 0) { // reif of the empty chain: bind to true
          cc.kind = Kind::BoolEq;
          cc.x = {cc.x[0], Lit::t()};
          cc.L.clear();
          return true;
        }
        if (len % 2 == 0) cc.x[0] = ~cc.x[0];
      }
      return true;
    };

    Constraint c;
    if (n == "bool_eq") {
      c.kind = Kind::BoolEq;
      c.x = {lw.lower_bool(t.args[0]), lw.lower_bool(t.args[1])};
    } else if (n.rfind("bool_array_", 0) == 0 && n.find("_reif") != std::string::npos &&
               n.find("sum") == std::string::npos && n.find("pb") == std::string::npos &&
               n.find("lex") == std::string::npos) {
      c.kind = Kind::BoolArrayOpReif;
      c.bop = bop_of(n.substr(11, n.size() - 11 - 5));
      c.L = {lw.lower_bools(t.args[0])};
      c.x = {lw.lower_bool(t.args[1])};
      if (!norm_iff(c)) continue;
    } else if (n == "bool_array_or" || n == "bool_array_and" || n == "bool_array_xor" ||
               n == "bool_array_iff") {
      c.kind = Kind::BoolArrayOp;
      c.bop = bop_of(n.substr(11));
      c.L = {lw.lower_bools(t.args[0])};
      if (!norm_iff(c)) continue;
    } else if (n == "bool_or_reif" || n == "bool_and_reif" || n == "bool_xor_reif" ||
               n == "bool_iff_reif") {
      c.kind = Kind::BoolArrayOpReif;
      c.bop = bop_of(n.substr(5, n.size() - 5 - 5));
      c.L = {{lw.lower_bool(t.args[0]), lw.lower_bool(t.args[1])}};
      c.x = {lw.lower_bool(t.args[2])};
      if (!norm_iff(c)) continue;
    } else if (n == "comparator") {
      c.kind = Kind::Comparator;
      c.x = {lw.lower_bool(t.args[0]), lw.lower_bool(t.args[1]), lw.lower_bool(t.args[2]),
             lw.lower_bool(t.args[3])};
    } else if (n == "int_leq" || n == "int_geq" || n == "int_eq" || n == "int_lt" ||
               n == "int_gt" || n == "int_neq") {
      UnaryInt a = lw.lower_int(t.args[0]), b = lw.lower_int(t.args[1]);
      switch (rel_of_suffix(n)) {
        case Rel::Leq: c.kind = Kind::IntLeq; c.I = {a, b}; break;
        case Rel::Geq: c.kind = Kind::IntLeq; c.I = {b, a}; break;
        case Rel::Lt: c.kind = Kind::IntLeq; c.I = {a, b.shifted(-1)}; break;
        case Rel::Gt: c.kind = Kind::IntLeq; c.I = {b, a.shifted(-1)}; break;
        case Rel::Eq: c.kind = Kind::IntEq; c.I = {a, b}; break;
        case Rel::Neq: c.kind = Kind::IntNeq; c.I = {a, b}; break;
      }
    } else if (n == "int_leq_reif" || n == "int_geq_reif" || n == "int_eq_reif" ||
               n == "int_lt_reif" || n == "int_gt_reif" || n == "int_neq_reif") {
      UnaryInt a = lw.lower_int(t.args[0]), b = lw.lower_int(t.args[1]);
      Lit r = lw.lower_bool(t.args[2]);
      switch (rel_of_suffix(n.substr(0, n.size() - 5))) {
        case Rel::Leq: c.kind = Kind::IntLeqReif; c.I = {a, b}; c.x = {r}; break;
        case Rel::Geq: c.kind = Kind::IntLeqReif; c.I = {b, a}; c.x = {r}; break;
        case Rel::Lt: c.kind = Kind::IntLeqReif; c.I = {a, b.shifted(-1)}; c.x = {r}; break;
        case Rel::Gt: c.kind = Kind::IntLeqReif; c.I = {b, a.shifted(-1)}; c.x = {r}; break;
        case Rel::Eq: c.kind = Kind::IntEqReif; c.I = {a, b}; c.x = {r}; break;
        case Rel::Neq: c.kind = Kind::IntEqReif; c.I = {a, b}; c.x = {~r}; break;
      }
    } else if (n == "int_array_allDiff") {
      c.kind = Kind::IntArrayAllDiff;
      c.I = lw.lower_ints(t.args[0]);
    } else if (n == "int_abs") {
      c.kind = Kind::IntAbs;
      c.I = {lw.lower_int(t.args[0]), lw.lower_int(t.args[1])};
    } else if (n == "int_plus" || n == "int_times" || n == "int_div" || n == "int_mod" ||
               n == "int_max" || n == "int_min") {
      c.kind = n == "int_plus"    ? Kind::IntPlus
               : n == "int_times" ? Kind::IntTimes
               : n == "int_div"   ? Kind::IntDiv
               : n == "int_mod"   ? Kind::IntMod
               : n == "int_max"   ? Kind::IntMax
                                  : Kind::IntMin;
      c.I = {lw.lower_int(t.args[0]), lw.lower_int(t.args[1]), lw.lower_int(t.args[2])};
    } else if (n == "int_array_plus" || n == "int_array_times" || n == "int_array_max" ||
               n == "int_array_min") {
      c.kind = Kind::IntArrayOp;
      c.aop = n == "int_array_plus"    ? AOp::Plus
              : n == "int_array_times" ? AOp::Times
              : n == "int_array_max"   ? AOp::Max
                                       : AOp::Min;
      c.I = lw.lower_ints(t.args[0]);
      c.I.push_back(lw.lower_int(t.args[1]));
    } else if (n.rfind("bool_array_sum_mod", 0) == 0) {
      c.kind = Kind::BoolArraySumModK;
      c.L = {lw.lower_bools(t.args[0])};
      c.K = {t.args[1].num};
      c.I = {lw.lower_int(t.args[2])};
    } else if (n.rfind("bool_array_sum_", 0) == 0) {
      c.kind = Kind::BoolArraySumRel;
      c.rel = rel_of_suffix(n);
      c.L = {lw.lower_bools(t.args[0])};
      c.I = {lw.lower_int(t.args[1])};
    } else if (n.rfind("bool_array_pb_", 0) == 0) {
      c.kind = Kind::BoolArrayPbRel;
      c.rel = rel_of_suffix(n);
      c.K = lw.lower_consts(t.args[0]);
      c.L = {lw.lower_bools(t.args[1])};
      if (c.K.size() != c.L[0].size())
        fail("weight and literal lists differ in length", t.line, t.col);
      c.I = {lw.lower_int(t.args[2])};
    } else if (n.rfind("int_array_sum_mod", 0) == 0) {
      c.kind = Kind::IntArraySumModK;
      c.I = lw.lower_ints(t.args[0]);
      c.K = {t.args[1].num};
      c.I.push_back(lw.lower_int(t.args[2]));
    } else if (n.rfind("int_array_sum_", 0) == 0) {
      c.kind = Kind::IntArraySumRel;
      c.rel = rel_of_suffix(n);
      c.I = lw.lower_ints(t.args[0]);
      c.I.push_back(lw.lower_int(t.args[1]));
    } else if (n.rfind("int_array_lin_", 0) == 0) {
      c.kind = Kind::IntArrayLinRel;
      c.rel = rel_of_suffix(n);
      c.K = lw.lower_consts(t.args[0]);
      c.I = lw.lower_ints(t.args[1]);
      if (c.K.size() != c.I.size())
        fail("weight and integer lists differ in length", t.line, t.col);
      c.I.push_back(lw.lower_int(t.args[2]));
    } else if (n == "bool_arrays_lex" || n == "bool_arrays_lexLt") {
      c.kind = Kind::BoolArraysLex;
      c.K = {n == "bool_arrays_lexLt" ? 1 : 0};
      c.L = {lw.lower_bools(t.args[0]), lw.lower_bools(t.args[1])};
    } else if (n == "bool_arrays_lex_reif" || n == "bool_arrays_lexLt_reif") {
      c.kind = Kind::BoolArraysLexReif;
      c.K = {n == "bool_arrays_lexLt_reif" ? 1 : 0};
      c.L = {lw.lower_bools(t.args[0]), lw.lower_bools(t.args[1])};
      c.x = {lw.lower_bool(t.args[2])};
    } else if (n == "int_arrays_lex" || n == "int_arrays_lexLt") {
      c.kind = Kind::IntArraysLex;
      auto first = lw.lower_ints(t.args[0]);
      auto second = lw.lower_ints(t.args[1]);
      c.K = {n == "int_arrays_lexLt" ? 1 : 0, static_cast<long long>(first.size())};
      c.I = std::move(first);
      for (auto& u : second) c.I.push_back(std::move(u));
    } else if (n == "binary_array_sum_eq") {
      c.kind = Kind::BinArraySumEq;
      c.B = lw.lower_bins(t.args[0]);
      c.B.push_back(lw.lower_bin(t.args[1]));
    } else if (n == "binary_times") {
      c.kind = Kind::BinTimes;
      c.B = {lw.lower_bin(t.args[0]), lw.lower_bin(t.args[1]), lw.lower_bin(t.args[2])};
    } else if (n == "binary_square") {
      c.kind = Kind::BinSquare;
      c.B = {lw.lower_bin(t.args[0]), lw.lower_bin(t.args[1])};
    } else if (n == "int2binary") {
      c.kind = Kind::Int2Binary;
      c.I = {lw.lower_int(t.args[0])};
      c.B = {lw.lower_bin(t.args[1])};
    } else {
      fail("internal: unhandled template " + n, t.line, t.col);
    }
    add(std::move(c), t);
  }
  return m;
}

} // namespace equi
