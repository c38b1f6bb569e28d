#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "equi/base.hpp"

namespace equi {

// A generated benchmark instance: the model source, the CEP group labels the
// generator suggests, and a verifier that checks a decoded solution against
// the family's mathematical statement without consulting the encoding.
struct BenchInstance {
  std::string family;
  std::string text;
  std::vector<std::string> cep_groups;
  std::function<bool(const std::map<std::string, long long>&, std::string&)> verify;
};

namespace bench {

inline std::string edge(int i, int j) {
  if (i > j) std::swap(i, j);
  return "a_" + std::to_string(i) + "_" + std::to_string(j);
}

// Graphs with girth above four: symmetric adjacency matrix with zero
// diagonal, no 3- or 4-cycles, lexicographically ordered consecutive rows,
// and a fixed edge count. The symmetry constraints carry CEP group labels,
// one group per row pair.
inline BenchInstance gen_girth(int nodes, int edges) {
  if (nodes < 3) fail("girth5: need at least 3 nodes");
  BenchInstance inst;
  inst.family = "girth5";
  std::string& s = inst.text;
  for (int i = 1; i <= nodes; ++i)
    for (int j = 1; j <= nodes; ++j)
      s += "new_bool(a_" + std::to_string(i) + "_" + std::to_string(j) + ")\n";
  // symmetry and diagonal
  for (int i = 1; i <= nodes; ++i) {
    s += "sym1: bool_eq(a_" + std::to_string(i) + "_" + std::to_string(i) + ", false)\n";
    for (int j = i + 1; j <= nodes; ++j)
      s += "sym1: bool_eq(a_" + std::to_string(i) + "_" + std::to_string(j) + ", a_" +
           std::to_string(j) + "_" + std::to_string(i) + ")\n";
  }
  // rows sorted lexicographically, consecutive pairs
  for (int i = 1; i < nodes; ++i) {
    std::string g = "sym" + std::to_string(i);
    if (std::find(inst.cep_groups.begin(), inst.cep_groups.end(), g) == inst.cep_groups.end())
      inst.cep_groups.push_back(g);
    s += g + ": bool_arrays_lex([";
    for (int k = 1; k <= nodes; ++k) {
      if (k > 1) s += ", ";
      s += "a_" + std::to_string(i) + "_" + std::to_string(k);
    }
    s += "], [";
    for (int k = 1; k <= nodes; ++k) {
      if (k > 1) s += ", ";
      s += "a_" + std::to_string(i + 1) + "_" + std::to_string(k);
    }
    s += "])\n";
  }
  if (std::find(inst.cep_groups.begin(), inst.cep_groups.end(), "sym1") ==
      inst.cep_groups.end())
    inst.cep_groups.insert(inst.cep_groups.begin(), "sym1");
  // no triangles
  for (int i = 1; i <= nodes; ++i)
    for (int j = i + 1; j <= nodes; ++j)
      for (int k = j + 1; k <= nodes; ++k)
        s += "bool_array_sum_lt([" + edge(i, j) + ", " + edge(j, k) + ", " + edge(i, k) +
             "], 3)\n";
  // no 4-cycles: canonical tuples i<j, i<k, i<l, j<l over cycle i-j-k-l-i
  for (int i = 1; i <= nodes; ++i)
    for (int j = i + 1; j <= nodes; ++j)
      for (int l = j + 1; l <= nodes; ++l)
        for (int k = i + 1; k <= nodes; ++k) {
          if (k == j || k == l) continue;
          s += "bool_array_sum_lt([" + edge(i, j) + ", " + edge(j, k) + ", " + edge(k, l) +
               ", " + edge(l, i) + "], 4)\n";
        }
  // total edge count
  s += "bool_array_sum_eq([";
  bool first = true;
  for (int i = 1; i <= nodes; ++i)
    for (int j = i + 1; j <= nodes; ++j) {
      if (!first) s += ", ";
      first = false;
      s += edge(i, j);
    }
  s += "], " + std::to_string(edges) + ")\n";

  inst.verify = [nodes, edges](const std::map<std::string, long long>& sol,
                               std::string& why) {
    auto at = [&](int i, int j) { return sol.at("a_" + std::to_string(i) + "_" + std::to_string(j)); };
    for (int i = 1; i <= nodes; ++i) {
      if (at(i, i) != 0) { why = "nonzero diagonal"; return false; }
      for (int j = 1; j <= nodes; ++j)
        if (at(i, j) != at(j, i)) { why = "asymmetric"; return false; }
    }
    long long count = 0;
    for (int i = 1; i <= nodes; ++i)
      for (int j = i + 1; j <= nodes; ++j) count += at(i, j);
    if (count != edges) { why = "edge count"; return false; }
    for (int i = 1; i <= nodes; ++i)
      for (int j = i + 1; j <= nodes; ++j)
        for (int k = j + 1; k <= nodes; ++k)
          if (at(i, j) && at(j, k) && at(i, k)) { why = "triangle"; return false; }
    for (int i = 1; i <= nodes; ++i)
      for (int j = i + 1; j <= nodes; ++j)
        for (int k = j + 1; k <= nodes; ++k)
          for (int l = k + 1; l <= nodes; ++l) {
            // any 4-cycle on the vertex set {i,j,k,l}
            if ((at(i, j) && at(j, k) && at(k, l) && at(l, i)) ||
                (at(i, j) && at(j, l) && at(l, k) && at(k, i)) ||
                (at(i, k) && at(k, j) && at(j, l) && at(l, i))) {
              why = "4-cycle";
              return false;
            }
          }
    return true;
  };
  return inst;
}

// n-fractions: digits x_i, y_i, z_i in 1..9 with sum_i x_i/(10 y_i + z_i) = 1
// and each digit value used between 1 and ceil(n/3) times. Built on the
// binary extension: denominators and products as binary numbers, digit
// occurrence counts in the unary core.
inline BenchInstance gen_fractions(int n) {
  if (n < 1) fail("fractions: n must be positive");
  BenchInstance inst;
  inst.family = "fractions";
  std::string& s = inst.text;
  auto num = [](const std::string& p, int i) { return p + std::to_string(i); };
  int dw = 7;                      // denominator width: up to 99
  auto pw = [&](int k) { return dw * k + 1; }; // width for a product of k denominators

  for (int i = 1; i <= n; ++i) {
    for (const char* p : {"x", "y", "z"})
      s += "new_int(" + num(p, i) + ", 1, 9)\n";
    s += "new_binary(" + num("xb", i) + ", 4)\n";
    s += "new_binary(" + num("yb", i) + ", 4)\n";
    s += "new_binary(" + num("zb", i) + ", 4)\n";
    s += "int2binary(" + num("x", i) + ", " + num("xb", i) + ")\n";
    s += "int2binary(" + num("y", i) + ", " + num("yb", i) + ")\n";
    s += "int2binary(" + num("z", i) + ", " + num("zb", i) + ")\n";
    // d_i = 10*y_i + z_i
    s += "new_binary(" + num("ty", i) + ", 7)\n";
    s += "binary_times(" + num("yb", i) + ", 10, " + num("ty", i) + ")\n";
    s += "new_binary(" + num("d", i) + ", " + std::to_string(dw) + ")\n";
    s += "binary_array_sum_eq([" + num("ty", i) + ", " + num("zb", i) + "], " +
         num("d", i) + ")\n";
  }
  // suffix products suf_i = d_i * ... * d_n; prefix products pre_i = d_1 * ... * d_i
  for (int i = n; i >= 1; --i) {
    s += "new_binary(" + num("suf", i) + ", " + std::to_string(pw(n - i + 1)) + ")\n";
    if (i == n)
      s += "binary_array_sum_eq([" + num("d", n) + "], " + num("suf", n) + ")\n";
    else
      s += "binary_times(" + num("d", i) + ", " + num("suf", i + 1) + ", " +
           num("suf", i) + ")\n";
  }
  for (int i = 1; i <= n; ++i) {
    s += "new_binary(" + num("pre", i) + ", " + std::to_string(pw(i)) + ")\n";
    if (i == 1)
      s += "binary_array_sum_eq([" + num("d", 1) + "], " + num("pre", 1) + ")\n";
    else
      s += "binary_times(" + num("pre", i - 1) + ", " + num("d", i) + ", " +
           num("pre", i) + ")\n";
  }
  // numerator terms q_i = product of all denominators but the i-th
  for (int i = 1; i <= n; ++i) {
    s += "new_binary(" + num("q", i) + ", " + std::to_string(pw(n - 1)) + ")\n";
    if (n == 1) {
      s += "binary_array_sum_eq([1], " + num("q", 1) + ")\n";
    } else if (i == 1) {
      s += "binary_array_sum_eq([" + num("suf", 2) + "], " + num("q", 1) + ")\n";
    } else if (i == n) {
      s += "binary_array_sum_eq([" + num("pre", n - 1) + "], " + num("q", n) + ")\n";
    } else {
      s += "binary_times(" + num("pre", i - 1) + ", " + num("suf", i + 1) + ", " +
           num("q", i) + ")\n";
    }
    s += "new_binary(" + num("t", i) + ", " + std::to_string(pw(n - 1) + 4) + ")\n";
    s += "binary_times(" + num("xb", i) + ", " + num("q", i) + ", " + num("t", i) + ")\n";
  }
  // cleared-denominator equation: sum_i t_i = product of all denominators
  s += "binary_array_sum_eq([";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += ", ";
    s += num("t", i);
  }
  s += "], " + num("suf", 1) + ")\n";
  // each digit value used between 1 and ceil(n/3) times
  int cap = (n + 2) / 3;
  for (int v = 1; v <= 9; ++v) {
    std::string list = "[";
    bool first = true;
    for (int i = 1; i <= n; ++i)
      for (const char* p : {"x", "y", "z"}) {
        std::string r = "r_" + std::to_string(v) + "_" + num(p, i);
        s += "new_bool(" + r + ")\n";
        s += "int_eq_reif(" + num(p, i) + ", " + std::to_string(v) + ", " + r + ")\n";
        if (!first) list += ", ";
        first = false;
        list += r;
      }
    list += "]";
    s += "bool_array_sum_geq(" + list + ", 1)\n";
    s += "bool_array_sum_leq(" + list + ", " + std::to_string(cap) + ")\n";
  }

  inst.verify = [n, cap](const std::map<std::string, long long>& sol, std::string& why) {
    __int128 prod = 1;
    std::vector<long long> xs, ds;
    std::vector<int> occur(10, 0);
    for (int i = 1; i <= n; ++i) {
      long long x = sol.at("x" + std::to_string(i));
      long long y = sol.at("y" + std::to_string(i));
      long long z = sol.at("z" + std::to_string(i));
      for (long long d : {x, y, z}) {
        if (d < 1 || d > 9) { why = "digit out of range"; return false; }
        ++occur[static_cast<size_t>(d)];
      }
      xs.push_back(x);
      ds.push_back(10 * y + z);
      prod *= ds.back();
    }
    __int128 lhs = 0;
    for (int i = 0; i < n; ++i) {
      __int128 term = xs[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j)
        if (j != i) term *= ds[static_cast<size_t>(j)];
      lhs += term;
    }
    if (lhs != prod) { why = "fraction sum is not exactly 1"; return false; }
    for (int v = 1; v <= 9; ++v)
      if (occur[v] < 1 || occur[v] > cap) { why = "digit occurrence bounds"; return false; }
    return true;
  };
  return inst;
}

// Number partitioning: split 1..n into two halves of equal cardinality,
// equal sums, and equal sums of squares. The square sums go through the
// pseudo-Boolean path or through binary squaring, by choice.
inline BenchInstance gen_partition(int n, bool via_binary) {
  if (n < 2) fail("partition: n must be at least 2");
  BenchInstance inst;
  inst.family = "partition";
  std::string& s = inst.text;
  for (int i = 1; i <= n; ++i) s += "new_bool(s" + std::to_string(i) + ")\n";
  auto members = [&] {
    std::string list = "[";
    for (int i = 1; i <= n; ++i) {
      if (i > 1) list += ", ";
      list += "s" + std::to_string(i);
    }
    return list + "]";
  }();
  // |A| = n/2, stated as 2|A| = n so odd n stays honestly unsatisfiable
  {
    std::string ws = "[";
    for (int i = 1; i <= n; ++i) {
      if (i > 1) ws += ", ";
      ws += "2";
    }
    ws += "]";
    s += "bool_array_pb_eq(" + ws + ", " + members + ", " + std::to_string(n) + ")\n";
  }
  // sum(A) = sum(B): 2*sum_i i*s_i = n(n+1)/2
  {
    std::string ws = "[";
    for (int i = 1; i <= n; ++i) {
      if (i > 1) ws += ", ";
      ws += std::to_string(2 * i);
    }
    ws += "]";
    s += "bool_array_pb_eq(" + ws + ", " + members + ", " +
         std::to_string(n * (n + 1) / 2) + ")\n";
  }
  long long sq_total = 0;
  for (long long i = 1; i <= n; ++i) sq_total += i * i;
  if (!via_binary) {
    std::string ws = "[";
    for (int i = 1; i <= n; ++i) {
      if (i > 1) ws += ", ";
      ws += std::to_string(2 * i * i);
    }
    ws += "]";
    s += "bool_array_pb_eq(" + ws + ", " + members + ", " + std::to_string(sq_total) + ")\n";
  } else if (sq_total % 2 != 0) {
    s += "bool_array_or([])\n"; // the square sums cannot split evenly
  } else {
    // u_i in {0, i} channels to binary, squares are summed in binary
    for (int i = 1; i <= n; ++i) {
      std::string si = std::to_string(i);
      s += "new_int(u" + si + ", 0, " + si + ")\n";
      for (int v = 1; v < i; ++v)
        s += "int_neq(u" + si + ", " + std::to_string(v) + ")\n";
      s += "int_eq_reif(u" + si + ", " + si + ", s" + si + ")\n";
      int w = 1;
      while ((1 << w) <= i) ++w;
      s += "new_binary(ub" + si + ", " + std::to_string(w) + ")\n";
      s += "int2binary(u" + si + ", ub" + si + ")\n";
      s += "new_binary(usq" + si + ", " + std::to_string(2 * w) + ")\n";
      s += "binary_square(ub" + si + ", usq" + si + ")\n";
    }
    int sw = 1;
    while ((1ll << sw) <= sq_total) ++sw;
    s += "new_binary(sqsum, " + std::to_string(sw) + ")\n";
    s += "binary_array_sum_eq([";
    for (int i = 1; i <= n; ++i) {
      if (i > 1) s += ", ";
      s += "usq" + std::to_string(i);
    }
    s += "], sqsum)\n";
    s += "binary_array_sum_eq([" + std::to_string(sq_total / 2) + "], sqsum)\n";
  }

  inst.verify = [n](const std::map<std::string, long long>& sol, std::string& why) {
    long long cnt = 0, sum = 0, sq = 0, tsum = 0, tsq = 0;
    for (long long i = 1; i <= n; ++i) {
      tsum += i;
      tsq += i * i;
      if (sol.at("s" + std::to_string(i)) == 1) {
        ++cnt;
        sum += i;
        sq += i * i;
      }
    }
    if (2 * cnt != n) { why = "cardinality"; return false; }
    if (2 * sum != tsum) { why = "sums differ"; return false; }
    if (2 * sq != tsq) { why = "square sums differ"; return false; }
    return true;
  };
  return inst;
}

} // namespace bench
} // namespace equi
