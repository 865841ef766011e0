#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "theta/gamma.hpp"
#include "theta/simplex.hpp"

namespace theta {

/// A cell of the wreath tower: a planar rooted tree. The leaf is [0] and
/// [[n];T1...Tn] has children T1...Tn. Cells are canonical: structural
/// equality is object equality, there is nothing to quotient.
struct Cell {
  std::vector<Cell> children;

  Cell() = default;
  explicit Cell(std::vector<Cell> ch) : children(std::move(ch)) {}

  int width() const { return static_cast<int>(children.size()); }
  bool is_leaf() const { return children.empty(); }

  bool operator==(const Cell& o) const { return children == o.children; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
  bool operator<(const Cell& o) const {
    return std::lexicographical_compare(children.begin(), children.end(),
                                        o.children.begin(), o.children.end());
  }
};

inline Cell leaf() { return Cell{}; }

/// Builds [[n];T1...Tn] from its children. Prefer this over the constructor
/// for one-child lists, where Cell({t}) would select the copy constructor.
inline Cell node(std::vector<Cell> ch) {
  Cell c;
  c.children = std::move(ch);
  return c;
}

/// lambda([[n];T1...Tn]) = n + sum lambda(Ti); the skeletal degree.
inline int degree(const Cell& t) {
  int d = t.width();
  for (const Cell& c : t.children) d += degree(c);
  return d;
}

/// The n-globe: n nested width-one nodes around the leaf.
inline Cell globe(int n) {
  if (n < 0) throw domain_error("globe: n must be >= 0");
  Cell t;
  for (int k = 0; k < n; ++k) t = node({t});
  return t;
}

/// Compact serial form, e.g. "[[2];[0],[[1];[0]]]"; doubles as a sort key.
inline std::string serial(const Cell& t) {
  if (t.is_leaf()) return "[0]";
  std::string s = "[[" + std::to_string(t.width()) + "];";
  for (int i = 0; i < t.width(); ++i) {
    if (i) s += ",";
    s += serial(t.children[i]);
  }
  s += "]";
  return s;
}

/// The alternating globular-sum sequence (n0, m1, n1, ..., ml, nl); l >= 0
/// and each mi <= n(i-1), ni. The reduced form additionally has mi strictly
/// below both neighbors; reduced sequences biject with cells.
struct GlobularSum {
  std::vector<int> seq;  // odd length: n0 m1 n1 ... ml nl

  GlobularSum() : seq{0} {}
  explicit GlobularSum(std::vector<int> s) : seq(std::move(s)) {
    if (seq.empty() || seq.size() % 2 == 0)
      throw domain_error("GlobularSum: sequence must have odd length");
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] < 0) throw domain_error("GlobularSum: negative entry");
      if (i % 2 == 1 && (seq[i] > seq[i - 1] || seq[i] > seq[i + 1]))
        throw domain_error("GlobularSum: m_i exceeds a neighbor");
    }
  }

  int segments() const { return static_cast<int>(seq.size() / 2); }  // l
  bool operator==(const GlobularSum& o) const { return seq == o.seq; }
};

/// Merges segments where some m_i equals a neighbor (the glue absorbs a
/// whole globe); the result is the unique reduced form.
inline GlobularSum globular_sum_normalize(GlobularSum g) {
  std::vector<int>& s = g.seq;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i + 1 < s.size(); i += 2) {
      if (s[i] == s[i - 1]) {  // left globe absorbed
        s.erase(s.begin() + static_cast<long>(i) - 1,
                s.begin() + static_cast<long>(i) + 1);
        changed = true;
        break;
      }
      if (s[i] == s[i + 1]) {  // right globe absorbed
        s.erase(s.begin() + static_cast<long>(i),
                s.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return g;
}

/// The tree A(n0,m1,...,nl): split at the zero m's, recurse on each run with
/// every entry decremented. Accepts non-reduced input by normalizing first.
inline Cell globular_sum_to_cell(const GlobularSum& g0) {
  GlobularSum g = globular_sum_normalize(g0);
  const std::vector<int>& s = g.seq;
  if (s.size() == 1 && s[0] == 0) return leaf();
  // runs between zero m's
  std::vector<std::vector<int>> runs;
  std::vector<int> cur{s[0]};
  for (std::size_t i = 1; i + 1 < s.size(); i += 2) {
    if (s[i] == 0) {
      runs.push_back(cur);
      cur = {s[i + 1]};
    } else {
      cur.push_back(s[i]);
      cur.push_back(s[i + 1]);
    }
  }
  runs.push_back(cur);
  std::vector<Cell> children;
  children.reserve(runs.size());
  for (std::vector<int>& run : runs) {
    for (int& v : run) --v;  // reduced, so every entry in a run is >= 1
    children.push_back(globular_sum_to_cell(GlobularSum(std::move(run))));
  }
  return Cell(std::move(children));
}

/// Inverse of globular_sum_to_cell; always returns the reduced form.
inline GlobularSum cell_to_globular_sum(const Cell& t) {
  if (t.is_leaf()) return GlobularSum();
  std::vector<int> s;
  for (int i = 0; i < t.width(); ++i) {
    if (i) s.push_back(0);
    GlobularSum child = cell_to_globular_sum(t.children[i]);
    for (int v : child.seq) s.push_back(v + 1);
  }
  return GlobularSum(std::move(s));
}

/// All cells with lambda <= max_degree, each once, ordered by degree and then
/// by serial form.
inline std::vector<Cell> enumerate_cells(int max_degree) {
  if (max_degree < 0) throw domain_error("enumerate_cells: negative degree");
  // by_degree[d] = cells of degree exactly d, built bottom-up
  std::vector<std::vector<Cell>> by_degree(max_degree + 1);
  by_degree[0] = {leaf()};
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<Cell> cells;
    // width k contributes k to the degree; children degrees sum to d - k
    for (int k = 1; k <= d; ++k) {
      std::vector<Cell> partial;
      std::vector<std::vector<Cell>> stacks{{}};
      // enumerate k-tuples of cells with degree sum d - k
      std::vector<std::vector<Cell>> tuples;
      std::vector<Cell> tuple;
      auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == k) {
          if (remaining == 0) tuples.push_back(tuple);
          return;
        }
        int maxd = remaining - 0;
        for (int cd = 0; cd <= maxd; ++cd) {
          for (const Cell& c : by_degree[cd]) {
            tuple.push_back(c);
            self(self, slot + 1, remaining - cd);
            tuple.pop_back();
          }
        }
      };
      rec(rec, 0, d - k);
      for (std::vector<Cell>& tp : tuples) cells.push_back(Cell(std::move(tp)));
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
      return serial(a) < serial(b);
    });
    by_degree[d] = std::move(cells);
  }
  std::vector<Cell> out;
  for (auto& v : by_degree)
    for (Cell& c : v) out.push_back(std::move(c));
  return out;
}

}  // namespace theta
