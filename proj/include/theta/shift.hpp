#pragma once

#include "theta/skeletal.hpp"

namespace theta {

/// J(T) = [[1];T]; adds one to every entry of the globular sum.
inline Cell shift_cell(const Cell& t) { return node({t}); }

/// J on morphisms: [id_[1]; alpha].
inline ThetaMap shift_map(const ThetaMap& alpha) {
  return ThetaMap(shift_cell(alpha.src()), shift_cell(alpha.tgt()),
                  SimplexMap::identity(SimplexObject(1)), {{alpha}});
}

/// min-clamps the globular sum at p and renormalizes; K_p(T) = T iff every
/// entry is at most p. Defined for p >= 1; the p = 0 data is covered by the
/// vertex operations below.
inline Cell collapse(int p, const Cell& t) {
  if (p < 1) throw domain_error("collapse: p = 0 is handled by vertex ops");
  GlobularSum g = cell_to_globular_sum(t);
  for (int& v : g.seq) v = std::min(v, p);
  return globular_sum_to_cell(g);
}

/// The first (source-most) vertex of t.
inline ThetaMap vertex_in_minus(const Cell& t) { return vertex(t, 0); }

/// The last (target-most) vertex of t.
inline ThetaMap vertex_in_plus(const Cell& t) { return vertex(t, t.width()); }

/// The constant map s -> t through the chosen end vertex of t.
inline ThetaMap constant_to(const Cell& s, const Cell& t, bool plus) {
  return theta_compose(plus ? vertex_in_plus(t) : vertex_in_minus(t),
                       terminal_map(s));
}

/// The unit C_T : T -> K_p(T) together with its two splittings
/// D_p, F_p : K_p(T) -> T; c.d = c.f = id on K_p(T).
struct CollapseData {
  int p;
  ThetaMap c_map;
  ThetaMap d_map;
  ThetaMap f_map;
};

namespace detail {

// All three maps leave the width intact at every level; at the cut p = 1 the
// children collapse to leaves, with the splittings re-entering through the
// end vertices (source-most for D, target-most for F).
inline ThetaMap collapse_c(int p, const Cell& t) {
  std::vector<std::vector<ThetaMap>> comps;
  for (const Cell& ch : t.children)
    comps.push_back({p == 1 ? terminal_map(ch) : collapse_c(p - 1, ch)});
  return ThetaMap(t, collapse(p, t),
                  SimplexMap::identity(SimplexObject(t.width())),
                  std::move(comps));
}

inline ThetaMap collapse_split(int p, const Cell& t, bool plus) {
  std::vector<std::vector<ThetaMap>> comps;
  for (const Cell& ch : t.children) {
    if (p == 1)
      comps.push_back({plus ? vertex_in_plus(ch) : vertex_in_minus(ch)});
    else
      comps.push_back({collapse_split(p - 1, ch, plus)});
  }
  return ThetaMap(collapse(p, t), t,
                  SimplexMap::identity(SimplexObject(t.width())),
                  std::move(comps));
}

}  // namespace detail

inline CollapseData collapse_maps(int p, const Cell& t) {
  if (p < 1) throw domain_error("collapse_maps: p must be >= 1");
  return CollapseData{p, detail::collapse_c(p, t),
                      detail::collapse_split(p, t, false),
                      detail::collapse_split(p, t, true)};
}

/// The long-edge map S+1 -> T through K_1: simplicial part the full edge
/// (0, width(T)), components the constant maps onto the target-most
/// vertices. For width(T) = 0 this degenerates to the unique constant.
inline ThetaMap eh_aux_F(const Cell& s, const Cell& t) {
  Cell src = shift_cell(s);
  if (t.width() == 0) return terminal_map(src);
  ThetaMap c1 = detail::collapse_c(1, src);  // S+1 -> [[1];[0]]
  // (d^1)^{t-1} : [[1];[0]] -> [[w];[0]...[0]], the long edge
  int w = t.width();
  std::vector<Cell> pts(w, leaf());
  Cell k1t = node(std::move(pts));
  std::vector<std::vector<ThetaMap>> edge_comps;
  edge_comps.push_back(std::vector<ThetaMap>(w, ThetaMap::identity(leaf())));
  ThetaMap long_edge(shift_cell(leaf()), k1t,
                     SimplexMap(SimplexObject(1), SimplexObject(w), {0, w}),
                     std::move(edge_comps));
  ThetaMap f1 = detail::collapse_split(1, t, true);  // K_1(T) -> T
  return theta_compose(f1, theta_compose(long_edge, c1));
}

/// Same as eh_aux_F with the source-most splitting.
inline ThetaMap eh_aux_D(const Cell& s, const Cell& t) {
  Cell src = shift_cell(s);
  if (t.width() == 0) return terminal_map(src);
  ThetaMap c1 = detail::collapse_c(1, src);
  int w = t.width();
  std::vector<Cell> pts(w, leaf());
  Cell k1t = node(std::move(pts));
  std::vector<std::vector<ThetaMap>> edge_comps;
  edge_comps.push_back(std::vector<ThetaMap>(w, ThetaMap::identity(leaf())));
  ThetaMap long_edge(shift_cell(leaf()), k1t,
                     SimplexMap(SimplexObject(1), SimplexObject(w), {0, w}),
                     std::move(edge_comps));
  ThetaMap d1 = detail::collapse_split(1, t, false);
  return theta_compose(d1, theta_compose(long_edge, c1));
}

/// The Eckmann-Hilton degeneracy E_T : T+1 -> T, defined by recursion with
/// base the canonical map 1-globe -> 0-globe. The width pieces of T+1 map in
/// by [(d^1)^{k-1}; (in+, ..., in+, E_{T_i}, in-, ..., in-)], constants on
/// the off-diagonal slots; the glue compatibility of the pieces is verified
/// by the assembler rather than assumed.
inline ThetaMap eckmann_hilton(const Cell& t) {
  if (t.is_leaf()) return globe_i(0);
  int k = t.width();
  // psi_j : T -> T_j assembled from the width pieces of T
  std::vector<std::vector<ThetaMap>> comps(1);
  SimplexMap long_edge(SimplexObject(1), SimplexObject(k), {0, k});
  for (int j = 1; j <= k; ++j) {
    std::vector<ThetaMap> pieces;
    for (int i = 1; i <= k; ++i) {
      Cell block = node({t.children[i - 1]});
      if (i < j)
        pieces.push_back(constant_to(block, t.children[j - 1], false));
      else if (i == j)
        pieces.push_back(eckmann_hilton(t.children[j - 1]));
      else
        pieces.push_back(constant_to(block, t.children[j - 1], true));
    }
    comps[0].push_back(assemble_glued_map(t, pieces));
  }
  return ThetaMap(shift_cell(t), t, std::move(long_edge), std::move(comps));
}

}  // namespace theta
