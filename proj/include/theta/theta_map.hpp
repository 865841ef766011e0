#pragma once

#include <map>
#include <memory>
#include <utility>

#include "theta/cell.hpp"

namespace theta {

/// A morphism of the wreath presentation: a monotone simplicial part between
/// the widths plus, for each source child i, one component map to every
/// target child j in F(simplicial)(i). Source and target are stored
/// explicitly and equality is structural, so hom sets are decidable.
class ThetaMap {
 public:
  ThetaMap(Cell src, Cell tgt, SimplexMap simplicial,
           std::vector<std::vector<ThetaMap>> components)
      : src_(std::make_shared<Cell>(std::move(src))),
        tgt_(std::make_shared<Cell>(std::move(tgt))),
        simplicial_(std::move(simplicial)),
        components_(std::make_shared<std::vector<std::vector<ThetaMap>>>(
            std::move(components))) {
    validate();
  }

  static ThetaMap identity(const Cell& t) {
    std::vector<std::vector<ThetaMap>> comps;
    comps.reserve(t.children.size());
    for (const Cell& c : t.children) comps.push_back({identity(c)});
    return ThetaMap(t, t, SimplexMap::identity(SimplexObject(t.width())),
                    std::move(comps));
  }

  const Cell& src() const { return *src_; }
  const Cell& tgt() const { return *tgt_; }
  const SimplexMap& simplicial() const { return simplicial_; }
  const std::vector<std::vector<ThetaMap>>& components() const {
    return *components_;
  }

  /// Targets of source child i (1-based): the interval
  /// (simplicial(i-1), simplicial(i)] in 1-based child indices.
  std::pair<int, int> target_range(int i) const {
    return {simplicial_(i - 1) + 1, simplicial_(i)};
  }

  /// Component map src.children[i-1] -> tgt.children[j-1]; j must lie in
  /// target_range(i).
  const ThetaMap& component(int i, int j) const {
    auto [lo, hi] = target_range(i);
    if (j < lo || j > hi) throw domain_error("ThetaMap: no component (i,j)");
    return (*components_)[i - 1][j - lo];
  }

  bool is_identity() const {
    if (!(src() == tgt()) || !simplicial_.is_identity()) return false;
    for (const auto& fam : *components_)
      for (const ThetaMap& c : fam)
        if (!c.is_identity()) return false;
    return true;
  }

  bool operator==(const ThetaMap& o) const {
    return src() == o.src() && tgt() == o.tgt() &&
           simplicial_ == o.simplicial_ && *components_ == *o.components_;
  }
  bool operator!=(const ThetaMap& o) const { return !(*this == o); }
  bool operator<(const ThetaMap& o) const {
    if (src() != o.src()) return src() < o.src();
    if (tgt() != o.tgt()) return tgt() < o.tgt();
    if (simplicial_ != o.simplicial_) return simplicial_ < o.simplicial_;
    return *components_ < *o.components_;
  }

 private:
  void validate() const {
    const Cell& s = *src_;
    const Cell& t = *tgt_;
    if (simplicial_.src().n != s.width() || simplicial_.tgt().n != t.width())
      throw domain_error("ThetaMap: simplicial part has wrong shape");
    if (static_cast<int>(components_->size()) != s.width())
      throw domain_error("ThetaMap: wrong number of component families");
    for (int i = 1; i <= s.width(); ++i) {
      auto [lo, hi] = target_range(i);
      const auto& fam = (*components_)[i - 1];
      if (static_cast<int>(fam.size()) != hi - lo + 1)
        throw domain_error("ThetaMap: component family has wrong size");
      for (int j = lo; j <= hi; ++j) {
        const ThetaMap& c = fam[j - lo];
        if (c.src() != s.children[i - 1] || c.tgt() != t.children[j - 1])
          throw domain_error("ThetaMap: component endpoints disagree");
      }
    }
  }

  std::shared_ptr<Cell> src_, tgt_;
  SimplexMap simplicial_;
  std::shared_ptr<std::vector<std::vector<ThetaMap>>> components_;
};

/// beta . alpha with the wreath index threading: the component of the
/// composite at (i, j) is beta's component at (k, j) after alpha's at (i, k),
/// for the unique k in F(alpha)(i) with j in F(beta)(k).
inline ThetaMap theta_compose(const ThetaMap& beta, const ThetaMap& alpha) {
  if (alpha.tgt() != beta.src())
    throw domain_error("theta_compose: source/target mismatch");
  SimplexMap simp = simplex_compose(beta.simplicial(), alpha.simplicial());
  std::vector<std::vector<ThetaMap>> comps;
  comps.reserve(alpha.src().width());
  for (int i = 1; i <= alpha.src().width(); ++i) {
    int lo = simp(i - 1) + 1, hi = simp(i);
    std::vector<ThetaMap> fam;
    fam.reserve(hi - lo + 1);
    for (int j = lo; j <= hi; ++j) {
      auto [alo, ahi] = alpha.target_range(i);
      int k = -1;
      for (int kk = alo; kk <= ahi; ++kk) {
        auto [blo, bhi] = beta.target_range(kk);
        if (j >= blo && j <= bhi) {
          k = kk;
          break;
        }
      }
      if (k < 0) throw domain_error("theta_compose: broken threading");
      fam.push_back(theta_compose(beta.component(k, j), alpha.component(i, k)));
    }
    comps.push_back(std::move(fam));
  }
  return ThetaMap(alpha.src(), beta.tgt(), std::move(simp), std::move(comps));
}

/// Every morphism S -> T exactly once: a simplicial part and then, for each
/// source child and each of its targets, an independent choice of component.
/// Hom(S,[0]) is a single map; Hom([0],T) is one map per vertex of T.
inline const std::vector<ThetaMap>& theta_hom_enumerate(const Cell& s,
                                                        const Cell& t) {
  static std::map<std::pair<std::string, std::string>, std::vector<ThetaMap>>
      memo;
  auto key = std::make_pair(serial(s), serial(t));
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  std::vector<ThetaMap> out;
  for (const SimplexMap& f :
       simplex_hom_enumerate(SimplexObject(s.width()), SimplexObject(t.width()))) {
    // slots: (i, j) pairs in order, with their candidate component sets
    std::vector<const std::vector<ThetaMap>*> options;
    std::vector<std::pair<int, int>> slots;
    bool possible = true;
    for (int i = 1; i <= s.width() && possible; ++i) {
      for (int j = f(i - 1) + 1; j <= f(i); ++j) {
        const auto& opts =
            theta_hom_enumerate(s.children[i - 1], t.children[j - 1]);
        if (opts.empty()) {
          possible = false;
          break;
        }
        options.push_back(&opts);
        slots.emplace_back(i, j);
      }
    }
    if (!possible) continue;
    std::vector<std::size_t> idx(options.size(), 0);
    while (true) {
      std::vector<std::vector<ThetaMap>> comps(s.width());
      for (std::size_t k = 0; k < slots.size(); ++k)
        comps[slots[k].first - 1].push_back((*options[k])[idx[k]]);
      out.push_back(ThetaMap(s, t, f, std::move(comps)));
      std::size_t k = options.size();
      while (k > 0 && idx[k - 1] + 1 == options[k - 1]->size()) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t r = k; r < options.size(); ++r) idx[r] = 0;
    }
  }
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

/// The v-th vertex of t as a map from the leaf; vertices are ordered left to
/// right by the top-level simplicial value, v in {0,...,width(t)}.
inline ThetaMap vertex(const Cell& t, int v) {
  if (v < 0 || v > t.width()) throw domain_error("vertex: index out of range");
  return ThetaMap(leaf(), t,
                  SimplexMap(SimplexObject(0), SimplexObject(t.width()), {v}),
                  {});
}

/// The unique map s -> [0].
inline ThetaMap terminal_map(const Cell& s) {
  std::vector<int> v(s.width() + 1, 0);
  std::vector<std::vector<ThetaMap>> comps(s.width());
  return ThetaMap(s, leaf(),
                  SimplexMap(SimplexObject(s.width()), SimplexObject(0), v),
                  std::move(comps));
}

/// s : globe(n) -> globe(n+1), the nested source inclusion [id;...[d^1]].
inline ThetaMap globe_s(int n) {
  if (n == 0)
    return ThetaMap(globe(0), globe(1), SimplexMap::coface(0, 1), {});
  return ThetaMap(globe(n), globe(n + 1),
                  SimplexMap::identity(SimplexObject(1)), {{globe_s(n - 1)}});
}

/// t : globe(n) -> globe(n+1), the nested target inclusion [id;...[d^0]].
inline ThetaMap globe_t(int n) {
  if (n == 0)
    return ThetaMap(globe(0), globe(1), SimplexMap::coface(0, 0), {});
  return ThetaMap(globe(n), globe(n + 1),
                  SimplexMap::identity(SimplexObject(1)), {{globe_t(n - 1)}});
}

/// i : globe(n+1) -> globe(n), the nested reflexivity [id;...[s^0]]; a common
/// section witness for s and t (i.s = i.t = id).
inline ThetaMap globe_i(int n) {
  if (n == 0)
    return ThetaMap(globe(1), globe(0), SimplexMap::codegeneracy(0, 0), {{}});
  return ThetaMap(globe(n + 1), globe(n),
                  SimplexMap::identity(SimplexObject(1)), {{globe_i(n - 1)}});
}

/// The canonical inclusion of the i-th width block [[1];T_i] -> T (1-based).
inline ThetaMap block_inclusion(const Cell& t, int i) {
  if (i < 1 || i > t.width()) throw domain_error("block_inclusion: bad index");
  Cell blk = node({t.children[i - 1]});
  SimplexMap f(SimplexObject(1), SimplexObject(t.width()), {i - 1, i});
  return ThetaMap(blk, t, std::move(f),
                  {{ThetaMap::identity(t.children[i - 1])}});
}

/// Glues maps [[1];T_i] -> S along the shared vertices into the unique map
/// T -> S restricting to each piece; consecutive pieces must agree on the
/// glue vertex (verified by composing with the vertex inclusions).
inline ThetaMap assemble_glued_map(const Cell& t,
                                   const std::vector<ThetaMap>& pieces) {
  int k = t.width();
  if (k == 0)
    throw domain_error("assemble_glued_map: leaf cell has no width pieces");
  if (static_cast<int>(pieces.size()) != k)
    throw domain_error("assemble_glued_map: need one piece per width block");
  for (int i = 1; i <= k; ++i) {
    Cell expect = node({t.children[i - 1]});
    if (pieces[i - 1].src() != expect)
      throw domain_error("assemble_glued_map: piece has wrong source");
    if (pieces[i - 1].tgt() != pieces[0].tgt())
      throw domain_error("assemble_glued_map: mismatched targets");
  }
  for (int i = 1; i < k; ++i) {
    ThetaMap plus = theta_compose(pieces[i - 1],
                                  vertex(pieces[i - 1].src(), 1));
    ThetaMap minus = theta_compose(pieces[i], vertex(pieces[i].src(), 0));
    if (plus != minus)
      throw domain_error("assemble_glued_map: incompatible pieces");
  }
  const Cell& s = pieces[0].tgt();
  std::vector<int> values(k + 1);
  values[0] = pieces[0].simplicial()(0);
  for (int i = 1; i <= k; ++i) values[i] = pieces[i - 1].simplicial()(1);
  SimplexMap f(SimplexObject(k), SimplexObject(s.width()), std::move(values));
  std::vector<std::vector<ThetaMap>> comps;
  comps.reserve(k);
  for (int i = 1; i <= k; ++i) comps.push_back(pieces[i - 1].components()[0]);
  return ThetaMap(t, s, std::move(f), std::move(comps));
}

}  // namespace theta
