#pragma once

#include <optional>
#include <set>

#include "theta/theta_map.hpp"

namespace theta {

enum class MapClass { Identity, Positive, Negative, Mixed };

inline int map_degree(const ThetaMap& f) {
  return degree(f.tgt()) - degree(f.src());
}

/// Joint-monomorphism test by probing: a family with common source is
/// jointly monic iff post-composition separates all pairs of probe maps.
/// Globe probes suffice: a map out of any cell is determined by its
/// restrictions to the globes of its globular-sum decomposition, so a
/// separation failure is always witnessed on a globe.
inline bool is_jointly_monic(const std::vector<ThetaMap>& family) {
  if (family.empty()) return false;
  const Cell& src = family.front().src();
  int bound = degree(src) + 1;
  for (int m = 0; m <= bound; ++m) {
    const auto& probes = theta_hom_enumerate(globe(m), src);
    std::set<std::vector<ThetaMap>> images;
    for (const ThetaMap& h : probes) {
      std::vector<ThetaMap> tuple;
      tuple.reserve(family.size());
      for (const ThetaMap& f : family) tuple.push_back(theta_compose(f, h));
      if (!images.insert(std::move(tuple)).second) return false;
    }
  }
  return true;
}

namespace detail {

inline bool is_negative_rec(const ThetaMap& f) {
  if (!f.simplicial().is_surjective()) return false;
  for (const auto& fam : f.components())
    for (const ThetaMap& c : fam)
      if (!is_negative_rec(c)) return false;
  return true;
}

}  // namespace detail

/// Degree-signed classification. Positivity is decided semantically, as
/// joint injectivity on enumerated probe homs; negativity follows the wreath
/// recursion (epi simplicial part, recursively negative components).
inline MapClass classify(const ThetaMap& f) {
  static std::map<ThetaMap, MapClass> memo;
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  MapClass out;
  if (f.is_identity())
    out = MapClass::Identity;
  else if (is_jointly_monic({f}))
    out = MapClass::Positive;
  else if (detail::is_negative_rec(f))
    out = MapClass::Negative;
  else
    out = MapClass::Mixed;
  memo.emplace(f, out);
  return out;
}

/// The Sk2 factorization alpha = delta . pi with pi negative (or identity)
/// and delta positive (or identity), found by enumerating middle objects;
/// uniqueness holds because the category is rigid and is checked by tests.
inline std::pair<ThetaMap, ThetaMap> skeletal_factorize(const ThetaMap& alpha) {
  int cap = std::min(degree(alpha.src()), degree(alpha.tgt()));
  for (const Cell& m : enumerate_cells(cap)) {
    for (const ThetaMap& pi : theta_hom_enumerate(alpha.src(), m)) {
      MapClass cp = classify(pi);
      if (cp != MapClass::Negative && cp != MapClass::Identity) continue;
      for (const ThetaMap& delta : theta_hom_enumerate(m, alpha.tgt())) {
        MapClass cd = classify(delta);
        if (cd != MapClass::Positive && cd != MapClass::Identity) continue;
        if (theta_compose(delta, pi) == alpha) return {pi, delta};
      }
    }
  }
  throw domain_error("skeletal_factorize: no factorization found");
}

/// All positive maps of degree exactly one into t.
inline const std::vector<ThetaMap>& boundary_cofaces(const Cell& t) {
  static std::map<std::string, std::vector<ThetaMap>> memo;
  std::string key = serial(t);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<ThetaMap> out;
  int d = degree(t);
  if (d >= 1) {
    for (const Cell& b : enumerate_cells(d - 1)) {
      if (degree(b) != d - 1) continue;
      for (const ThetaMap& f : theta_hom_enumerate(b, t))
        if (classify(f) == MapClass::Positive) out.push_back(f);
    }
  }
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

/// Writes a positive map as a chain of exactly lambda(delta) cofaces,
/// peeling one coface of the target at a time. The chain composes outermost
/// last: delta = chain[last] . ... . chain[0].
inline std::vector<ThetaMap> coface_factor(const ThetaMap& delta) {
  if (classify(delta) != MapClass::Positive)
    throw domain_error("coface_factor: input not positive");
  if (map_degree(delta) == 1) return {delta};
  for (const ThetaMap& gamma : boundary_cofaces(delta.tgt())) {
    for (const ThetaMap& beta :
         theta_hom_enumerate(delta.src(), gamma.src())) {
      if (theta_compose(gamma, beta) != delta) continue;
      MapClass cb = classify(beta);
      if (cb != MapClass::Positive) continue;
      std::vector<ThetaMap> chain = coface_factor(beta);
      chain.push_back(gamma);
      return chain;
    }
  }
  throw domain_error("coface_factor: not incremental (no coface peels off)");
}

/// A pair of cofaces with common target.
struct CofacePair {
  ThetaMap f, g;

  CofacePair(ThetaMap f_, ThetaMap g_) : f(std::move(f_)), g(std::move(g_)) {
    if (f.tgt() != g.tgt()) throw domain_error("CofacePair: targets differ");
    if (classify(f) != MapClass::Positive || map_degree(f) != 1 ||
        classify(g) != MapClass::Positive || map_degree(g) != 1)
      throw domain_error("CofacePair: maps must be cofaces");
  }
};

/// The fiber product of a coface pair, following the wreath formula: the
/// simplicial pullback indexes slots by the Gamma-pullback elements, and
/// each slot is the limit of the small diagram cut out by that element.
///
/// Slots may fail to be cells: the vertex cofaces d^1, d^0 into the 1-globe
/// have empty intersection, and when that configuration arises inside a
/// slot the fiber product is a genuine non-representable presheaf. The
/// result therefore distinguishes three shapes. Empty means the simplicial
/// pullback itself is empty; Representable carries the apex cell and
/// projections; NonRepresentable retains the slot structure so callers can
/// still evaluate the fiber product levelwise via span_cells().
class CofacePullback {
 public:
  enum class Kind { Empty, Representable, NonRepresentable };

  struct Slot {
    enum class Kind { Cell, Sub, Diagram } kind;
    std::vector<int> a_children, b_children;  // I_z, J_z (1-based indices)

    // Kind::Cell: the slot object plus one leg per incident child
    std::optional<theta::Cell> cell;
    std::vector<ThetaMap> a_legs, b_legs;  // aligned with a_children/b_children

    // Kind::Sub: a nested coface pullback (inner/inner at one child)
    std::shared_ptr<CofacePullback> sub;

    // Kind::Diagram: general fallback, solved by cone enumeration; arrows
    // from each source child to each of its targets in Y_z
    std::vector<std::pair<int, std::vector<ThetaMap>>> a_arrows, b_arrows;
    std::vector<theta::Cell> c_objects;  // cells c_y for y in Y_z
    std::vector<std::vector<int>> a_targets, b_targets;  // indices into Y_z
  };

  Kind kind() const { return kind_; }
  const Cell& apex() const {
    if (kind_ != Kind::Representable)
      throw domain_error("CofacePullback: no apex cell");
    return *apex_;
  }
  const ThetaMap& proj_left() const { return *proj_left_; }
  const ThetaMap& proj_right() const { return *proj_right_; }
  const std::vector<Slot>& slots() const { return slots_; }

  /// All pairs (u : s -> src(f), v : s -> src(g)) with f.u = g.v, generated
  /// from the slot structure; this is the fiber product evaluated at s and
  /// is defined for every non-Empty kind (and empty for Kind::Empty).
  std::vector<std::pair<ThetaMap, ThetaMap>> span_cells(const Cell& s) const;

  static CofacePullback compute(const CofacePair& pair);

 private:
  Kind kind_ = Kind::Empty;
  Cell src_a_, src_b_;                    // the two coface sources
  std::optional<SimplexMap> simp_left_;   // [q] -> [width(src f)]
  std::optional<SimplexMap> simp_right_;  // [q] -> [width(src g)]
  std::vector<Slot> slots_;
  std::optional<Cell> apex_;
  std::optional<ThetaMap> proj_left_, proj_right_;
};

namespace detail {

struct CofaceShape {
  enum class Type { PureSimplicial, Mixed, Inner } type;
  int special_child = 0;  // source child index (1-based) for Mixed/Inner
};

inline CofaceShape coface_shape(const ThetaMap& f) {
  CofaceShape s{CofaceShape::Type::PureSimplicial, 0};
  if (f.simplicial().is_identity()) {
    s.type = CofaceShape::Type::Inner;
    for (int i = 1; i <= f.src().width(); ++i)
      if (!f.component(i, i).is_identity()) {
        s.special_child = i;
        return s;
      }
    throw domain_error("coface_shape: identity is not a coface");
  }
  for (int i = 1; i <= f.src().width(); ++i) {
    auto [lo, hi] = f.target_range(i);
    if (hi - lo + 1 == 2) {
      s.type = CofaceShape::Type::Mixed;
      s.special_child = i;
      return s;
    }
  }
  return s;  // d^0 or d^l with identity components
}

}  // namespace detail

inline CofacePullback CofacePullback::compute(const CofacePair& pair) {
  const ThetaMap& f = pair.f;
  const ThetaMap& g = pair.g;
  const Cell& t = f.tgt();
  int l = t.width(), n = f.src().width(), m = g.src().width();

  CofacePullback out;
  out.src_a_ = f.src();
  out.src_b_ = g.src();

  const SimplexMap& sf = f.simplicial();
  const SimplexMap& sg = g.simplicial();

  // simplicial pullback in the simplex category; both parts are identities
  // or cofaces d^k, so the pullback exists unless they are the two distinct
  // vertices of [1]
  std::optional<SimplexMap> pl, pr;
  auto missing = [](const SimplexMap& h) {
    // h injective [w-1] -> [w]: the unique value not attained
    std::vector<bool> hit(h.tgt().n + 1, false);
    for (int v : h.values()) hit[v] = true;
    for (int v = 0; v <= h.tgt().n; ++v)
      if (!hit[v]) return v;
    throw domain_error("missing: map is surjective");
  };
  if (sf.is_identity() && sg.is_identity()) {
    pl = SimplexMap::identity(SimplexObject(l));
    pr = pl;
  } else if (sf.is_identity()) {
    pl = sg;
    pr = SimplexMap::identity(SimplexObject(m));
  } else if (sg.is_identity()) {
    pl = SimplexMap::identity(SimplexObject(n));
    pr = sf;
  } else {
    int i = missing(sf), j = missing(sg);
    if (i == j) {
      pl = SimplexMap::identity(SimplexObject(n));
      pr = pl;
    } else if (l == 1) {
      out.kind_ = Kind::Empty;
      return out;  // d^1, d^0 : [0] => [1]; no fiber product in the site
    } else if (i < j) {
      pl = SimplexMap::coface(l - 2, j - 1);
      pr = SimplexMap::coface(l - 2, i);
    } else {
      pl = SimplexMap::coface(l - 2, j);
      pr = SimplexMap::coface(l - 2, i - 1);
    }
  }
  if (simplex_compose(sf, *pl) != simplex_compose(sg, *pr))
    throw domain_error("coface_pullback: simplicial square broken");
  out.simp_left_ = pl;
  out.simp_right_ = pr;

  GammaPullback gp = gamma_pullback(gamma_from_simplex(sf), gamma_from_simplex(sg));
  int q = pl->src().n;
  if (gp.apex.n != q)
    throw domain_error("coface_pullback: gamma apex disagrees with simplex");
  // slots must follow the simplicial order
  GammaMorphism gl = gamma_from_simplex(*pl);
  GammaMorphism gr = gamma_from_simplex(*pr);

  detail::CofaceShape shf = detail::coface_shape(f);
  detail::CofaceShape shg = detail::coface_shape(g);

  for (int z = 1; z <= q; ++z) {
    Slot slot;
    Subset iz = gl(z), jz = gr(z);
    if (iz != gp.elements[z - 1].first || jz != gp.elements[z - 1].second)
      throw domain_error("coface_pullback: slot order disagrees");
    slot.a_children = subset_elements(iz);
    slot.b_children = subset_elements(jz);

    bool f_special =
        (shf.type != detail::CofaceShape::Type::PureSimplicial) &&
        std::count(slot.a_children.begin(), slot.a_children.end(),
                   shf.special_child) > 0;
    bool g_special =
        (shg.type != detail::CofaceShape::Type::PureSimplicial) &&
        std::count(slot.b_children.begin(), slot.b_children.end(),
                   shg.special_child) > 0;
    bool f_mixed = f_special && shf.type == detail::CofaceShape::Type::Mixed;
    bool g_mixed = g_special && shg.type == detail::CofaceShape::Type::Mixed;

    auto f_comp = [&](int i) {
      auto [lo, hi] = f.target_range(i);
      std::vector<ThetaMap> v;
      for (int y = lo; y <= hi; ++y) v.push_back(f.component(i, y));
      return v;
    };
    auto g_comp = [&](int j) {
      auto [lo, hi] = g.target_range(j);
      std::vector<ThetaMap> v;
      for (int y = lo; y <= hi; ++y) v.push_back(g.component(j, y));
      return v;
    };

    if (!f_special && !g_special) {
      // all incident components are identities: the slot is the shared cell
      slot.kind = Slot::Kind::Cell;
      int i = slot.a_children.at(0);
      slot.cell = f.src().children[i - 1];
      for (int ia : slot.a_children)
        slot.a_legs.push_back(ThetaMap::identity(f.src().children[ia - 1]));
      for (int jb : slot.b_children)
        slot.b_legs.push_back(ThetaMap::identity(g.src().children[jb - 1]));
    } else if (f_special && !g_special && !f_mixed) {
      // inner coface against identities: the slot is its source
      int i0 = shf.special_child;
      const ThetaMap& w = f.component(i0, f.target_range(i0).first);
      slot.kind = Slot::Kind::Cell;
      slot.cell = w.src();
      slot.a_legs.push_back(ThetaMap::identity(w.src()));
      for (std::size_t r = 0; r < slot.b_children.size(); ++r)
        slot.b_legs.push_back(w);
    } else if (g_special && !f_special && !g_mixed) {
      int j0 = shg.special_child;
      const ThetaMap& w = g.component(j0, g.target_range(j0).first);
      slot.kind = Slot::Kind::Cell;
      slot.cell = w.src();
      for (std::size_t r = 0; r < slot.a_children.size(); ++r)
        slot.a_legs.push_back(w);
      slot.b_legs.push_back(ThetaMap::identity(w.src()));
    } else if (f_mixed && !g_special) {
      // glue pair against identities: the slot is the pair's source
      int i0 = shf.special_child;
      auto comps = f_comp(i0);
      slot.kind = Slot::Kind::Cell;
      slot.cell = f.src().children[i0 - 1];
      slot.a_legs.push_back(ThetaMap::identity(*slot.cell));
      // b children are identity components onto c_k, c_{k+1} in order
      if (slot.b_children.size() != comps.size())
        throw domain_error("coface_pullback: mixed slot misaligned");
      for (std::size_t r = 0; r < comps.size(); ++r)
        slot.b_legs.push_back(comps[r]);
    } else if (g_mixed && !f_special) {
      int j0 = shg.special_child;
      auto comps = g_comp(j0);
      slot.kind = Slot::Kind::Cell;
      slot.cell = g.src().children[j0 - 1];
      if (slot.a_children.size() != comps.size())
        throw domain_error("coface_pullback: mixed slot misaligned");
      for (std::size_t r = 0; r < comps.size(); ++r)
        slot.a_legs.push_back(comps[r]);
      slot.b_legs.push_back(ThetaMap::identity(*slot.cell));
    } else if (f_special && g_special && !f_mixed && !g_mixed) {
      // two inner cofaces meeting at the same target child: recurse
      int i0 = shf.special_child, j0 = shg.special_child;
      const ThetaMap& w = f.component(i0, f.target_range(i0).first);
      const ThetaMap& w2 = g.component(j0, g.target_range(j0).first);
      slot.kind = Slot::Kind::Sub;
      slot.sub = std::make_shared<CofacePullback>(
          CofacePullback::compute(CofacePair(w, w2)));
    } else {
      // some mixed pair overlaps the other side's special component: solve
      // the slot diagram by cone enumeration
      slot.kind = Slot::Kind::Diagram;
      for (int y : subset_elements([&] {
             Subset u = 0;
             for (int ia : slot.a_children) {
               auto [lo, hi] = f.target_range(ia);
               for (int y2 = lo; y2 <= hi; ++y2) u |= 1u << (y2 - 1);
             }
             return u;
           }()))
        slot.c_objects.push_back(t.children[y - 1]);
      // record arrows with target positions relative to Y_z
      std::vector<int> ys;
      {
        Subset u = 0;
        for (int ia : slot.a_children) {
          auto [lo, hi] = f.target_range(ia);
          for (int y2 = lo; y2 <= hi; ++y2) u |= 1u << (y2 - 1);
        }
        ys = subset_elements(u);
      }
      auto pos_of = [&](int y) {
        for (std::size_t r = 0; r < ys.size(); ++r)
          if (ys[r] == y) return static_cast<int>(r);
        throw domain_error("coface_pullback: target outside slot");
      };
      for (int ia : slot.a_children) {
        slot.a_arrows.emplace_back(ia, f_comp(ia));
        std::vector<int> tg;
        auto [lo, hi] = f.target_range(ia);
        for (int y2 = lo; y2 <= hi; ++y2) tg.push_back(pos_of(y2));
        slot.a_targets.push_back(tg);
      }
      for (int jb : slot.b_children) {
        slot.b_arrows.emplace_back(jb, g_comp(jb));
        std::vector<int> tg;
        auto [lo, hi] = g.target_range(jb);
        for (int y2 = lo; y2 <= hi; ++y2) tg.push_back(pos_of(y2));
        slot.b_targets.push_back(tg);
      }
    }
    out.slots_.push_back(std::move(slot));
  }

  // try to resolve every slot to a cell with legs; Diagram slots get a
  // universal-cone search, Sub slots use their nested resolution
  std::vector<Cell> slot_cells;
  std::vector<std::vector<ThetaMap>> slot_a_legs, slot_b_legs;
  bool resolved = true;
  for (Slot& slot : out.slots_) {
    if (slot.kind == Slot::Kind::Cell) {
      slot_cells.push_back(*slot.cell);
      slot_a_legs.push_back(slot.a_legs);
      slot_b_legs.push_back(slot.b_legs);
    } else if (slot.kind == Slot::Kind::Sub) {
      if (slot.sub->kind() != Kind::Representable) {
        resolved = false;
        break;
      }
      slot_cells.push_back(slot.sub->apex());
      slot_a_legs.push_back({slot.sub->proj_left()});
      slot_b_legs.push_back({slot.sub->proj_right()});
    } else {
      // cone enumeration: find a cell x and cone legs through which every
      // cone factors uniquely (checked on probes up to degree(t)+1)
      auto cones = [&](const Cell& r) {
        std::vector<std::pair<std::vector<ThetaMap>, std::vector<ThetaMap>>>
            result;
        std::vector<std::vector<ThetaMap>> a_opts, b_opts;
        for (auto& [ia, arrows] : slot.a_arrows)
          a_opts.push_back(theta_hom_enumerate(r, f.src().children[ia - 1]));
        for (auto& [jb, arrows] : slot.b_arrows)
          b_opts.push_back(theta_hom_enumerate(r, g.src().children[jb - 1]));
        std::vector<std::size_t> ai(a_opts.size(), 0), bi(b_opts.size(), 0);
        auto advance = [](std::vector<std::size_t>& idx,
                          const std::vector<std::vector<ThetaMap>>& opts) {
          std::size_t k = idx.size();
          while (k > 0 && idx[k - 1] + 1 == opts[k - 1].size()) --k;
          if (k == 0) return false;
          ++idx[k - 1];
          for (std::size_t r2 = k; r2 < idx.size(); ++r2) idx[r2] = 0;
          return true;
        };
        bool a_more = true;
        if (!a_opts.empty() &&
            std::any_of(a_opts.begin(), a_opts.end(),
                        [](const auto& v) { return v.empty(); }))
          return result;
        if (!b_opts.empty() &&
            std::any_of(b_opts.begin(), b_opts.end(),
                        [](const auto& v) { return v.empty(); }))
          return result;
        while (a_more) {
          std::vector<ThetaMap> amaps;
          for (std::size_t k = 0; k < a_opts.size(); ++k)
            amaps.push_back(a_opts[k][ai[k]]);
          std::vector<std::size_t> bi2(b_opts.size(), 0);
          bool b_more = true;
          while (b_more) {
            std::vector<ThetaMap> bmaps;
            for (std::size_t k = 0; k < b_opts.size(); ++k)
              bmaps.push_back(b_opts[k][bi2[k]]);
            // compatibility: composites into each c agree
            std::vector<std::optional<ThetaMap>> into_c(slot.c_objects.size());
            bool ok = true;
            for (std::size_t k = 0; k < amaps.size() && ok; ++k) {
              const auto& arrows = slot.a_arrows[k].second;
              for (std::size_t r2 = 0; r2 < arrows.size() && ok; ++r2) {
                ThetaMap comp = theta_compose(arrows[r2], amaps[k]);
                auto& cslot = into_c[slot.a_targets[k][r2]];
                if (!cslot)
                  cslot = comp;
                else if (*cslot != comp)
                  ok = false;
              }
            }
            for (std::size_t k = 0; k < bmaps.size() && ok; ++k) {
              const auto& arrows = slot.b_arrows[k].second;
              for (std::size_t r2 = 0; r2 < arrows.size() && ok; ++r2) {
                ThetaMap comp = theta_compose(arrows[r2], bmaps[k]);
                auto& cslot = into_c[slot.b_targets[k][r2]];
                if (!cslot)
                  cslot = comp;
                else if (*cslot != comp)
                  ok = false;
              }
            }
            if (ok) result.emplace_back(amaps, bmaps);
            b_more = advance(bi2, b_opts);
          }
          a_more = advance(ai, a_opts);
        }
        return result;
      };
      int cap = degree(t) - 1;
      std::optional<Cell> found;
      std::vector<ThetaMap> fa, fb;
      for (const Cell& x : enumerate_cells(cap)) {
        for (auto& [alegs, blegs] : cones(x)) {
          bool iso = true;
          for (int d = 0; d <= degree(t) + 1 && iso; ++d) {
            for (const Cell& r : enumerate_cells(d)) {
              if (degree(r) != d) continue;
              auto all = cones(r);
              std::set<std::pair<std::vector<ThetaMap>, std::vector<ThetaMap>>>
                  hit;
              for (const ThetaMap& h : theta_hom_enumerate(r, x)) {
                std::vector<ThetaMap> ca, cb;
                for (const ThetaMap& leg : alegs)
                  ca.push_back(theta_compose(leg, h));
                for (const ThetaMap& leg : blegs)
                  cb.push_back(theta_compose(leg, h));
                if (!hit.emplace(ca, cb).second) {
                  iso = false;
                  break;
                }
              }
              if (iso && hit.size() != all.size()) iso = false;
              if (iso)
                for (auto& cone : all)
                  if (!hit.count(cone)) {
                    iso = false;
                    break;
                  }
              if (!iso) break;
            }
          }
          if (iso) {
            found = x;
            fa = alegs;
            fb = blegs;
            break;
          }
        }
        if (found) break;
      }
      if (found) {
        slot.kind = Slot::Kind::Cell;
        slot.cell = *found;
        slot.a_legs = fa;
        slot.b_legs = fb;
        slot_cells.push_back(*found);
        slot_a_legs.push_back(fa);
        slot_b_legs.push_back(fb);
      } else {
        resolved = false;
        break;
      }
    }
  }

  if (resolved && static_cast<int>(slot_cells.size()) == q) {
    out.kind_ = Kind::Representable;
    out.apex_ = node(slot_cells);
    std::vector<std::vector<ThetaMap>> lcomps, rcomps;
    for (int z = 1; z <= q; ++z) {
      lcomps.push_back(slot_a_legs[z - 1]);
      rcomps.push_back(slot_b_legs[z - 1]);
    }
    out.proj_left_ = ThetaMap(*out.apex_, f.src(), *pl, std::move(lcomps));
    out.proj_right_ = ThetaMap(*out.apex_, g.src(), *pr, std::move(rcomps));
    if (theta_compose(f, *out.proj_left_) != theta_compose(g, *out.proj_right_))
      throw domain_error("coface_pullback: square does not commute");
  } else {
    out.kind_ = Kind::NonRepresentable;
  }
  return out;
}

inline std::vector<std::pair<ThetaMap, ThetaMap>> CofacePullback::span_cells(
    const Cell& s) const {
  std::vector<std::pair<ThetaMap, ThetaMap>> out;
  if (kind_ == Kind::Empty) return out;
  int q = static_cast<int>(slots_.size());
  const SimplexMap& pl = *simp_left_;
  const SimplexMap& pr = *simp_right_;

  for (const SimplexMap& phi :
       simplex_hom_enumerate(SimplexObject(s.width()), SimplexObject(q))) {
    // per occupied slot of each source child, candidate component blocks:
    // each block is (maps to the slot's a-children, maps to its b-children)
    struct BlockChoice {
      std::vector<std::vector<ThetaMap>> a, b;  // per candidate
    };
    std::vector<std::pair<int, int>> occupied;  // (child i, slot z)
    std::vector<BlockChoice> choices;
    bool possible = true;
    for (int i = 1; i <= s.width() && possible; ++i) {
      for (int z = phi(i - 1) + 1; z <= phi(i); ++z) {
        const Slot& slot = slots_[z - 1];
        BlockChoice bc;
        if (slot.kind == Slot::Kind::Cell) {
          for (const ThetaMap& h :
               theta_hom_enumerate(s.children[i - 1], *slot.cell)) {
            std::vector<ThetaMap> av, bv;
            for (const ThetaMap& leg : slot.a_legs)
              av.push_back(theta_compose(leg, h));
            for (const ThetaMap& leg : slot.b_legs)
              bv.push_back(theta_compose(leg, h));
            bc.a.push_back(av);
            bc.b.push_back(bv);
          }
        } else if (slot.kind == Slot::Kind::Sub) {
          for (auto& [u, v] : slot.sub->span_cells(s.children[i - 1])) {
            bc.a.push_back({u});
            bc.b.push_back({v});
          }
        } else {
          // Diagram: enumerate compatible cones directly
          std::vector<std::vector<ThetaMap>> a_opts, b_opts;
          for (auto& [ia, arrows] : slot.a_arrows)
            a_opts.push_back(theta_hom_enumerate(
                s.children[i - 1],
                arrows.front().src()));
          for (auto& [jb, arrows] : slot.b_arrows)
            b_opts.push_back(theta_hom_enumerate(
                s.children[i - 1],
                arrows.front().src()));
          std::vector<std::size_t> idx(a_opts.size() + b_opts.size(), 0);
          auto sizes = [&](std::size_t k) {
            return k < a_opts.size() ? a_opts[k].size()
                                     : b_opts[k - a_opts.size()].size();
          };
          bool any_empty = false;
          for (std::size_t k = 0; k < idx.size(); ++k)
            if (sizes(k) == 0) any_empty = true;
          if (!any_empty) {
            while (true) {
              std::vector<ThetaMap> av, bv;
              for (std::size_t k = 0; k < a_opts.size(); ++k)
                av.push_back(a_opts[k][idx[k]]);
              for (std::size_t k = 0; k < b_opts.size(); ++k)
                bv.push_back(b_opts[k][idx[a_opts.size() + k]]);
              std::vector<std::optional<ThetaMap>> into_c(
                  slot.c_objects.size());
              bool ok = true;
              for (std::size_t k = 0; k < av.size() && ok; ++k) {
                const auto& arrows = slot.a_arrows[k].second;
                for (std::size_t r2 = 0; r2 < arrows.size() && ok; ++r2) {
                  ThetaMap comp = theta_compose(arrows[r2], av[k]);
                  auto& cslot = into_c[slot.a_targets[k][r2]];
                  if (!cslot)
                    cslot = comp;
                  else if (*cslot != comp)
                    ok = false;
                }
              }
              for (std::size_t k = 0; k < bv.size() && ok; ++k) {
                const auto& arrows = slot.b_arrows[k].second;
                for (std::size_t r2 = 0; r2 < arrows.size() && ok; ++r2) {
                  ThetaMap comp = theta_compose(arrows[r2], bv[k]);
                  auto& cslot = into_c[slot.b_targets[k][r2]];
                  if (!cslot)
                    cslot = comp;
                  else if (*cslot != comp)
                    ok = false;
                }
              }
              if (ok) {
                bc.a.push_back(av);
                bc.b.push_back(bv);
              }
              std::size_t k = idx.size();
              while (k > 0 && idx[k - 1] + 1 == sizes(k - 1)) --k;
              if (k == 0) break;
              ++idx[k - 1];
              for (std::size_t r2 = k; r2 < idx.size(); ++r2) idx[r2] = 0;
            }
          }
        }
        if (bc.a.empty()) {
          possible = false;
          break;
        }
        occupied.emplace_back(i, z);
        choices.push_back(std::move(bc));
      }
    }
    if (!possible) continue;

    SimplexMap usimp = simplex_compose(pl, phi);
    SimplexMap vsimp = simplex_compose(pr, phi);
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<std::vector<ThetaMap>> ucomps(s.width()), vcomps(s.width());
      for (std::size_t k = 0; k < occupied.size(); ++k) {
        int i = occupied[k].first;
        for (const ThetaMap& hmap : choices[k].a[idx[k]])
          ucomps[i - 1].push_back(hmap);
        for (const ThetaMap& hmap : choices[k].b[idx[k]])
          vcomps[i - 1].push_back(hmap);
      }
      out.emplace_back(ThetaMap(s, src_a_, usimp, std::move(ucomps)),
                       ThetaMap(s, src_b_, vsimp, std::move(vcomps)));
      std::size_t k = choices.size();
      while (k > 0 && idx[k - 1] + 1 == choices[k - 1].a.size()) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t r2 = k; r2 < choices.size(); ++r2) idx[r2] = 0;
    }
  }
  return out;
}

}  // namespace theta
