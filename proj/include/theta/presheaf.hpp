#pragma once

#include <functional>
#include <map>
#include <memory>
#include <numeric>

#include "theta/skeletal.hpp"

namespace theta {

/// The cell site: objects, degree, homs and composition for presheaves on
/// the cell category.
struct ThetaSite {
  using Obj = Cell;
  using Map = ThetaMap;

  static int deg(const Obj& t) { return degree(t); }
  static std::vector<Obj> objects(int bound) { return enumerate_cells(bound); }
  static const std::vector<Map>& hom(const Obj& s, const Obj& t) {
    return theta_hom_enumerate(s, t);
  }
  static Map compose(const Map& g, const Map& f) { return theta_compose(g, f); }
  static Map identity(const Obj& t) { return ThetaMap::identity(t); }
  static const Obj& src(const Map& f) { return f.src(); }
  static const Obj& tgt(const Map& f) { return f.tgt(); }

  /// Non-identity negative maps out of s, the degeneracy directions.
  static const std::vector<Map>& degeneracies(const Obj& s) {
    static std::map<std::string, std::vector<Map>> memo;
    std::string key = serial(s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Map> out;
    for (const Obj& t : enumerate_cells(deg(s))) {
      if (deg(t) >= deg(s)) continue;
      for (const Map& f : hom(s, t))
        if (classify(f) == MapClass::Negative) out.push_back(f);
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

/// The simplex site; negative maps are the non-identity epis.
struct DeltaSite {
  using Obj = SimplexObject;
  using Map = SimplexMap;

  static int deg(const Obj& o) { return o.n; }
  static std::vector<Obj> objects(int bound) {
    std::vector<Obj> out;
    for (int n = 0; n <= bound; ++n) out.push_back(SimplexObject(n));
    return out;
  }
  static const std::vector<Map>& hom(const Obj& s, const Obj& t) {
    static std::map<std::pair<int, int>, std::vector<Map>> memo;
    auto key = std::make_pair(s.n, t.n);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo.emplace(key, simplex_hom_enumerate(s, t)).first->second;
  }
  static Map compose(const Map& g, const Map& f) { return simplex_compose(g, f); }
  static Map identity(const Obj& o) { return Map::identity(o); }
  static Obj src(const Map& f) { return f.src(); }
  static Obj tgt(const Map& f) { return f.tgt(); }

  static const std::vector<Map>& degeneracies(const Obj& s) {
    static std::map<int, std::vector<Map>> memo;
    auto it = memo.find(s.n);
    if (it != memo.end()) return it->second;
    std::vector<Map> out;
    for (int n = 0; n < s.n; ++n)
      for (const Map& f : hom(s, SimplexObject(n)))
        if (f.is_surjective()) out.push_back(f);
    return memo.emplace(s.n, std::move(out)).first->second;
  }
};

/// A pointed presheaf truncated at a degree bound: one finite pointed set
/// per object of degree <= bound (element 0 is the basepoint), with a
/// contravariant action computed on demand and memoized.
///
/// skeletal_complete records whether the presheaf is generated by its cells
/// within the bound; operations that Kan-extend refuse inputs without it.
template <class S>
class Presheaf {
 public:
  using Obj = typename S::Obj;
  using Map = typename S::Map;
  using Action = std::function<int(const Map&, int)>;

  Presheaf() = default;
  Presheaf(int bound, std::map<Obj, int> card, Action raw_action,
           bool skeletal_complete)
      : bound_(bound),
        card_(std::make_shared<std::map<Obj, int>>(std::move(card))),
        raw_(std::move(raw_action)),
        memo_(std::make_shared<std::map<std::pair<Map, int>, int>>()),
        complete_(skeletal_complete) {}

  int bound() const { return bound_; }
  bool skeletal_complete() const { return complete_; }
  const std::map<Obj, int>& cards() const { return *card_; }
  int card(const Obj& o) const {
    auto it = card_->find(o);
    if (it == card_->end())
      throw domain_error("Presheaf: object outside truncation");
    return it->second;
  }

  /// act(f : a -> b) : X(b) -> X(a).
  int act(const Map& f, int x) const {
    if (x == 0) return 0;  // basepoint is preserved by every action
    auto key = std::make_pair(f, x);
    auto it = memo_->find(key);
    if (it != memo_->end()) return it->second;
    int y = raw_(f, x);
    (*memo_)[key] = y;
    return y;
  }

  bool same_object(const Presheaf& o) const {
    return card_ == o.card_ && memo_ == o.memo_;
  }

 private:
  int bound_ = -1;
  std::shared_ptr<std::map<Obj, int>> card_;
  Action raw_;
  std::shared_ptr<std::map<std::pair<Map, int>, int>> memo_;
  bool complete_ = false;
};

/// A pointed map of presheaves: one function per object, commuting with all
/// actions (checked by validate / tests, not assumed).
template <class S>
struct PresheafMap {
  Presheaf<S> src, tgt;
  std::map<typename S::Obj, std::vector<int>> comp;

  int operator()(const typename S::Obj& o, int x) const {
    return comp.at(o).at(x);
  }

  bool operator==(const PresheafMap& o) const { return comp == o.comp; }
  bool operator<(const PresheafMap& o) const { return comp < o.comp; }
};

template <class S>
Presheaf<S> basepoint_presheaf(int bound) {
  std::map<typename S::Obj, int> card;
  for (const auto& o : S::objects(bound)) card[o] = 1;
  return Presheaf<S>(bound, std::move(card),
                     [](const typename S::Map&, int) { return 0; }, true);
}

/// The representable at t, truncated at the bound, with a disjoint
/// basepoint; elements 1..n index hom(s, t) in enumeration order.
template <class S>
Presheaf<S> representable(const typename S::Obj& t, int bound) {
  std::map<typename S::Obj, int> card;
  for (const auto& o : S::objects(bound))
    card[o] = static_cast<int>(S::hom(o, t).size()) + 1;
  typename S::Obj tcopy = t;
  auto action = [tcopy](const typename S::Map& f, int x) {
    const auto& at_tgt = S::hom(S::tgt(f), tcopy);
    const typename S::Map& h = at_tgt.at(x - 1);
    typename S::Map composed = S::compose(h, f);
    const auto& at_src = S::hom(S::src(f), tcopy);
    for (std::size_t i = 0; i < at_src.size(); ++i)
      if (at_src[i] == composed) return static_cast<int>(i) + 1;
    throw domain_error("representable: composite not found");
  };
  return Presheaf<S>(bound, std::move(card), action, true);
}

/// Element of a representable presheaf holding a given map.
template <class S>
int representable_index(const typename S::Obj& probe,
                        const typename S::Obj& t, const typename S::Map& h) {
  const auto& at = S::hom(probe, t);
  for (std::size_t i = 0; i < at.size(); ++i)
    if (at[i] == h) return static_cast<int>(i) + 1;
  throw domain_error("representable_index: map not found");
}

/// A subobject selected by a per-object membership test; basepoint always
/// belongs. Elements are renumbered in parent order.
template <class S>
Presheaf<S> sub_presheaf(const Presheaf<S>& x,
                         const std::function<bool(const typename S::Obj&, int)>&
                             member,
                         bool complete) {
  std::map<typename S::Obj, int> card;
  auto to_parent =
      std::make_shared<std::map<typename S::Obj, std::vector<int>>>();
  auto from_parent =
      std::make_shared<std::map<typename S::Obj, std::map<int, int>>>();
  for (const auto& [o, n] : x.cards()) {
    std::vector<int> tp{0};
    std::map<int, int> fp{{0, 0}};
    for (int e = 1; e < n; ++e) {
      if (member(o, e)) {
        fp[e] = static_cast<int>(tp.size());
        tp.push_back(e);
      }
    }
    card[o] = static_cast<int>(tp.size());
    (*to_parent)[o] = std::move(tp);
    (*from_parent)[o] = std::move(fp);
  }
  Presheaf<S> parent = x;
  auto action = [parent, to_parent, from_parent](const typename S::Map& f,
                                                 int e) {
    int p = to_parent->at(S::tgt(f)).at(e);
    int q = parent.act(f, p);
    auto& fp = from_parent->at(S::src(f));
    auto it = fp.find(q);
    if (it == fp.end())
      throw domain_error("sub_presheaf: not closed under the action");
    return it->second;
  };
  return Presheaf<S>(x.bound(), std::move(card), action, complete);
}

/// The inclusion of a sub_presheaf built with the same membership test.
template <class S>
PresheafMap<S> sub_inclusion(const Presheaf<S>& sub, const Presheaf<S>& x,
                             const std::function<bool(const typename S::Obj&,
                                                      int)>& member) {
  PresheafMap<S> out{sub, x, {}};
  for (const auto& [o, n] : x.cards()) {
    std::vector<int> v{0};
    for (int e = 1; e < n; ++e)
      if (member(o, e)) v.push_back(e);
    out.comp[o] = std::move(v);
  }
  return out;
}

/// Quotient by per-object equivalence classes (given as a union-find
/// parent table including the basepoint at 0); class 0 is the basepoint
/// class. Returns the quotient and the projection map.
template <class S>
std::pair<Presheaf<S>, PresheafMap<S>> quotient_by_classes(
    const Presheaf<S>& x,
    const std::map<typename S::Obj, std::vector<int>>& cls) {
  std::map<typename S::Obj, int> card;
  auto rep = std::make_shared<std::map<typename S::Obj, std::vector<int>>>();
  auto to_class = std::make_shared<std::map<typename S::Obj, std::vector<int>>>();
  for (const auto& [o, n] : x.cards()) {
    const std::vector<int>& c = cls.at(o);
    if (static_cast<int>(c.size()) != n)
      throw domain_error("quotient_by_classes: wrong class table");
    if (c[0] != 0)
      throw domain_error("quotient_by_classes: basepoint must be class 0");
    int mx = 0;
    for (int e = 0; e < n; ++e) mx = std::max(mx, c[e]);
    std::vector<int> r(mx + 1, -1);
    for (int e = 0; e < n; ++e)
      if (r[c[e]] < 0) r[c[e]] = e;
    for (int k = 0; k <= mx; ++k)
      if (r[k] < 0) throw domain_error("quotient_by_classes: gap in classes");
    card[o] = mx + 1;
    (*rep)[o] = std::move(r);
    (*to_class)[o] = c;
  }
  Presheaf<S> parent = x;
  auto action = [parent, rep, to_class](const typename S::Map& f, int e) {
    int p = rep->at(S::tgt(f)).at(e);
    int q = parent.act(f, p);
    return to_class->at(S::src(f)).at(q);
  };
  Presheaf<S> q(x.bound(), std::move(card), action, x.skeletal_complete());
  PresheafMap<S> proj{x, q, {}};
  for (const auto& [o, c] : cls) proj.comp[o] = c;
  return {std::move(q), std::move(proj)};
}

/// Collapses a subobject (membership test) to the basepoint.
template <class S>
std::pair<Presheaf<S>, PresheafMap<S>> quotient_by_subobject(
    const Presheaf<S>& x,
    const std::function<bool(const typename S::Obj&, int)>& member) {
  std::map<typename S::Obj, std::vector<int>> cls;
  for (const auto& [o, n] : x.cards()) {
    std::vector<int> c(n);
    int next = 1;
    for (int e = 1; e < n; ++e) c[e] = member(o, e) ? 0 : next++;
    cls[o] = std::move(c);
  }
  return quotient_by_classes(x, cls);
}

/// Pointed product, elementwise pairs with basepoint (0,0) collapsed by the
/// smash below when needed.
template <class S>
Presheaf<S> product(const Presheaf<S>& x, const Presheaf<S>& y) {
  if (x.bound() != y.bound()) throw domain_error("product: bounds differ");
  std::map<typename S::Obj, int> card;
  for (const auto& [o, n] : x.cards()) card[o] = n * y.card(o);
  Presheaf<S> xs = x, ys = y;
  auto action = [xs, ys](const typename S::Map& f, int e) {
    int ny = ys.card(S::tgt(f));
    int a = e / ny, b = e % ny;
    return xs.act(f, a) * ys.card(S::src(f)) + ys.act(f, b);
  };
  // a product of generated presheaves need not be generated in the bound
  return Presheaf<S>(x.bound(), std::move(card), action, false);
}

/// Pair index helpers for product elements.
template <class S>
int pair_index(const Presheaf<S>& y, const typename S::Obj& o, int a, int b) {
  return a * y.card(o) + b;
}

/// The smash x ^ y: the product with both axes collapsed to the basepoint.
template <class S>
Presheaf<S> smash(const Presheaf<S>& x, const Presheaf<S>& y) {
  Presheaf<S> p = product(x, y);
  Presheaf<S> ys = y;
  auto member = [ys](const typename S::Obj& o, int e) {
    int ny = ys.card(o);
    return e / ny == 0 || e % ny == 0;
  };
  return quotient_by_subobject<S>(p, member).first;
}

/// Projection product -> smash for mapping elements through.
template <class S>
std::pair<Presheaf<S>, PresheafMap<S>> smash_with_projection(
    const Presheaf<S>& x, const Presheaf<S>& y) {
  Presheaf<S> p = product(x, y);
  Presheaf<S> ys = y;
  auto member = [ys](const typename S::Obj& o, int e) {
    int ny = ys.card(o);
    return e / ny == 0 || e % ny == 0;
  };
  auto [q, proj] = quotient_by_subobject<S>(p, member);
  return {std::move(q), std::move(proj)};
}

/// Cellwise injectivity.
template <class S>
bool is_mono(const PresheafMap<S>& f) {
  for (const auto& [o, v] : f.comp) {
    std::set<int> seen;
    for (int e : v)
      if (!seen.insert(e).second) return false;
  }
  return true;
}

/// Identity and composition laws, checked over every pair of composable
/// maps between objects within the cap (exhaustive, so meant for tests and
/// small bounds).
template <class S>
void validate_full(const Presheaf<S>& x, int cap) {
  auto objs = S::objects(std::min(cap, x.bound()));
  for (const auto& o : objs) {
    for (int e = 0; e < x.card(o); ++e)
      if (x.act(S::identity(o), e) != e)
        throw domain_error("validate: identity law fails");
  }
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& c : objs)
        for (const auto& f : S::hom(a, b))
          for (const auto& g : S::hom(b, c)) {
            auto gf = S::compose(g, f);
            for (int e = 0; e < x.card(c); ++e)
              if (x.act(gf, e) != x.act(f, x.act(g, e)))
                throw domain_error("validate: composition law fails");
          }
}

/// Naturality of a presheaf map over all morphisms within the cap.
template <class S>
void validate_map(const PresheafMap<S>& m, int cap) {
  auto objs = S::objects(std::min(cap, m.src.bound()));
  for (const auto& a : objs) {
    if (m.comp.at(a).at(0) != 0)
      throw domain_error("validate_map: basepoint not preserved");
    for (const auto& b : objs)
      for (const auto& f : S::hom(a, b))
        for (int e = 0; e < m.src.card(b); ++e)
          if (m.comp.at(a).at(m.src.act(f, e)) !=
              m.tgt.act(f, m.comp.at(b).at(e)))
            throw domain_error("validate_map: naturality fails");
  }
}

/// Elements not hit by any degeneracy action.
template <class S>
std::vector<int> nondegenerate_elements(const Presheaf<S>& x,
                                        const typename S::Obj& o) {
  std::set<int> degen;
  for (const auto& sigma : S::degeneracies(o)) {
    if (S::deg(S::tgt(sigma)) > x.bound()) continue;
    for (int e = 0; e < x.card(S::tgt(sigma)); ++e)
      degen.insert(x.act(sigma, e));
  }
  std::vector<int> out;
  for (int e = 1; e < x.card(o); ++e)
    if (!degen.count(e)) out.push_back(e);
  return out;
}

/// All pointed natural maps x -> y. Objects are processed in degree order;
/// values forced by degeneracy-style actions from already-assigned objects
/// are propagated first and the rest backtrack with per-element pruning
/// against the maps into earlier objects.
template <class S>
std::vector<PresheafMap<S>> presheaf_map_enumerate(const Presheaf<S>& x,
                                                   const Presheaf<S>& y) {
  if (x.bound() != y.bound())
    throw domain_error("presheaf_map_enumerate: bounds differ");
  auto objs = S::objects(x.bound());
  std::vector<PresheafMap<S>> out;
  std::map<typename S::Obj, std::vector<int>> assign;

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == objs.size()) {
      out.push_back(PresheafMap<S>{x, y, assign});
      return;
    }
    const auto& o = objs[k];
    int n = x.card(o), ny = y.card(o);
    std::vector<int> v(n, -1);
    v[0] = 0;
    // forced values: for g : o -> o'' with o'' already assigned, the image
    // of act_x(g) is pinned by naturality
    for (std::size_t k2 = 0; k2 < k; ++k2) {
      const auto& o2 = objs[k2];
      for (const auto& g : S::hom(o, o2)) {
        for (int e2 = 0; e2 < x.card(o2); ++e2) {
          int ex = x.act(g, e2);
          int ey = y.act(g, assign.at(o2).at(e2));
          if (v[ex] >= 0 && v[ex] != ey) return;  // inconsistent forcing
          v[ex] = ey;
        }
      }
    }
    // candidate filter for free elements: maps f : o' -> o into earlier
    // objects constrain each value pointwise
    auto admissible = [&](int e, int val) {
      for (std::size_t k2 = 0; k2 < k; ++k2) {
        const auto& o2 = objs[k2];
        for (const auto& f : S::hom(o2, o))
          if (assign.at(o2).at(x.act(f, e)) != y.act(f, val)) return false;
      }
      return true;
    };
    // endomorphism constraints are checked once the object is complete
    auto endos_ok = [&]() {
      for (const auto& f : S::hom(o, o))
        for (int e = 0; e < n; ++e)
          if (v[x.act(f, e)] != y.act(f, v[e])) return false;
      return true;
    };
    auto walk = [&](auto&& go, int slot) -> void {
      if (slot == n) {
        if (!endos_ok()) return;
        assign[o] = v;
        self(self, k + 1);
        assign.erase(o);
        return;
      }
      if (v[slot] >= 0) {
        if (admissible(slot, v[slot])) go(go, slot + 1);
        return;
      }
      for (int img = 0; img < ny; ++img) {
        if (!admissible(slot, img)) continue;
        v[slot] = img;
        go(go, slot + 1);
        v[slot] = -1;
      }
    };
    walk(walk, 1);
  };
  rec(rec, 0);
  return out;
}

}  // namespace theta
