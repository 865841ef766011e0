#pragma once

#include <cstdint>
#include <vector>

#include "theta/simplex.hpp"

namespace theta {

/// An object <n> = {1,...,n} of Segal's category; <0> is the empty set.
struct GammaObject {
  int n = 0;

  GammaObject() = default;
  explicit GammaObject(int n_) : n(n_) {
    if (n < 0 || n > 31) throw domain_error("GammaObject: n out of range");
  }

  auto operator<=>(const GammaObject&) const = default;
};

/// A subset of <m> as a bitmask; bit k-1 encodes membership of k.
using Subset = std::uint32_t;

inline std::vector<int> subset_elements(Subset s) {
  std::vector<int> out;
  for (int k = 1; s != 0; ++k, s >>= 1)
    if (s & 1u) out.push_back(k);
  return out;
}

/// A morphism <n> -> <m>: each i in <n> is assigned a subset of <m>, and the
/// assigned subsets are pairwise disjoint.
class GammaMorphism {
 public:
  GammaMorphism(GammaObject src, GammaObject tgt, std::vector<Subset> assignment)
      : src_(src), tgt_(tgt), assignment_(std::move(assignment)) {
    if (static_cast<int>(assignment_.size()) != src_.n)
      throw domain_error("GammaMorphism: wrong assignment length");
    Subset seen = 0;
    Subset full = tgt_.n == 0 ? 0u : ((1u << tgt_.n) - 1u);
    for (Subset s : assignment_) {
      if ((s & ~full) != 0) throw domain_error("GammaMorphism: subset out of range");
      if ((s & seen) != 0) throw domain_error("GammaMorphism: subsets not disjoint");
      seen |= s;
    }
  }

  static GammaMorphism identity(GammaObject o) {
    std::vector<Subset> a(o.n);
    for (int i = 1; i <= o.n; ++i) a[i - 1] = 1u << (i - 1);
    return GammaMorphism(o, o, std::move(a));
  }

  GammaObject src() const { return src_; }
  GammaObject tgt() const { return tgt_; }
  const std::vector<Subset>& assignment() const { return assignment_; }
  Subset operator()(int i) const { return assignment_.at(i - 1); }

  auto operator<=>(const GammaMorphism&) const = default;

 private:
  GammaObject src_, tgt_;
  std::vector<Subset> assignment_;
};

/// (sigma . phi)(i) = union of sigma(j) over j in phi(i).
inline GammaMorphism gamma_compose(const GammaMorphism& sigma,
                                   const GammaMorphism& phi) {
  if (phi.tgt() != sigma.src())
    throw domain_error("gamma_compose: source/target mismatch");
  std::vector<Subset> a(phi.src().n, 0u);
  for (int i = 1; i <= phi.src().n; ++i) {
    Subset u = 0;
    Subset js = phi(i);
    for (int j = 1; js != 0; ++j, js >>= 1)
      if (js & 1u) u |= sigma(j);
    a[i - 1] = u;
  }
  return GammaMorphism(phi.src(), sigma.tgt(), std::move(a));
}

/// The functor F : simplex -> Gamma on a map phi : [m] -> [n];
/// F(phi)(i) = { j | phi(i-1) < j <= phi(i) }.
inline GammaMorphism gamma_from_simplex(const SimplexMap& phi) {
  int m = phi.src().n, n = phi.tgt().n;
  std::vector<Subset> a(m, 0u);
  for (int i = 1; i <= m; ++i) {
    Subset s = 0;
    for (int j = phi(i - 1) + 1; j <= phi(i); ++j) s |= 1u << (j - 1);
    a[i - 1] = s;
  }
  return GammaMorphism(GammaObject(m), GammaObject(n), std::move(a));
}

/// The fiber product of a Gamma cospan. Elements are the minimal pairs (I,J)
/// with equal unions; they are listed in lexicographic order on (I,J) so the
/// apex indexing is reproducible.
struct GammaPullback {
  GammaObject apex;
  std::vector<std::pair<Subset, Subset>> elements;  // (I, J) per apex element
  GammaMorphism proj_left;   // apex -> src(f)
  GammaMorphism proj_right;  // apex -> src(g)
};

/// Computes the pullback of f : <n> -> <l> and g : <m> -> <l>.
///
/// The minimal pairs are exactly the connected components, not glued to the
/// basepoint, of the bipartite graph on <n> + <m> with an edge i--j for each
/// y in <l> with y in f(i) and y in g(j); components touching an unmatched
/// y collapse and are dropped. This mirrors the pushout of pointed finite
/// sets under the contravariant equivalence.
inline GammaPullback gamma_pullback(const GammaMorphism& f,
                                    const GammaMorphism& g) {
  if (f.tgt() != g.tgt())
    throw domain_error("gamma_pullback: targets differ");
  int n = f.src().n, m = g.src().n, l = f.tgt().n;

  // owner of each y in <l> on each side (0 = none)
  std::vector<int> fo(l + 1, 0), go(l + 1, 0);
  for (int i = 1; i <= n; ++i)
    for (int y : subset_elements(f(i))) fo[y] = i;
  for (int j = 1; j <= m; ++j)
    for (int y : subset_elements(g(j))) go[y] = j;

  // union-find over n left vertices, m right vertices, one basepoint
  int total = n + m + 1;
  std::vector<int> parent(total);
  for (int i = 0; i < total; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  const int base = n + m;
  for (int y = 1; y <= l; ++y) {
    int a = fo[y] ? fo[y] - 1 : base;
    int b = go[y] ? n + go[y] - 1 : base;
    unite(a, b);
  }

  std::vector<std::pair<Subset, Subset>> elems;
  std::vector<int> roots;
  for (int v = 0; v < total - 1; ++v) {
    int r = find(v);
    if (r == find(base)) continue;
    bool fresh = true;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (roots[k] == r) {
        fresh = false;
        if (v < n)
          elems[k].first |= 1u << v;
        else
          elems[k].second |= 1u << (v - n);
        break;
      }
    }
    if (fresh) {
      roots.push_back(r);
      Subset I = 0, J = 0;
      if (v < n)
        I = 1u << v;
      else
        J = 1u << (v - n);
      elems.emplace_back(I, J);
    }
  }
  std::sort(elems.begin(), elems.end());

  GammaObject apex(static_cast<int>(elems.size()));
  std::vector<Subset> pl(elems.size()), pr(elems.size());
  for (std::size_t k = 0; k < elems.size(); ++k) {
    pl[k] = elems[k].first;
    pr[k] = elems[k].second;
  }
  return GammaPullback{apex, std::move(elems),
                       GammaMorphism(apex, f.src(), std::move(pl)),
                       GammaMorphism(apex, g.src(), std::move(pr))};
}

/// All morphisms <n> -> <m>: every function <m> -> <n> + {unassigned}
/// determines disjoint fibers, giving (n+1)^m morphisms.
inline std::vector<GammaMorphism> gamma_hom_enumerate(GammaObject n,
                                                      GammaObject m) {
  std::vector<GammaMorphism> out;
  std::vector<int> owner(m.n, 0);  // 0 = unassigned, else index in <n>
  while (true) {
    std::vector<Subset> a(n.n, 0u);
    for (int y = 1; y <= m.n; ++y)
      if (owner[y - 1] > 0) a[owner[y - 1] - 1] |= 1u << (y - 1);
    out.push_back(GammaMorphism(n, m, std::move(a)));
    int i = m.n - 1;
    while (i >= 0 && owner[i] == n.n) --i;
    if (i < 0) break;
    ++owner[i];
    for (int k = i + 1; k < m.n; ++k) owner[k] = 0;
  }
  return out;
}

}  // namespace theta
