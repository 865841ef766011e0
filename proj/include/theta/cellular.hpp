#pragma once

#include "theta/presheaf.hpp"
#include "theta/shift.hpp"

namespace theta {

using CellularSet = Presheaf<ThetaSite>;
using CellularMap = PresheafMap<ThetaSite>;

/// Pointed representable on t (disjoint basepoint).
inline CellularSet cellular_representable(const Cell& t, int bound) {
  return representable<ThetaSite>(t, bound);
}

namespace detail {

/// Indices (1-based hom positions) of maps s -> t that factor through a
/// coface of t; the union-of-images form of the boundary.
inline const std::set<int>& boundary_members(const Cell& s, const Cell& t) {
  static std::map<std::pair<std::string, std::string>, std::set<int>> memo;
  auto key = std::make_pair(serial(s), serial(t));
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::set<int> out;
  for (const ThetaMap& gamma : boundary_cofaces(t))
    for (const ThetaMap& u : theta_hom_enumerate(s, gamma.src()))
      out.insert(representable_index<ThetaSite>(s, t, theta_compose(gamma, u)));
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace detail

/// The boundary subobject of the representable: the union of the images of
/// all cofaces. For the leaf cell this is basepoint-only.
inline CellularSet cellular_boundary(const Cell& t, int bound) {
  CellularSet rep = cellular_representable(t, bound);
  Cell tc = t;
  auto member = [tc](const Cell& s, int e) {
    return detail::boundary_members(s, tc).count(e) > 0;
  };
  return sub_presheaf<ThetaSite>(rep, member, true);
}

/// The boundary inclusion into the representable.
inline CellularMap cellular_boundary_inclusion(const Cell& t, int bound) {
  CellularSet rep = cellular_representable(t, bound);
  Cell tc = t;
  auto member = [tc](const Cell& s, int e) {
    return detail::boundary_members(s, tc).count(e) > 0;
  };
  CellularSet sub = sub_presheaf<ThetaSite>(rep, member, true);
  CellularMap inc = sub_inclusion<ThetaSite>(sub, rep, member);
  return CellularMap{sub, rep, inc.comp};
}

/// The pointed circle: the 1-globe representable with its two vertices
/// collapsed.
inline CellularSet s_circle(int bound) {
  CellularSet rep = cellular_representable(globe(1), bound);
  auto member = [](const Cell& s, int e) {
    return detail::boundary_members(s, globe(1)).count(e) > 0;
  };
  return quotient_by_subobject<ThetaSite>(rep, member).first;
}

/// The quotient of the shifted representable by its two end vertices: the
/// suspension of the representable at t, with projection from the shifted
/// representable.
inline std::pair<CellularSet, CellularMap> suspended_representable(
    const Cell& t, int bound) {
  Cell jt = shift_cell(t);
  CellularSet rep = cellular_representable(jt, bound);
  Cell jtc = jt;
  auto member = [jtc](const Cell& s, int e) {
    const ThetaMap& h = theta_hom_enumerate(s, jtc)[e - 1];
    return h == constant_to(s, jtc, false) || h == constant_to(s, jtc, true);
  };
  return quotient_by_subobject<ThetaSite>(rep, member);
}

/// The suspension of a pointed cellular set, as the pointwise coend of
/// suspended representables over the category of elements. The input must
/// be generated by its cells within the bound; the output is exact one
/// degree higher.
class SigmaJ {
 public:
  explicit SigmaJ(const CellularSet& x, int n_out = -1) : x_(x) {
    if (!x.skeletal_complete())
      throw domain_error("sigma_J: input not skeletal_complete");
    n_out_ = n_out < 0 ? x.bound() + 1 : n_out;
    if (n_out_ > x.bound() + 1)
      throw domain_error("sigma_J: output bound exceeds input bound + 1");
    cells_ = enumerate_cells(x.bound());
    for (const Cell& t : cells_) {
      auto [q, proj] = suspended_representable(t, n_out_);
      q_.push_back(q);
      qproj_.push_back(proj);
    }
    build();
  }

  const CellularSet& out() const { return out_; }

  /// The class of the generator triple (t, x, q) at probe s.
  int class_of(const Cell& s, const Cell& t, int x, int q) const {
    if (q == 0 || x == 0) return 0;
    int ti = cell_index(t);
    return classes_.at(s).at(offset_.at(s)[ti] +
                             static_cast<std::size_t>(x - 1) * qcard(ti, s) + q);
  }

  /// A representative triple of a class: (cell index, x, q).
  std::tuple<int, int, int> representative(const Cell& s, int cls) const {
    return reps_.at(s).at(cls);
  }

  const std::vector<Cell>& cells() const { return cells_; }
  const CellularSet& q_presheaf(int ti) const { return q_[ti]; }

  int cell_index(const Cell& t) const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i] == t) return static_cast<int>(i);
    throw domain_error("sigma_J: cell outside bound");
  }

 private:
  int qcard(int ti, const Cell& s) const { return q_[ti].card(s); }

  void build() {
    auto probes = enumerate_cells(n_out_);
    std::map<Cell, int> card;
    for (const Cell& s : probes) {
      // flat index space: basepoint 0, then per (t, x != 0, q != 0) slots
      std::vector<std::size_t> offset(cells_.size(), 0);
      std::size_t total = 1;
      for (std::size_t ti = 0; ti < cells_.size(); ++ti) {
        offset[ti] = total - 1;
        int nx = x_.card(cells_[ti]) - 1;
        total += static_cast<std::size_t>(nx) * qcard(static_cast<int>(ti), s);
      }
      auto flat = [&](int ti, int x, int q) -> std::size_t {
        return offset[ti] +
               static_cast<std::size_t>(x - 1) * qcard(ti, s) + q;
      };
      // union-find; 0 is the basepoint class seed
      std::vector<int> parent(total);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
      };
      auto unite = [&](std::size_t a, std::size_t b) {
        parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
      };
      // coend relations along every alpha : t -> t2 within the bound
      for (std::size_t ti = 0; ti < cells_.size(); ++ti) {
        for (std::size_t t2 = 0; t2 < cells_.size(); ++t2) {
          for (const ThetaMap& alpha :
               theta_hom_enumerate(cells_[ti], cells_[t2])) {
            ThetaMap jalpha = shift_map(alpha);
            for (int q = 1; q < qcard(static_cast<int>(ti), s); ++q) {
              // push q along J(alpha): representative map, compose, project
              int p = parent_element(static_cast<int>(ti), s, q);
              const ThetaMap& w =
                  theta_hom_enumerate(s, shift_cell(cells_[ti]))[p - 1];
              ThetaMap moved = theta_compose(jalpha, w);
              int idx = representable_index<ThetaSite>(
                  s, shift_cell(cells_[t2]), moved);
              int q2 = qproj_[t2].comp.at(s).at(idx);
              for (int x2 = 1; x2 < x_.card(cells_[t2]); ++x2) {
                int x1 = x_.act(alpha, x2);
                bool lhs_base = (x1 == 0);
                if (q2 == 0) {
                  if (!lhs_base) unite(flat(static_cast<int>(ti), x1, q), 0);
                } else if (lhs_base) {
                  unite(flat(static_cast<int>(t2), x2, q2), 0);
                } else {
                  unite(flat(static_cast<int>(ti), x1, q),
                        flat(static_cast<int>(t2), x2, q2));
                }
              }
            }
          }
        }
      }
      // canonical class numbering, basepoint first
      std::vector<int> cls(total, -1);
      std::vector<std::tuple<int, int, int>> rep;
      cls[find(0)] = 0;
      rep.push_back({-1, 0, 0});
      std::vector<int> table(total);
      table[0] = 0;
      for (std::size_t ti = 0; ti < cells_.size(); ++ti)
        for (int x = 1; x < x_.card(cells_[ti]); ++x)
          for (int q = 1; q < qcard(static_cast<int>(ti), s); ++q) {
            std::size_t fl = flat(static_cast<int>(ti), x, q);
            int root = find(static_cast<int>(fl));
            if (cls[root] < 0) {
              cls[root] = static_cast<int>(rep.size());
              rep.push_back({static_cast<int>(ti), x, q});
            }
            table[fl] = cls[root];
          }
      classes_[s] = std::move(table);
      offset_[s] = offset;
      reps_[s] = std::move(rep);
      card[s] = static_cast<int>(reps_[s].size());
    }

    // the action moves the q coordinate of a representative
    auto cellsp = std::make_shared<std::vector<Cell>>(cells_);
    auto qp = std::make_shared<std::vector<CellularSet>>(q_);
    auto repsp =
        std::make_shared<std::map<Cell, std::vector<std::tuple<int, int, int>>>>(
            reps_);
    auto classesp = std::make_shared<std::map<Cell, std::vector<int>>>(classes_);
    auto offsetp =
        std::make_shared<std::map<Cell, std::vector<std::size_t>>>(offset_);
    auto action = [cellsp, qp, repsp, classesp, offsetp](const ThetaMap& f,
                                                         int e) {
      auto [ti, x, q] = repsp->at(f.tgt()).at(e);
      const CellularSet& qt = (*qp)[ti];
      int q2 = qt.act(f, q);
      if (q2 == 0) return 0;
      const Cell& s2 = f.src();
      std::size_t fl = offsetp->at(s2)[ti] +
                       static_cast<std::size_t>(x - 1) * qt.card(s2) + q2;
      return classesp->at(s2).at(fl);
    };
    out_ = CellularSet(n_out_, std::move(card), action, true);
  }

  /// A parent (representable) element for class q of the t-th suspended
  /// representable at probe s.
  int parent_element(int ti, const Cell& s, int q) const {
    const std::vector<int>& proj = qproj_[ti].comp.at(s);
    for (std::size_t e = 0; e < proj.size(); ++e)
      if (proj[e] == q) return static_cast<int>(e);
    throw domain_error("sigma_J: class without representative");
  }

  CellularSet x_;
  int n_out_;
  std::vector<Cell> cells_;
  std::vector<CellularSet> q_;
  std::vector<CellularMap> qproj_;
  std::map<Cell, std::vector<int>> classes_;
  std::map<Cell, std::vector<std::size_t>> offset_;
  std::map<Cell, std::vector<std::tuple<int, int, int>>> reps_;
  CellularSet out_;
};

inline CellularSet sigma_J(const CellularSet& x, int n_out = -1) {
  return SigmaJ(x, n_out).out();
}

/// The induced map on suspensions.
inline CellularMap sigma_J_map(const SigmaJ& sx, const SigmaJ& sy,
                               const CellularMap& phi) {
  CellularMap out{sx.out(), sy.out(), {}};
  for (const auto& [s, n] : sx.out().cards()) {
    std::vector<int> v(n, 0);
    for (int e = 1; e < n; ++e) {
      auto [ti, x, q] = sx.representative(s, e);
      const Cell& t = sx.cells()[ti];
      int x2 = phi.comp.at(t).at(x);
      v[e] = sy.class_of(s, t, x2, q);
    }
    out.comp[s] = std::move(v);
  }
  return out;
}

/// The loop presheaf: elements of y one shift up whose two end vertices
/// are the basepoint; the bound drops by one.
inline CellularSet omega(const CellularSet& y) {
  if (y.bound() < 1) throw domain_error("omega: bound must be >= 1");
  int bound = y.bound() - 1;
  std::map<Cell, int> card;
  auto to_parent = std::make_shared<std::map<Cell, std::vector<int>>>();
  auto from_parent = std::make_shared<std::map<Cell, std::map<int, int>>>();
  for (const Cell& t : enumerate_cells(bound)) {
    Cell jt = shift_cell(t);
    std::vector<int> tp{0};
    std::map<int, int> fp{{0, 0}};
    for (int e = 1; e < y.card(jt); ++e) {
      if (y.act(vertex(jt, 0), e) == 0 && y.act(vertex(jt, 1), e) == 0) {
        fp[e] = static_cast<int>(tp.size());
        tp.push_back(e);
      }
    }
    card[t] = static_cast<int>(tp.size());
    (*to_parent)[t] = std::move(tp);
    (*from_parent)[t] = std::move(fp);
  }
  CellularSet yc = y;
  auto action = [yc, to_parent, from_parent](const ThetaMap& f, int e) {
    int p = to_parent->at(f.tgt()).at(e);
    int q = yc.act(shift_map(f), p);
    return from_parent->at(f.src()).at(q);
  };
  // loops of a generated presheaf need not be generated within the bound
  return CellularSet(bound, std::move(card), action, false);
}

/// Indexing helper: the parent element of omega(y) behind a given element.
inline int omega_parent_element(const CellularSet& y, const Cell& t, int e) {
  if (e == 0) return 0;
  Cell jt = shift_cell(t);
  int seen = 0;
  for (int p = 1; p < y.card(jt); ++p)
    if (y.act(vertex(jt, 0), p) == 0 && y.act(vertex(jt, 1), p) == 0)
      if (++seen == e) return p;
  throw domain_error("omega_parent_element: index out of range");
}

/// The comparison from the suspended representable to the smash with the
/// circle, determined by the pair (E_T, C_1) at the shifted cell: a class
/// [w : s -> T+1] goes to the smash class of (E_T . w, [C_1 . w]). Both end
/// vertices of T+1 land on end vertices of the 1-globe, so the assignment
/// descends; descent is verified per element, not assumed.
struct SuspensionComparison {
  CellularSet source;       // suspended representable at t
  CellularMap source_proj;  // from the shifted representable
  CellularSet target;       // smash(representable_+(t), circle)
  CellularMap target_proj;  // from the product
  CellularMap map;
};

inline SuspensionComparison suspension_comparison(const Cell& t, int bound) {
  if (degree(t) + 1 > bound)
    throw domain_error("suspension_comparison: bound too small");
  auto [src, sproj] = suspended_representable(t, bound);
  CellularSet rep_t = cellular_representable(t, bound);
  CellularSet circle = s_circle(bound);
  auto [tgt, tproj] = smash_with_projection<ThetaSite>(rep_t, circle);

  // the circle class of a map u : s -> 1-globe
  auto circle_class = [&](const Cell& s, const ThetaMap& u) {
    int idx = representable_index<ThetaSite>(s, globe(1), u);
    // the circle is the quotient of rep1 by its boundary members
    return detail::boundary_members(s, globe(1)).count(idx) ? 0
           : [&] {
               int cls = 1;
               for (int e = 1; e < idx; ++e)
                 if (!detail::boundary_members(s, globe(1)).count(e)) ++cls;
               return cls;
             }();
  };

  Cell jt = shift_cell(t);
  ThetaMap e_t = eckmann_hilton(t);
  ThetaMap c1 = collapse_maps(1, jt).c_map;  // T+1 -> 1-globe

  CellularMap out{src, tgt, {}};
  for (const auto& [s, n] : src.cards()) {
    std::vector<int> v(n, -1);
    v[0] = 0;
    const auto& homs = theta_hom_enumerate(s, jt);
    for (std::size_t e = 0; e < homs.size(); ++e) {
      int cls = sproj.comp.at(s).at(e + 1);
      const ThetaMap& w = homs[e];
      int first = representable_index<ThetaSite>(s, t, theta_compose(e_t, w));
      int second = circle_class(s, theta_compose(c1, w));
      int pair = pair_index<ThetaSite>(circle, s, first, second);
      int image = tproj.comp.at(s).at(pair);
      if (v[cls] >= 0 && v[cls] != image)
        throw domain_error("suspension_comparison: descent failure");
      v[cls] = image;
    }
    for (int e2 = 0; e2 < n; ++e2)
      if (v[e2] < 0)
        throw domain_error("suspension_comparison: unassigned class");
    out.comp[s] = std::move(v);
  }
  return SuspensionComparison{src, sproj, tgt, tproj, out};
}

}  // namespace theta
