#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "theta/shift.hpp"

using namespace theta;

TEST_CASE("shift on cells and globular sums") {
  CHECK(shift_cell(leaf()) == globe(1));
  for (int n = 0; n <= 4; ++n) CHECK(shift_cell(globe(n)) == globe(n + 1));

  Cell a101 = globular_sum_to_cell(GlobularSum({1, 0, 1}));
  CHECK(cell_to_globular_sum(shift_cell(a101)).seq ==
        std::vector<int>{2, 1, 2});
  // every entry goes up by one
  for (const Cell& t : enumerate_cells(4)) {
    auto base = cell_to_globular_sum(t).seq;
    for (int& v : base) ++v;
    CHECK(cell_to_globular_sum(shift_cell(t)).seq == base);
  }
}

TEST_CASE("shift is functorial, degree <= 2") {
  auto cells = enumerate_cells(2);
  for (const Cell& a : cells)
    for (const Cell& b : cells) {
      for (const ThetaMap& f : theta_hom_enumerate(a, b)) {
        CHECK(shift_map(f).src() == shift_cell(a));
        CHECK(shift_map(f).tgt() == shift_cell(b));
      }
      for (const Cell& c : cells)
        for (const ThetaMap& f : theta_hom_enumerate(a, b))
          for (const ThetaMap& g : theta_hom_enumerate(b, c))
            REQUIRE(shift_map(theta_compose(g, f)) ==
                    theta_compose(shift_map(g), shift_map(f)));
    }
  CHECK(shift_map(ThetaMap::identity(globe(1))) ==
        ThetaMap::identity(globe(2)));
}

TEST_CASE("shift preserves coface fiber products, targets of degree <= 3") {
  for (const Cell& t : enumerate_cells(3)) {
    if (degree(t) < 1) continue;
    const auto& cofs = boundary_cofaces(t);
    for (const ThetaMap& f : cofs)
      for (const ThetaMap& g : cofs) {
        CofacePullback p = CofacePullback::compute(CofacePair(f, g));
        CofacePullback jp =
            CofacePullback::compute(CofacePair(shift_map(f), shift_map(g)));
        if (p.kind() == CofacePullback::Kind::Representable) {
          REQUIRE(jp.kind() == CofacePullback::Kind::Representable);
          REQUIRE(jp.apex() == shift_cell(p.apex()));
          REQUIRE(jp.proj_left() == shift_map(p.proj_left()));
          REQUIRE(jp.proj_right() == shift_map(p.proj_right()));
        } else {
          // the shifted pair still computes the right fiber product
          for (const Cell& s : enumerate_cells(degree(t) + 1)) {
            std::set<std::pair<ThetaMap, ThetaMap>> expect;
            for (const ThetaMap& u : theta_hom_enumerate(s, shift_cell(f.src())))
              for (const ThetaMap& v :
                   theta_hom_enumerate(s, shift_cell(g.src())))
                if (theta_compose(shift_map(f), u) ==
                    theta_compose(shift_map(g), v))
                  expect.emplace(u, v);
            auto got_list = jp.span_cells(s);
            std::set<std::pair<ThetaMap, ThetaMap>> got(got_list.begin(),
                                                        got_list.end());
            REQUIRE(got == expect);
          }
        }
      }
  }
  // the empty intersection of the two vertices shifts to the two-point
  // intersection of the two edges of the 2-globe
  CofacePullback shifted = CofacePullback::compute(
      CofacePair(shift_map(globe_s(0)), shift_map(globe_t(0))));
  CHECK(shifted.kind() == CofacePullback::Kind::NonRepresentable);
  CHECK(shifted.span_cells(leaf()).size() == 2);
}

TEST_CASE("collapse clamps the globular sum") {
  // fixed point when every entry is already small
  for (const Cell& t : enumerate_cells(4)) {
    auto seq = cell_to_globular_sum(t).seq;
    int mx = 0;
    for (int v : seq) mx = std::max(mx, v);
    for (int p = std::max(mx, 1); p <= mx + 2; ++p) CHECK(collapse(p, t) == t);
    for (int p = 1; p <= 4; ++p)
      CHECK(collapse(p, collapse(p, t)) == collapse(p, t));
  }
  // K_1(S+1) = [[1];[0]]
  for (const Cell& s : enumerate_cells(3))
    CHECK(collapse(1, shift_cell(s)) == globe(1));
  // K_1(A(2,1,2)) = A(1,1,1) = 1-globe
  CHECK(collapse(1, globular_sum_to_cell(GlobularSum({2, 1, 2}))) == globe(1));
  CHECK_THROWS_AS(collapse(0, globe(1)), domain_error);
}

TEST_CASE("collapse maps split, degree <= 3, p <= 3") {
  for (const Cell& t : enumerate_cells(3)) {
    for (int p = 1; p <= 3; ++p) {
      CollapseData cd = collapse_maps(p, t);
      Cell kt = collapse(p, t);
      CHECK(cd.c_map.src() == t);
      CHECK(cd.c_map.tgt() == kt);
      REQUIRE(theta_compose(cd.c_map, cd.d_map) == ThetaMap::identity(kt));
      REQUIRE(theta_compose(cd.c_map, cd.f_map) == ThetaMap::identity(kt));
      if (kt == t) {
        CHECK(cd.c_map == ThetaMap::identity(t));
        CHECK(cd.d_map == ThetaMap::identity(t));
        CHECK(cd.f_map == ThetaMap::identity(t));
      }
    }
  }
  // on the 2-globe at p = 1 the unit is i and the splittings are s and t
  CollapseData cd = collapse_maps(1, globe(2));
  CHECK(cd.c_map == globe_i(1));
  CHECK(cd.d_map == globe_s(1));
  CHECK(cd.f_map == globe_t(1));
}

TEST_CASE("collapse is left adjoint to the height-p inclusion, degree <= 3") {
  auto cells = enumerate_cells(3);
  for (int p = 1; p <= 3; ++p) {
    for (const Cell& t : cells) {
      CollapseData cd = collapse_maps(p, t);
      for (const Cell& s : cells) {
        if (collapse(p, s) != s) continue;
        // precomposition with the unit bijects Hom(K_p(T), S) with Hom(T, S)
        std::set<ThetaMap> images;
        for (const ThetaMap& h : theta_hom_enumerate(collapse(p, t), s)) {
          ThetaMap through = theta_compose(h, cd.c_map);
          REQUIRE(images.insert(through).second);
        }
        REQUIRE(images.size() == theta_hom_enumerate(t, s).size());
      }
    }
  }
}

TEST_CASE("end vertices and constants") {
  CHECK(vertex_in_minus(leaf()) == vertex_in_plus(leaf()));
  CHECK(vertex_in_minus(globe(1)) == globe_s(0));
  CHECK(vertex_in_plus(globe(1)) == globe_t(0));
  // composing a constant with any map yields a constant
  Cell two = node({leaf(), leaf()});
  for (const Cell& s : enumerate_cells(2))
    for (const ThetaMap& a : theta_hom_enumerate(two, globe(2))) {
      ThetaMap c = theta_compose(a, constant_to(s, two, false));
      int v = a.simplicial()(0);
      CHECK(c == theta_compose(vertex(globe(2), v), terminal_map(s)));
    }
}

TEST_CASE("eh auxiliary maps") {
  // against the 1-globe both composites reduce to the p = 1 unit
  for (const Cell& s : enumerate_cells(2)) {
    ThetaMap c1 = collapse_maps(1, shift_cell(s)).c_map;
    CHECK(eh_aux_F(s, globe(1)) == c1);
    CHECK(eh_aux_D(s, globe(1)) == c1);
  }
  // degenerate target
  for (const Cell& s : enumerate_cells(2))
    CHECK(eh_aux_F(s, leaf()) == terminal_map(shift_cell(s)));
  // endpoint laws
  for (const Cell& s : enumerate_cells(2)) {
    for (const Cell& t : enumerate_cells(3)) {
      ThetaMap f = eh_aux_F(s, t);
      ThetaMap d = eh_aux_D(s, t);
      CHECK(theta_compose(f, vertex_in_plus(shift_cell(s))) ==
            vertex_in_plus(t));
      CHECK(theta_compose(d, vertex_in_minus(shift_cell(s))) ==
            vertex_in_minus(t));
    }
  }
}

TEST_CASE("eckmann-hilton degeneracy") {
  CHECK(eckmann_hilton(leaf()) == globe_i(0));
  // on globes the recursion reproduces the reflexivity maps
  for (int n = 0; n <= 3; ++n)
    CHECK(eckmann_hilton(globe(n)) == globe_i(n));

  // on the two-arrow path: the long-edge squash
  Cell two = node({leaf(), leaf()});
  ThetaMap e2 = eckmann_hilton(two);
  CHECK(e2.simplicial().values() == std::vector<int>{0, 2});
  CHECK(e2.component(1, 1) == terminal_map(two));
  CHECK(e2.component(1, 2) == terminal_map(two));

  // construction succeeds (glue conditions hold) on every small cell
  for (const Cell& t : enumerate_cells(4)) {
    ThetaMap e = eckmann_hilton(t);
    CHECK(e.src() == shift_cell(t));
    CHECK(e.tgt() == t);
    // endpoints land on the end vertices
    CHECK(theta_compose(e, vertex_in_minus(shift_cell(t))) ==
          vertex_in_minus(t));
    CHECK(theta_compose(e, vertex_in_plus(shift_cell(t))) == vertex_in_plus(t));
  }

  // on globes E is a degeneracy; on wider cells the long-edge simplicial
  // part puts it outside both signed classes
  CHECK(classify(eckmann_hilton(globe(1))) == MapClass::Negative);
  CHECK(classify(eckmann_hilton(two)) == MapClass::Mixed);
}

TEST_CASE("eckmann-hilton is natural against negative maps, degree <= 3") {
  auto cells = enumerate_cells(3);
  for (const Cell& a : cells)
    for (const Cell& b : cells)
      for (const ThetaMap& h : theta_hom_enumerate(a, b)) {
        MapClass c = classify(h);
        if (c != MapClass::Negative && c != MapClass::Identity) continue;
        REQUIRE(theta_compose(eckmann_hilton(b), shift_map(h)) ==
                theta_compose(h, eckmann_hilton(a)));
      }
}

TEST_CASE("eckmann-hilton naturality fails against the globe inclusions") {
  // the target inclusion of the point composes with E to the identity edge,
  // not to the constant at the target vertex, so strict naturality cannot
  // extend to positive maps
  ThetaMap lhs = theta_compose(eckmann_hilton(globe(1)), shift_map(globe_t(0)));
  ThetaMap rhs = theta_compose(globe_t(0), eckmann_hilton(leaf()));
  CHECK(lhs == ThetaMap::identity(globe(1)));
  CHECK(rhs == constant_to(globe(1), globe(1), true));
  CHECK(lhs != rhs);
}
