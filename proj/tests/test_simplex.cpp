#include <catch2/catch_amalgamated.hpp>

#include "theta/simplex.hpp"

using namespace theta;

namespace {

// Independent counting oracle: number of weakly monotone maps [m] -> [n] is
// the multiset coefficient C(n+m+1, m+1), computed here by direct recursion
// rather than through the enumerator under test.
long count_monotone(int m, int n) {
  // f(0) can be 0..n; recurse on the remaining m values being >= f(0)
  std::vector<std::vector<long>> memo(m + 2, std::vector<long>(n + 2, -1));
  auto rec = [&](auto&& self, int left, int minval) -> long {
    if (left == 0) return 1;
    long& slot = memo[left][minval];
    if (slot >= 0) return slot;
    long total = 0;
    for (int v = minval; v <= n; ++v) total += self(self, left - 1, v);
    return slot = total;
  };
  return rec(rec, m + 1, 0);
}

}  // namespace

TEST_CASE("composition basics") {
  SimplexMap id2 = SimplexMap::identity(SimplexObject(2));
  CHECK(simplex_compose(id2, id2) == id2);

  // d^1 . d^1 : [1] -> [3] has values (0,3): both inner steps skip 1
  SimplexMap d1a = SimplexMap::coface(1, 1);
  SimplexMap d1b = SimplexMap::coface(2, 1);
  SimplexMap c = simplex_compose(d1b, d1a);
  CHECK(c.values() == std::vector<int>{0, 3});

  // s^0 . d^0 = id_[0]
  SimplexMap d0 = SimplexMap::coface(0, 0);
  SimplexMap s0 = SimplexMap::codegeneracy(0, 0);
  CHECK(simplex_compose(s0, d0) == SimplexMap::identity(SimplexObject(0)));

  CHECK_THROWS_AS(simplex_compose(d1a, d1b), domain_error);
}

TEST_CASE("hom enumeration") {
  for (int n = 0; n <= 3; ++n)
    CHECK(simplex_hom_enumerate(SimplexObject(0), SimplexObject(n)).size() ==
          static_cast<std::size_t>(n + 1));
  CHECK(simplex_hom_enumerate(SimplexObject(1), SimplexObject(1)).size() == 3);
  CHECK(simplex_hom_enumerate(SimplexObject(2), SimplexObject(1)).size() == 4);

  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) {
      auto maps = simplex_hom_enumerate(SimplexObject(m), SimplexObject(n));
      CHECK(static_cast<long>(maps.size()) == count_monotone(m, n));
      // no duplicates: enumeration is strictly lexicographic
      for (std::size_t i = 1; i < maps.size(); ++i)
        CHECK(maps[i - 1].values() < maps[i].values());
    }
  }
}

TEST_CASE("factorization") {
  SimplexMap id1 = SimplexMap::identity(SimplexObject(1));
  auto [e0, m0] = simplex_factorize(id1);
  CHECK(e0 == id1);
  CHECK(m0 == id1);

  SimplexMap s0 = SimplexMap::codegeneracy(0, 0);
  auto [e1, m1] = simplex_factorize(s0);
  CHECK(e1 == s0);
  CHECK(m1 == SimplexMap::identity(SimplexObject(0)));

  SimplexMap f(SimplexObject(2), SimplexObject(2), {0, 0, 2});
  auto [e2, m2] = simplex_factorize(f);
  CHECK(e2 == SimplexMap(SimplexObject(2), SimplexObject(1), {0, 0, 1}));
  CHECK(m2 == SimplexMap(SimplexObject(1), SimplexObject(2), {0, 2}));
}

TEST_CASE("factorization round-trip and uniqueness, objects <= [4]") {
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) {
      for (const SimplexMap& f :
           simplex_hom_enumerate(SimplexObject(m), SimplexObject(n))) {
        auto [e, mo] = simplex_factorize(f);
        CHECK(e.is_surjective());
        CHECK(mo.is_injective());
        CHECK(simplex_compose(mo, e) == f);
        // uniqueness by enumeration over all middle objects
        int found = 0;
        for (int k = 0; k <= std::min(m, n); ++k) {
          for (const SimplexMap& e2 :
               simplex_hom_enumerate(SimplexObject(m), SimplexObject(k))) {
            if (!e2.is_surjective()) continue;
            for (const SimplexMap& m2 :
                 simplex_hom_enumerate(SimplexObject(k), SimplexObject(n))) {
              if (!m2.is_injective()) continue;
              if (simplex_compose(m2, e2) == f) ++found;
            }
          }
        }
        CHECK(found == 1);
      }
    }
  }
}

TEST_CASE("associativity and unitality, objects <= [3]") {
  std::vector<SimplexObject> objs = {SimplexObject(0), SimplexObject(1),
                                     SimplexObject(2), SimplexObject(3)};
  for (auto a : objs)
    for (auto b : objs)
      for (auto c : objs)
        for (auto d : objs)
          for (const auto& f : simplex_hom_enumerate(a, b))
            for (const auto& g : simplex_hom_enumerate(b, c)) {
              CHECK(simplex_compose(g, f) ==
                    simplex_compose(simplex_compose(SimplexMap::identity(c), g), f));
              for (const auto& h : simplex_hom_enumerate(c, d))
                REQUIRE(simplex_compose(h, simplex_compose(g, f)) ==
                        simplex_compose(simplex_compose(h, g), f));
            }
}

TEST_CASE("cosimplicial identities on [n] <= [4]") {
  for (int n = 0; n <= 4; ++n) {
    // d^j d^i = d^i d^{j-1}, i < j
    for (int j = 0; j <= n + 2; ++j)
      for (int i = 0; i < j && i <= n + 1; ++i)
        CHECK(simplex_compose(SimplexMap::coface(n + 1, j),
                              SimplexMap::coface(n, i)) ==
              simplex_compose(SimplexMap::coface(n + 1, i),
                              SimplexMap::coface(n, j - 1)));
    // s^j s^i = s^i s^{j+1}, i <= j
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        CHECK(simplex_compose(SimplexMap::codegeneracy(n, j),
                              SimplexMap::codegeneracy(n + 1, i)) ==
              simplex_compose(SimplexMap::codegeneracy(n, i),
                              SimplexMap::codegeneracy(n + 1, j + 1)));
    // mixed: s^j d^i = d^i s^{j-1} (i < j), = id (i = j, j+1),
    //        = d^{i-1} s^j (i > j+1)
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n + 1; ++i) {
        SimplexMap lhs = simplex_compose(SimplexMap::codegeneracy(n, j),
                                         SimplexMap::coface(n, i));
        if (i < j)
          CHECK(lhs == simplex_compose(SimplexMap::coface(n - 1, i),
                                       SimplexMap::codegeneracy(n - 1, j - 1)));
        else if (i == j || i == j + 1)
          CHECK(lhs == SimplexMap::identity(SimplexObject(n)));
        else
          CHECK(lhs == simplex_compose(SimplexMap::coface(n - 1, i - 1),
                                       SimplexMap::codegeneracy(n - 1, j)));
      }
    }
  }
}
