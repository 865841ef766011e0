#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "theta/cell.hpp"

using namespace theta;

TEST_CASE("degree") {
  CHECK(degree(leaf()) == 0);
  for (int n = 0; n <= 5; ++n) CHECK(degree(globe(n)) == n);
  Cell t({node({leaf()}), leaf()});  // [[2];[[1];[0]],[0]]
  CHECK(degree(t) == 3);
}

TEST_CASE("globes") {
  CHECK(globe(0) == leaf());
  CHECK(globe(2) == node({node({leaf()})}));
  CHECK(serial(globe(2)) == "[[1];[[1];[0]]]");
}

TEST_CASE("globular sums") {
  CHECK(globular_sum_to_cell(GlobularSum({1})) == globe(1));
  for (int n = 0; n <= 4; ++n)
    CHECK(globular_sum_to_cell(GlobularSum({n})) == globe(n));

  CHECK(globular_sum_to_cell(GlobularSum({1, 0, 1})) == node({leaf(), leaf()}));
  CHECK(globular_sum_to_cell(GlobularSum({2, 1, 2})) ==
        node({node({leaf(), leaf()})}));

  CHECK(cell_to_globular_sum(leaf()).seq == std::vector<int>{0});
  CHECK(cell_to_globular_sum(node({leaf(), leaf()})).seq ==
        std::vector<int>{1, 0, 1});

  CHECK_THROWS_AS(GlobularSum({1, 2, 1}), domain_error);
}

TEST_CASE("normalization merges absorbed globes") {
  CHECK(globular_sum_normalize(GlobularSum({1, 1, 1})).seq ==
        std::vector<int>{1});
  CHECK(globular_sum_normalize(GlobularSum({1, 0, 0})).seq ==
        std::vector<int>{1});
  CHECK(globular_sum_normalize(GlobularSum({0, 0, 1})).seq ==
        std::vector<int>{1});
  CHECK(globular_sum_normalize(GlobularSum({2, 1, 1, 0, 3})).seq ==
        std::vector<int>{2, 0, 3});
  // A on a non-reduced sequence goes through the same normalization
  CHECK(globular_sum_to_cell(GlobularSum({1, 1, 1})) == globe(1));
}

TEST_CASE("round trip both directions for all cells of degree <= 6") {
  auto cells = enumerate_cells(6);
  for (const Cell& t : cells) {
    GlobularSum g = cell_to_globular_sum(t);
    CHECK(globular_sum_to_cell(g) == t);
    // reduced form: every m strictly below both neighbors
    for (std::size_t i = 1; i + 1 < g.seq.size(); i += 2) {
      CHECK(g.seq[i] < g.seq[i - 1]);
      CHECK(g.seq[i] < g.seq[i + 1]);
    }
  }
  // distinct cells give distinct sequences
  std::set<std::vector<int>> seqs;
  for (const Cell& t : cells) CHECK(seqs.insert(cell_to_globular_sum(t).seq).second);
}

TEST_CASE("enumerate_cells") {
  auto c0 = enumerate_cells(0);
  REQUIRE(c0.size() == 1);
  CHECK(c0[0] == leaf());

  auto c1 = enumerate_cells(1);
  REQUIRE(c1.size() == 2);
  CHECK(c1[1] == globe(1));

  auto c2 = enumerate_cells(2);
  REQUIRE(c2.size() == 4);
  std::set<std::string> got;
  for (const Cell& t : c2) got.insert(serial(t));
  CHECK(got.count("[[1];[[1];[0]]]") == 1);
  CHECK(got.count("[[2];[0],[0]]") == 1);

  // each cell appears exactly once and degrees are nondecreasing
  auto c6 = enumerate_cells(6);
  std::set<std::string> seen;
  int last = 0;
  std::vector<long> per_degree(7, 0);
  for (const Cell& t : c6) {
    CHECK(seen.insert(serial(t)).second);
    CHECK(degree(t) >= last);
    last = degree(t);
    REQUIRE(degree(t) <= 6);
    ++per_degree[degree(t)];
  }
  // cells of degree d are planar rooted trees with d edges: Catalan numbers
  std::vector<long> catalan{1};
  for (int d = 1; d <= 6; ++d) {
    long c = 0;
    for (int k = 0; k < d; ++k) c += catalan[k] * catalan[d - 1 - k];
    catalan.push_back(c);
  }
  for (int d = 0; d <= 6; ++d) CHECK(per_degree[d] == catalan[d]);
}
