#include "doctest.h"
#include "qmat/support.hpp"

using namespace qmat;
using support::Partition;
using support::ShapeKind;
using support::SupportSet;

namespace {

// straight shape test: rows are left-justified prefixes of weakly
// decreasing lengths
bool looks_straight(const SupportSet& s) {
  int prev = s.n() + 1;
  for (int i = 1; i <= s.m(); ++i) {
    int len = 0;
    while (len < s.n() && s.forbidden(i, len + 1)) ++len;
    for (int j = len + 1; j <= s.n(); ++j)
      if (s.forbidden(i, j)) return false;
    if (len > prev) return false;
    prev = len;
  }
  return true;
}

}  // namespace

TEST_CASE("diagonal prefix examples") {
  CHECK(support::diagonal_prefix(3, 0).forbidden_count() == 0);
  SupportSet full = support::diagonal_prefix(3, 3);
  CHECK(full.positions() == std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}});
  SupportSet s52 = support::diagonal_prefix(5, 2);
  CHECK(s52.forbidden_count() == 2);
  CHECK(s52.free_count() == 23);
  CHECK_THROWS_AS(support::diagonal_prefix(3, 4), OutOfRange);
}

TEST_CASE("straight shape matches the figure layout") {
  SupportSet s = support::shape(ShapeKind::straight, Partition({4, 3, 2}), 5);
  CHECK(s.forbidden_count() == 9);
  int expected_rows[5] = {4, 3, 2, 0, 0};
  for (int i = 1; i <= 5; ++i) {
    int len = 0;
    while (len < 5 && s.forbidden(i, len + 1)) ++len;
    CHECK(len == expected_rows[i - 1]);
  }
  CHECK(support::shape(ShapeKind::straight, Partition(std::vector<int>{}), 3).forbidden_count() ==
        0);
  CHECK_THROWS_AS(support::shape(ShapeKind::straight, Partition({6}), 5), OutOfRange);
  CHECK_THROWS_AS(Partition({1, 3}), OutOfRange);
}

TEST_CASE("rectangle property of straight shapes") {
  SupportSet s = support::shape(ShapeKind::straight, Partition({4, 4, 2, 1}), 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      if (s.forbidden(i, j))
        for (int a = 1; a <= i; ++a)
          for (int b = 1; b <= j; ++b) CHECK(s.forbidden(a, b));
}

TEST_CASE("complement of a straight shape, rotated, is straight") {
  const std::vector<std::vector<int>> shapes = {{4, 3, 2}, {5, 5, 1}, {2, 2, 2, 2}, {}};
  for (const auto& parts : shapes) {
    SupportSet s = support::shape(ShapeKind::straight, Partition(parts), 5);
    CHECK(looks_straight(support::complement(s).rotate180()));
  }
}

TEST_CASE("skew staircase difference is the diagonal up to rotation") {
  const int n = 4;
  SupportSet skew = support::shape(ShapeKind::skew, Partition({4, 3, 2, 1}),
                                   Partition({3, 2, 1, 0}), n);
  // the staircase difference is the antidiagonal: reversing the row order
  // (a quarter turn composed with a transpose) gives the full diagonal
  SupportSet flipped(n, n);
  for (auto [i, j] : skew.positions()) flipped.forbid(n + 1 - i, j);
  CHECK(flipped == support::diagonal_prefix(n, n));
  CHECK(skew.rotate180() == skew);  // the antidiagonal is 180-degree symmetric
  CHECK_THROWS_AS(
      support::shape(ShapeKind::skew, Partition({2, 1}), Partition({3}), 4), NotNested);
}

TEST_CASE("complement examples") {
  SupportSet empty22(2, 2);
  CHECK(support::complement(empty22).forbidden_count() == 4);
  SupportSet s = support::shape(ShapeKind::straight, Partition({4, 3, 2}), 5);
  CHECK(support::complement(s).forbidden_count() == 16);
  CHECK(support::complement(support::complement(s)) == s);
}

TEST_CASE("fano support") {
  SupportSet fano = support::fano_support();
  CHECK(fano.m() == 7);
  CHECK(fano.forbidden_count() == 28);
  CHECK(fano.free_count() == 21);
  for (int i = 1; i <= 7; ++i) {
    int row_free = 0, col_free = 0;
    for (int j = 1; j <= 7; ++j) {
      if (!fano.forbidden(i, j)) ++row_free;
      if (!fano.forbidden(j, i)) ++col_free;
    }
    CHECK(row_free == 3);
    CHECK(col_free == 3);
  }
  // projective plane axiom: two distinct rows share exactly one free column
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) {
      int shared = 0;
      for (int j = 1; j <= 7; ++j)
        if (!fano.forbidden(a, j) && !fano.forbidden(b, j)) ++shared;
      CHECK(shared == 1);
    }
}

TEST_CASE("graph support") {
  // K3: complete, apex = v3
  SupportSet k3 = support::graph_support(3, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(k3.m() == 2);
  CHECK(k3.forbidden_count() == 0);
  // K4 minus edge v1v2
  SupportSet k4m = support::graph_support(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(k4m.positions() == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
  // star on 3 vertices centered at v3
  SupportSet star = support::graph_support(3, {{1, 3}, {2, 3}});
  CHECK(star.positions() == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
  CHECK_THROWS_AS(support::graph_support(3, {{1, 2}, {1, 3}}), ApexMissing);
}

TEST_CASE("support set validation") {
  CHECK_THROWS_AS(SupportSet::from_positions(2, 2, {{1, 1}, {1, 1}}), OutOfRange);
  CHECK_THROWS_AS(SupportSet::from_positions(2, 2, {{3, 1}}), OutOfRange);
  SupportSet s = SupportSet::from_positions(2, 3, {{1, 2}, {2, 3}});
  CHECK(s.forbidden(1, 2));
  CHECK_FALSE(s.transpose_symmetric());
  CHECK(s.transpose().forbidden(2, 1));
  SupportSet sym = SupportSet::from_positions(2, 2, {{1, 2}, {2, 1}});
  CHECK(sym.transpose_symmetric());
  CHECK(sym.free_count_symmetric() == 2);
  CHECK(sym.free_count_skew() == 0);
}
