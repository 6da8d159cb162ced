#include <map>
#include <random>

#include "doctest.h"
#include "qmat/formulas.hpp"
#include "qmat/oracle.hpp"
#include "qmat/polyprobe.hpp"
#include "qmat/qpoly.hpp"
#include "test_util.hpp"

using namespace qmat;
using namespace qmat::oracle;
using gf::kMinus;
using gf::kPlus;
using support::SupportSet;
using testutil::naive_count;
using testutil::NaiveClass;

namespace {

CountQuery basic(SupportSet s, long q) { return CountQuery(std::move(s), q); }

}  // namespace

TEST_CASE("count examples from the contract") {
  {
    CountQuery q(support::diagonal_prefix(2, 2), 2);
    q.r = 2;
    CHECK(count_restricted(q).value == 1);  // only [[0,1],[1,0]]
  }
  {
    CountQuery q(SupportSet(3, 3), 2);
    q.cls = MatrixClass::skew;
    q.r = 3;
    CountValue v = count_restricted(q);
    CHECK(v.value == 0);  // skew ranks are even
    CHECK(v.method == "parity");
  }
  {
    CountQuery q(support::diagonal_prefix(2, 2), 3);
    q.cls = MatrixClass::symmetric_with_character;
    q.character = kMinus;
    q.r = 2;
    CHECK(count_restricted(q).value == 2);
  }
}

TEST_CASE("rank-character tables") {
  RankTable t = count_rank_character_table(2, support::diagonal_prefix(2, 2), 3);
  CHECK(t.at(0, kPlus) == 1);
  CHECK(t.at(0, kMinus) == 0);
  CHECK(t.at(1, kPlus) == 0);
  CHECK(t.at(1, kMinus) == 0);
  CHECK(t.at(2, kPlus) == 0);
  CHECK(t.at(2, kMinus) == 2);

  RankTable t1 = count_rank_character_table(1, SupportSet(1, 1), 5);
  CHECK(t1.at(0, kPlus) == 1);
  CHECK(t1.at(1, kPlus) == 2);
  CHECK(t1.at(1, kMinus) == 2);

  CountQuery q(SupportSet(2, 2), 3);
  q.cls = MatrixClass::symmetric;
  RankTable t2 = count_table(q);
  CHECK(t2.at(1) == 8);  // 27 symmetric - 1 zero - 18 invertible

  // row sums reproduce the plain symmetric count
  RankTable ct = count_rank_character_table(3, support::diagonal_prefix(3, 1), 3);
  CountQuery q3(support::diagonal_prefix(3, 1), 3);
  q3.cls = MatrixClass::symmetric;
  RankTable pt = count_table(q3);
  for (int r = 0; r <= 3; ++r) CHECK(ct.at(r, kPlus) + ct.at(r, kMinus) == pt.at(r));
}

TEST_CASE("strategies agree with each other and with the naive oracle") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + int(rng() % 2), n = 2 + int(rng() % 2);
    const long q = std::vector<long>{2, 3, 4, 5}[rng() % 4];
    SupportSet s(m, n);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j)
        if (rng() % 3 == 0) s.forbid(i, j);
    auto naive = naive_count(s, q, NaiveClass::general);
    for (int r = 0; r <= std::min(m, n); ++r) {
      CountQuery base = basic(s, q);
      base.r = r;
      QInt expected = naive.rank(r);
      for (Strategy st : {Strategy::exhaustive, Strategy::projectivized,
                          Strategy::pruned_column_dfs}) {
        CountQuery qq = base;
        qq.strategy = st;
        CHECK(count_restricted(qq).value == expected);
      }
    }
  }
}

TEST_CASE("symmetric and skew classes match the naive oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + int(rng() % 2);
    const long q = std::vector<long>{2, 3, 5}[rng() % 3];
    SupportSet s(n, n);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        if (rng() % 3 == 0) {
          s.forbid(i, j);
          if (i != j) s.forbid(j, i);
        }
    auto sym = naive_count(s, q, NaiveClass::symmetric);
    auto skew = naive_count(s, q, NaiveClass::skew);
    CountQuery qs = basic(s, q);
    qs.cls = MatrixClass::symmetric;
    RankTable ts = count_table(qs);
    CountQuery qk = basic(s, q);
    qk.cls = MatrixClass::skew;
    RankTable tk = count_table(qk);
    for (int r = 0; r <= n; ++r) {
      CHECK(ts.at(r) == sym.rank(r));
      CHECK(tk.at(r) == skew.rank(r));
    }
  }
}

TEST_CASE("rank distribution completeness per class") {
  SupportSet s = SupportSet::from_positions(3, 3, {{1, 2}, {2, 1}, {3, 3}});
  for (long q : {2L, 3L, 5L}) {
    CountQuery qg = basic(s, q);
    CHECK(count_table(qg).total() == pow_int(q, s.free_count()));
    CountQuery qs = basic(s, q);
    qs.cls = MatrixClass::symmetric;
    CHECK(count_table(qs).total() == pow_int(q, s.free_count_symmetric()));
    CountQuery qk = basic(s, q);
    qk.cls = MatrixClass::skew;
    CHECK(count_table(qk).total() == pow_int(q, s.free_count_skew()));
  }
}

TEST_CASE("partition determinism: identical results for every worker count") {
  SupportSet s = support::diagonal_prefix(3, 2);
  for (MatrixClass cls : {MatrixClass::general, MatrixClass::symmetric}) {
    std::vector<RankTable> tables;
    for (int workers : {1, 2, 5, 16}) {
      CountQuery q = basic(s, 3);
      q.cls = cls;
      q.workers = workers;
      tables.push_back(count_table(q));
    }
    for (std::size_t i = 1; i < tables.size(); ++i) {
      CHECK(tables[i].by_rank == tables[0].by_rank);
      CHECK(tables[i].work == tables[0].work);
    }
  }
}

TEST_CASE("bruhat cell counts") {
  BruhatCells c22 = bruhat_cell_counts(2, 2);
  matq::Permutation id2 = matq::Permutation::identity(2);
  matq::Permutation sw;
  sw.images = {2, 1};
  CHECK(c22.cells.at(sw) == 1);
  CHECK(c22.cells.at(id2) == 0);

  BruhatCells c23 = bruhat_cell_counts(2, 3);
  CHECK(c23.cells.at(sw) == 4);
  CHECK(c23.cells.at(id2) == 0);

  BruhatCells c1 = bruhat_cell_counts(1, 5, 1, QInt(1) << 20);
  CHECK(c1.cells.at(matq::Permutation::identity(1)) == 0);

  for (long q : {2L, 3L})
    for (int n = 1; n <= 3; ++n) {
      BruhatCells cells = bruhat_cell_counts(n, q);
      CHECK(cells.total == formulas::f_rect(n, n, q, formulas::Method::closed));
    }
  CHECK_THROWS_AS(bruhat_cell_counts(6, 2), BudgetExceeded);
}

TEST_CASE("bruhat cell congruences per q, and the fitted cell polynomials") {
  // each cell count is (q-1)^n [w derangement] mod (q-1)^{n+1}
  for (int n = 2; n <= 3; ++n)
    for (long q : {2L, 3L, 4L, 5L}) {
      BruhatCells cells = bruhat_cell_counts(n, q);
      QInt modulus = pow_int(QInt(q) - 1, n + 1);
      for (const auto& [w, count] : cells.cells) {
        QInt expect = w.is_derangement() ? pow_int(QInt(q) - 1, n) % modulus : QInt(0);
        CHECK(count % modulus == expect);
      }
    }
  // per-cell polynomials over seven q values: the (q-1)^n quotient at q = 1
  // is the derangement indicator of the cell
  const int n = 3;
  std::vector<long> qgrid{2, 3, 4, 5, 7, 8, 9};
  std::map<matq::Permutation, std::vector<std::pair<long, QInt>>> samples;
  for (long q : qgrid) {
    BruhatCells cells = bruhat_cell_counts(n, q);
    for (const auto& [w, count] : cells.cells) samples[w].emplace_back(q, count);
  }
  for (const auto& [w, pts] : samples) {
    QPolynomial fitted = polyprobe::interpolate_exact(pts);
    CHECK(fitted.degree() <= n * n - n);
    QPolynomial quotient = fitted.divide_exact(q_minus_one_power(n));
    CHECK(quotient.eval(1L) == QRat(w.is_derangement() ? 1 : 0));
  }
}

TEST_CASE("quadratic form zero counts") {
  CHECK(quadratic_form_zero_count(2, 5, kPlus).value == 9);
  CHECK(quadratic_form_zero_count(2, 3, kPlus).value == 1);
  for (long q : {3L, 5L, 7L}) CHECK(quadratic_form_zero_count(1, q, kPlus).value == 1);
  CHECK_THROWS_AS(quadratic_form_zero_count(2, 4, kPlus), EvenCharacteristic);
}

TEST_CASE("bilinear equation DP oracle matches brute force") {
  for (int n = 1; n <= 2; ++n)
    for (long q : {2L, 3L, 5L}) {
      CHECK(bilinear_equation_count(n, q, true) == testutil::naive_bilinear(n, q, true));
      CHECK(bilinear_equation_count(n, q, false) == testutil::naive_bilinear(n, q, false));
    }
}

TEST_CASE("budget gating") {
  CountQuery q(SupportSet(5, 5), 5);
  q.r = 5;
  q.budget = QInt(100);
  CHECK_THROWS_AS(count_restricted(q), BudgetExceeded);
  try {
    count_restricted(q);
  } catch (const BudgetExceeded& e) {
    CHECK(!e.estimate.empty());
  }
}

TEST_CASE("query validation") {
  SupportSet asym = SupportSet::from_positions(2, 2, {{1, 2}});
  CountQuery q1(asym, 3);
  q1.cls = MatrixClass::symmetric;
  q1.r = 1;
  CHECK_THROWS_AS(count_restricted(q1), NotSymmetric);

  CountQuery q2(SupportSet(2, 2), 4);
  q2.cls = MatrixClass::symmetric_with_character;
  q2.r = 1;
  q2.character = kPlus;
  CHECK_THROWS_AS(count_restricted(q2), EvenCharacteristic);

  CountQuery q3(SupportSet(2, 2), 6);
  q3.r = 1;
  CHECK_THROWS_AS(count_restricted(q3), NotAPrimePower);

  CountQuery q4(SupportSet(2, 2), 3);
  q4.r = 5;
  CHECK_THROWS_AS(count_restricted(q4), OutOfRange);
}

TEST_CASE("formula-oracle agreement beyond the acceptance grid") {
  // n = 5 at q = 2 and n <= 3 at q = 5, per the module invariants
  {
    RankTable t = count_table(basic(support::diagonal_prefix(5, 5), 2));
    for (int r = 0; r <= 5; ++r)
      CHECK(t.at(r) == formulas::g_zero_diag(5, r, 2, formulas::Method::recursive));
  }
  for (int n = 1; n <= 3; ++n) {
    RankTable t = count_table(basic(support::diagonal_prefix(n, n), 5));
    for (int r = 0; r <= n; ++r)
      CHECK(t.at(r) == formulas::g_zero_diag(n, r, 5, formulas::Method::closed));
  }
  for (int k = 1; k <= 5; ++k) {
    support::SupportSet s(k, 5);
    for (int i = 1; i <= k; ++i) s.forbid(i, i);
    CountQuery q = basic(s, 2);
    q.r = k;
    CHECK(count_restricted(q).value == formulas::f_rect(k, 5, 2, formulas::Method::closed));
  }
}

TEST_CASE("transposition safety: wide and tall grids agree") {
  SupportSet tall = SupportSet::from_positions(4, 2, {{1, 1}, {3, 2}});
  SupportSet wide = tall.transpose();
  for (long q : {2L, 3L}) {
    auto naive = naive_count(tall, q, NaiveClass::general);
    for (int r = 0; r <= 2; ++r) {
      CountQuery qt = basic(tall, q);
      qt.r = r;
      CountQuery qw = basic(wide, q);
      qw.r = r;
      CHECK(count_restricted(qt).value == naive.rank(r));
      CHECK(count_restricted(qw).value == naive.rank(r));
    }
  }
}
