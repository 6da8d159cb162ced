#include <algorithm>
#include <vector>

#include "doctest.h"
#include "qmat/formulas.hpp"
#include "qmat/support.hpp"
#include "test_util.hpp"

using namespace qmat;
using namespace qmat::formulas;
using gf::kMinus;
using gf::kPlus;
using support::SupportSet;
using testutil::naive_count;
using testutil::NaiveClass;

TEST_CASE("q basics") {
  CHECK(q_number(3, 2) == 7);
  CHECK(q_double_factorial(0, 5) == 1);
  CHECK(q_double_factorial(-1, 5) == 1);
  CHECK(q_double_factorial(5, 2) == q_number(5, 2) * q_number(3, 2) * q_number(1, 2));
  CHECK(q_double_factorial(5, 2) == 217);
  CHECK(q_factorial(0, 3) == 1);
  CHECK(q_basics(QBasicsKind::number, 4, 3) == 40);
  CHECK_THROWS_AS(q_double_factorial(-2, 3), NegativeArgument);
  CHECK_THROWS_AS(q_factorial(-1, 3), NegativeArgument);
}

TEST_CASE("f_rect examples against the naive oracle") {
  CHECK(f_rect(1, 3, 2, Method::closed) == 3);  // q^{n-1} - 1
  auto naive_f = [](int k, int n, long q) {
    SupportSet s(k, n);
    for (int i = 1; i <= k; ++i) s.forbid(i, i);
    return naive_count(s, q, NaiveClass::general).rank(k);
  };
  CHECK(f_rect(2, 2, 2, Method::closed) == 1);
  CHECK(f_rect(2, 2, 2, Method::closed) == naive_f(2, 2, 2));
  CHECK(f_rect(3, 3, 2, Method::closed) == 14);
  CHECK(f_rect(3, 3, 2, Method::recursive) == 14);
  CHECK(f_rect(3, 3, 2, Method::closed) == naive_f(3, 3, 2));
  CHECK(f_rect(2, 3, 3, Method::recursive) == naive_f(2, 3, 3));
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      for (long q : {2L, 3L, 4L, 5L, 7L, 9L})
        CHECK(f_rect(k, n, q, Method::closed) == f_rect(k, n, q, Method::recursive));
  CHECK_THROWS_AS(f_rect(3, 2, 2, Method::closed), OutOfRange);
}

TEST_CASE("matz examples") {
  CHECK(matz_count(2, 0, 1, 2) == 9);
  CHECK(matz_count(2, 0, 1, 2) == naive_count(SupportSet(2, 2), 2, NaiveClass::general).rank(1));
  CHECK(matz_count(2, 1, 2, 2) == 2);
  CHECK(matz_count(2, 1, 2, 2) ==
        naive_count(support::diagonal_prefix(2, 1), 2, NaiveClass::general).rank(2));
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= n; ++r)
      for (long q : {2L, 3L, 5L})
        CHECK(matz_count(n, n, r, q) == g_zero_diag(n, r, q, Method::recursive));
  CHECK_THROWS_AS(matz_count(2, 3, 1, 2), OutOfRange);
}

TEST_CASE("g_zero_diag examples") {
  CHECK(g_zero_diag(2, 1, 2, Method::recursive) == 2);
  CHECK(g_zero_diag(2, 1, 2, Method::recursive) ==
        naive_count(support::diagonal_prefix(2, 2), 2, NaiveClass::general).rank(1));
  CHECK(g_zero_diag(3, 3, 2, Method::recursive) == 14);
  for (int n = 1; n <= 6; ++n) CHECK(g_zero_diag(n, 0, 5, Method::closed) == 1);
  for (int n = 1; n <= 8; ++n)
    for (int r = 0; r <= n; ++r)
      for (long q : {2L, 3L, 4L, 5L, 7L, 9L})
        CHECK(g_zero_diag(n, r, q, Method::closed) == g_zero_diag(n, r, q, Method::recursive));
}

TEST_CASE("symmetric count formulas") {
  CHECK(sym_invertible(2, 2) == 4);
  CHECK(sym_invertible(2, 2) == naive_count(SupportSet(2, 2), 2, NaiveClass::symmetric).rank(2));
  CHECK(sym_rank(2, 1, 3) == 8);
  CHECK(sym_rank(2, 1, 3) == naive_count(SupportSet(2, 2), 3, NaiveClass::symmetric).rank(1));
  CHECK(sym_rank_char(2, 1, kPlus, 3) == 4);
  CHECK(sym_rank_char(2, 1, kPlus, 3) ==
        naive_count(SupportSet(2, 2), 3, NaiveClass::symmetric, true).rank_char(1, '+'));
  for (int n = 1; n <= 4; ++n)
    for (long q : {2L, 3L, 5L}) CHECK(sym_invertible(n, q) == sym_rank(n, n, q));
  CHECK(sym_rank(3, 4, 5) == 0);
  CHECK_THROWS_AS(sym_rank_char(2, 1, kPlus, 4), EvenCharacteristic);
}

TEST_CASE("sym0 for even q") {
  CHECK(sym0_even_q(3, 1, 2) == 0);
  CHECK(sym0_even_q(2, 2, 2) == 1);
  CHECK(sym0_even_q(2, 2, 2) ==
        naive_count(support::diagonal_prefix(2, 2), 2, NaiveClass::symmetric).rank(2));
  CHECK(sym0_even_q(3, 2, 2) == 7);
  CHECK(sym0_even_q(3, 2, 2) ==
        naive_count(support::diagonal_prefix(3, 3), 2, NaiveClass::symmetric).rank(2));
  CHECK_THROWS_AS(sym0_even_q(3, 2, 3), OddCharacteristic);
}

TEST_CASE("skew-symmetric counts") {
  for (long q : {2L, 3L, 5L}) CHECK(sk_count(2, 2, q, Method::recursive) == q - 1);
  CHECK(sk_count(3, 2, 2, Method::recursive) == 7);
  CHECK(sk_count(3, 2, 2, Method::recursive) ==
        naive_count(SupportSet(3, 3), 2, NaiveClass::skew).rank(2));
  CHECK(sk_count(4, 1, 7, Method::closed) == 0);
  for (int n = 1; n <= 8; ++n)
    for (int r = 0; r <= n; ++r)
      for (long q : {2L, 3L, 4L, 5L, 7L, 9L})
        CHECK(sk_count(n, r, q, Method::closed) == sk_count(n, r, q, Method::recursive));
  // q-analogue of partial fixed point-free involutions: unit sign is +1
  for (int n = 1; n <= 6; ++n)
    for (int r = 0; r <= n; r += 2)
      for (long q : {3L, 4L, 5L}) {
        QInt modulus = pow_int(QInt(q) - 1, r / 2 + 1);
        QInt lhs = sk_count(n, r, q, Method::closed) % modulus;
        QInt rhs = (partial_involution(n, r) * pow_int(QInt(q) - 1, r / 2)) % modulus;
        CHECK(lhs == rhs);
      }
}

TEST_CASE("sq closed table") {
  CHECK(sq_table(2, 5, kPlus) == 9);
  CHECK(sq_table(2, 3, kPlus) == 1);
  CHECK(sq_table(3, 3, kPlus) == 9);
  CHECK(sq_table(3, 3, kMinus) == 9);
  CHECK(sq_table(2, 3, kMinus) == 5);
  CHECK_THROWS_AS(sq_table(2, 4, kPlus), EvenCharacteristic);
}

TEST_CASE("bilinear z and y") {
  for (long q : {2L, 3L, 5L}) {
    CHECK(bilinear_z(1, q) == 2 * q - 1);
    CHECK(bilinear_y(1, q) == q - 1);
  }
  CHECK(bilinear_z(2, 2) == 10);
  for (int n = 1; n <= 2; ++n)
    for (long q : {2L, 3L, 4L}) {
      CHECK(bilinear_z(n, q) == testutil::naive_bilinear(n, q, true));
      CHECK(bilinear_y(n, q) == testutil::naive_bilinear(n, q, false));
    }
  for (int n = 1; n <= 6; ++n)
    for (long q : {2L, 3L, 4L, 5L, 7L, 9L})
      CHECK(bilinear_z(n, q) + (QInt(q) - 1) * bilinear_y(n, q) == pow_int(q, 2 * n));
}

TEST_CASE("character-refined recursion small cases") {
  // [[0,b],[b,0]]: rank 2 for b != 0, det = -b^2, psi(-1) = - at q = 3
  CHECK(sym0_char_recursive(2, 2, 2, kMinus, 3) == 2);
  CHECK(sym0_char_recursive(2, 2, 2, kPlus, 3) == 0);
  auto t = naive_count(support::diagonal_prefix(2, 2), 3, NaiveClass::symmetric, true);
  CHECK(sym0_char_recursive(2, 2, 2, kMinus, 3) == t.rank_char(2, '-'));
  // [[0,0],[0,d]]: one matrix of each character
  CHECK(sym0_char_recursive(2, 1, 1, kPlus, 3) == 1);
  CHECK(sym0_char_recursive(2, 1, 1, kMinus, 3) == 1);
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= n; ++r)
      for (long q : {3L, 5L}) {
        CHECK(sym0_char_recursive(n, 0, r, kPlus, q) == sym_rank_char(n, r, kPlus, q));
        CHECK(sym0_char_recursive(n, 0, r, kMinus, q) == sym_rank_char(n, r, kMinus, q));
      }
  // full brute-force sweep over n <= 3, every k, r, character
  for (long q : {3L, 5L})
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= n; ++k) {
        auto nt = naive_count(support::diagonal_prefix(n, k), q, NaiveClass::symmetric, true);
        for (int r = 0; r <= n; ++r) {
          CHECK(sym0_char_recursive(n, k, r, kPlus, q) == nt.rank_char(r, '+'));
          CHECK(sym0_char_recursive(n, k, r, kMinus, q) == nt.rank_char(r, '-'));
        }
      }
}

TEST_CASE("symz examples") {
  CHECK(symz_total(2, 1, 3, Method::recursive) == 6);
  CHECK(symz_total(2, 1, 3, Method::recursive) ==
        naive_count(support::diagonal_prefix(2, 1), 3, NaiveClass::symmetric).rank(2));
  // Lemma: q^k symz(n,k) = symz(n,0) for even n
  for (long q : {3L, 5L})
    for (int n : {2, 4})
      for (int k = 0; k <= n; ++k)
        CHECK(pow_int(q, k) * symz_total(n, k, q, Method::recursive) == sym_invertible(n, q));
  // odd-size case against the naive oracle
  QInt naive31 = naive_count(support::diagonal_prefix(3, 1), 3, NaiveClass::symmetric).rank(3);
  CHECK(symz_total(3, 1, 3, Method::recursive) == naive31);
  CHECK(symz_total(3, 1, 3, Method::closed) == naive31);
  // closed forms match the recursion across the board
  for (long q : {3L, 5L, 7L})
    for (int n = 1; n <= 6; ++n)
      for (int k = 0; k <= n; ++k) {
        CHECK(symz_total(n, k, q, Method::closed) == symz_total(n, k, q, Method::recursive));
        CHECK(symz_char(n, k, kPlus, q, Method::closed) ==
              symz_char(n, k, kPlus, q, Method::recursive));
        CHECK(symz_char(n, k, kMinus, q, Method::closed) ==
              symz_char(n, k, kMinus, q, Method::recursive));
      }
}

TEST_CASE("derangements and partial involutions") {
  CHECK(derangement(0) == 1);
  CHECK(derangement(3) == 2);
  // brute force over S_4
  {
    std::vector<int> p{1, 2, 3, 4};
    int count = 0;
    do {
      bool fixed = false;
      for (int i = 0; i < 4; ++i) fixed |= (p[i] == i + 1);
      if (!fixed) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(derangement(4) == count);
  }
  CHECK(partial_involution(4, 2) == 6);
  CHECK(partial_involution(4, 4) == 3);
  CHECK(partial_involution(4, 0) == 1);
  CHECK_THROWS_AS(partial_involution(4, 3), OddRank);
}

TEST_CASE("integrality is enforced") {
  CHECK_THROWS_AS(require_integral(QRat(1, 2), "test"), IntegralityError);
  CHECK(require_integral(QRat(6, 3), "test") == 2);
}
