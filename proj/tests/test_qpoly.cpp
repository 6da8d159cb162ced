#include "doctest.h"
#include "qmat/qpoly.hpp"

using namespace qmat;

TEST_CASE("polynomial arithmetic and evaluation") {
  QPolynomial p({QRat(1), QRat(-2), QRat(1)});  // (q-1)^2
  CHECK(p == q_minus_one_power(2));
  CHECK(p.eval(5L) == QRat(16));
  CHECK(p.degree() == 2);
  QPolynomial q1({QRat(-1), QRat(1)});
  CHECK(q1 * q1 == p);
  CHECK((p - p).is_zero());
  CHECK((p + p).eval(3L) == QRat(8));
  CHECK(p.integer_coefficients());
  CHECK_FALSE(QPolynomial({QRat(1, 2)}).integer_coefficients());
}

TEST_CASE("exact division") {
  QPolynomial p = q_minus_one_power(3);
  QPolynomial q = p.divide_exact(q_minus_one_power(1));
  CHECK(q == q_minus_one_power(2));
  CHECK_THROWS_AS(QPolynomial({QRat(1), QRat(1)}).divide_exact(q_minus_one_power(1)),
                  IntegralityError);
}

TEST_CASE("printing") {
  CHECK(q_minus_one_power(2).to_string() == "q^2 - 2*q + 1");
  CHECK(QPolynomial().to_string() == "0");
  CHECK(QPolynomial::constant(QRat(7)).to_string() == "7");
  CHECK(QPolynomial::monomial(QRat(1), 3).to_string() == "q^3");
}
