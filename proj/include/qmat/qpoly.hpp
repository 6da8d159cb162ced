#ifndef QMAT_QPOLY_HPP
#define QMAT_QPOLY_HPP

#include <string>
#include <vector>

#include "qmat/bigint.hpp"

namespace qmat {

// Polynomial in the symbol q with exact rational coefficients; evaluation at
// integers and rationals is exact.  Trailing zero coefficients are trimmed,
// the zero polynomial has degree -1.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<QRat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPolynomial constant(const QRat& v) { return QPolynomial({v}); }
  static QPolynomial monomial(const QRat& coeff, std::size_t degree) {
    std::vector<QRat> c(degree + 1);
    c[degree] = coeff;
    return QPolynomial(std::move(c));
  }

  long degree() const { return long(c_.size()) - 1; }
  QRat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : QRat(0); }
  const std::vector<QRat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool integer_coefficients() const;

  QRat eval(const QRat& x) const;
  QRat eval(long x) const { return eval(QRat(x)); }

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  QPolynomial operator*(const QRat& s) const;

  // Exact division; throws IntegralityError when the remainder is nonzero.
  QPolynomial divide_exact(const QPolynomial& divisor) const;

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }
  std::string to_string() const;  // e.g. "q^2 - 2*q + 1"

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<QRat> c_;
};

// (q - 1)^n as a polynomial.
QPolynomial q_minus_one_power(int n);

}  // namespace qmat

#endif
