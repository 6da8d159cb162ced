#include "qmat/qpoly.hpp"

#include <sstream>

namespace qmat {

bool QPolynomial::integer_coefficients() const {
  for (const auto& c : c_)
    if (boost::multiprecision::denominator(c) != 1) return false;
  return true;
}

QRat QPolynomial::eval(const QRat& x) const {
  QRat r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
  return r;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return QPolynomial();
  std::vector<QRat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPolynomial(std::move(c));
}

QPolynomial QPolynomial::operator*(const QRat& s) const {
  std::vector<QRat> c = c_;
  for (auto& v : c) v *= s;
  return QPolynomial(std::move(c));
}

QPolynomial QPolynomial::divide_exact(const QPolynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return QPolynomial();
  std::vector<QRat> rem = c_;
  if (long(rem.size()) < long(divisor.c_.size()))
    throw IntegralityError("polynomial division is not exact");
  std::vector<QRat> quot(rem.size() - divisor.c_.size() + 1);
  const QRat lead = divisor.c_.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    QRat f = rem[k + divisor.c_.size() - 1] / lead;
    quot[k] = f;
    if (f != 0)
      for (std::size_t i = 0; i < divisor.c_.size(); ++i) rem[k + i] -= f * divisor.c_[i];
  }
  for (const auto& r : rem)
    if (r != 0) throw IntegralityError("polynomial division is not exact");
  return QPolynomial(std::move(quot));
}

std::string QPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    QRat v = c_[k];
    if (first) {
      if (v < 0) {
        os << '-';
        v = -v;
      }
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    }
    const bool unit = (v == 1) && k > 0;
    if (!unit) os << v.str();
    if (k > 0) {
      if (!unit) os << '*';
      os << 'q';
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

QPolynomial q_minus_one_power(int n) {
  QPolynomial r = QPolynomial::constant(1);
  QPolynomial base({QRat(-1), QRat(1)});
  for (int i = 0; i < n; ++i) r = r * base;
  return r;
}

}  // namespace qmat
