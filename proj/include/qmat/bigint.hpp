#ifndef QMAT_BIGINT_HPP
#define QMAT_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "qmat/errors.hpp"

namespace qmat {

// Exact arbitrary-precision integers and rationals.  Counts are QInt; the
// recursions carry 1/q and 1/2 factors, so intermediates are QRat and the
// final values are asserted integral.
using QInt = boost::multiprecision::cpp_int;
using QRat = boost::multiprecision::cpp_rational;

inline QInt pow_int(const QInt& base, long e) {
  if (e < 0) throw NegativeArgument("pow_int: negative exponent");
  QInt r = 1, b = base;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    if (k > 1) b *= b;
  }
  return r;
}

// q^e for possibly negative e, as an exact rational.
inline QRat pow_rat(const QInt& base, long e) {
  if (e >= 0) return QRat(pow_int(base, e));
  if (base == 0) throw DivisionByZero("pow_rat: 0 to a negative power");
  return QRat(1, pow_int(base, -e));
}

inline QInt factorial(long n) {
  if (n < 0) throw NegativeArgument("factorial of a negative number");
  QInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline QInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  QInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);  // exact: r is always a binomial prefix
  }
  return r;
}

inline QInt require_integral(const QRat& x, const char* what) {
  if (boost::multiprecision::denominator(x) != 1)
    throw IntegralityError(std::string(what) + ": value " + x.str() + " is not an integer");
  return boost::multiprecision::numerator(x);
}

}  // namespace qmat

#endif
