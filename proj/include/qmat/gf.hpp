#ifndef QMAT_GF_HPP
#define QMAT_GF_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "qmat/errors.hpp"

namespace qmat::gf {

using Elem = std::uint16_t;  // elements of GF(q) encoded as 0..q-1

// Quadratic character value, the group {+,-} under multiplication.
struct Character {
  int sign = +1;  // +1 or -1

  char symbol() const { return sign > 0 ? '+' : '-'; }
  friend Character operator*(Character a, Character b) { return Character{a.sign * b.sign}; }
  friend Character operator-(Character a) { return Character{-a.sign}; }
  friend bool operator==(Character a, Character b) { return a.sign == b.sign; }
  friend bool operator!=(Character a, Character b) { return a.sign != b.sign; }
};

inline constexpr Character kPlus{+1};
inline constexpr Character kMinus{-1};

// GF(q) for a prime power q = p^e, q <= 2^16.  Elements are integers 0..q-1;
// for e > 1 the base-p digits of the integer are the polynomial coefficients
// (digit i = coefficient of x^i) and arithmetic is modulo the lexicographically
// least monic irreducible polynomial of degree e over GF(p).  Immutable after
// construction; safe to share across threads.
class Field {
 public:
  explicit Field(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  bool odd_characteristic() const { return p_ != 2; }
  // Coefficients c[0..e] of the modulus, c[e] = 1; empty for e = 1.
  const std::vector<Elem>& modulus() const { return modulus_; }

  Elem add(Elem x, Elem y) const {
    check(x), check(y);
    return has_tables() ? add_[std::size_t(x) * q_ + y] : add_slow(x, y);
  }
  Elem mul(Elem x, Elem y) const {
    check(x), check(y);
    return has_tables() ? mul_[std::size_t(x) * q_ + y] : mul_slow(x, y);
  }
  Elem neg(Elem x) const {
    check(x);
    return has_tables() ? neg_[x] : neg_slow(x);
  }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem inv(Elem x) const {
    check(x);
    if (x == 0) throw DivisionByZero("inv(0) in GF(" + std::to_string(q_) + ")");
    return has_tables() ? inv_[x] : inv_slow(x);
  }
  Elem pow(Elem x, unsigned long long k) const;

  // + iff x is a nonzero square; requires odd characteristic and x != 0.
  Character legendre(Elem x) const;

  // The least element that is not a square, for odd q.
  Elem least_nonsquare() const;

  // Raw table access for enumeration inner loops (valid only when q <= 256).
  bool has_tables() const { return !mul_.empty(); }
  const Elem* add_table() const { return add_.data(); }
  const Elem* mul_table() const { return mul_.data(); }
  const Elem* neg_table() const { return neg_.data(); }
  const Elem* inv_table() const { return inv_.data(); }

 private:
  void check(Elem x) const {
    if (x >= q_) throw OutOfRange("element " + std::to_string(x) + " outside GF(" + std::to_string(q_) + ")");
  }
  Elem add_slow(Elem x, Elem y) const;
  Elem mul_slow(Elem x, Elem y) const;
  Elem neg_slow(Elem x) const;
  Elem inv_slow(Elem x) const;

  std::uint32_t q_ = 0, p_ = 0;
  unsigned e_ = 1;
  std::vector<Elem> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Returns GF(q); throws NotAPrimePower if q has two distinct prime factors.
FieldPtr make_field(std::uint32_t q);

// Legendre symbol of the integer -1 in GF(q), q odd: + iff q = 1 (mod 4).
inline Character psi_minus_one(long q) {
  if (q % 2 == 0) throw EvenCharacteristic("psi(-1) needs odd q");
  return q % 4 == 1 ? kPlus : kMinus;
}

// psi((-1)^j) in GF(q).
inline Character psi_minus_one_pow(long q, long j) {
  Character c = psi_minus_one(q);
  return (j % 2 == 0) ? kPlus : c;
}

}  // namespace qmat::gf

#endif
