#include "qmat/gf.hpp"

#include <algorithm>

namespace qmat::gf {
namespace {

constexpr std::uint32_t kMaxQ = 1u << 16;
constexpr std::uint32_t kTableLimit = 256;

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  a = trim(std::move(a));
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    // m is monic, so subtract lead * x^(deg a - dm) * m
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint32_t t = (lead * m[i]) % p;
      a[shift + i] = (a[shift + i] + p - t) % p;
    }
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

Poly decode(std::uint64_t v, std::uint32_t p) {
  Poly a;
  while (v) {
    a.push_back(std::uint32_t(v % p));
    v /= p;
  }
  return a;
}

std::uint64_t encode(const Poly& a, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

// True when f (monic, degree e >= 2) has no monic divisor of degree 1..e/2.
bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t e = f.size() - 1;
  for (std::size_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = decode(low, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(std::uint32_t q) : q_(q) {
  if (q < 2) throw OutOfRange("field order must be at least 2");
  if (q > kMaxQ) throw OutOfRange("field order exceeds 2^16");
  std::uint32_t n = q;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p_ = d;
      break;
    }
  }
  if (p_ == 0) p_ = n;  // q itself prime
  e_ = 0;
  while (n % p_ == 0) {
    n /= p_;
    ++e_;
  }
  if (n != 1)
    throw NotAPrimePower(std::to_string(q) + " is not a prime power");

  if (e_ > 1) {
    // Lexicographically least monic irreducible of degree e: smallest encoded
    // lower part wins.  Deterministic across runs and platforms.
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e_; ++i) count *= p_;
    for (std::uint64_t low = 0;; ++low) {
      if (low >= count) throw Error("no irreducible polynomial found");  // unreachable
      Poly f = decode(low, p_);
      f.resize(e_ + 1, 0);
      f[e_] = 1;
      if (irreducible(f, p_)) {
        modulus_.assign(f.begin(), f.end());
        break;
      }
    }
  }

  if (q_ <= kTableLimit) {
    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    neg_.resize(q_);
    inv_.resize(q_);
    for (std::uint32_t x = 0; x < q_; ++x) {
      neg_[x] = neg_slow(Elem(x));
      for (std::uint32_t y = 0; y < q_; ++y) {
        add_[std::size_t(x) * q_ + y] = add_slow(Elem(x), Elem(y));
        mul_[std::size_t(x) * q_ + y] = mul_slow(Elem(x), Elem(y));
      }
    }
    inv_[0] = 0;
    for (std::uint32_t x = 1; x < q_; ++x) inv_[x] = inv_slow(Elem(x));
  }
}

Elem Field::add_slow(Elem x, Elem y) const {
  if (e_ == 1) return Elem((std::uint32_t(x) + y) % p_);
  std::uint32_t r = 0, mul = 1;
  std::uint32_t a = x, b = y;
  for (unsigned i = 0; i < e_; ++i) {
    r += ((a % p_ + b % p_) % p_) * mul;
    a /= p_;
    b /= p_;
    mul *= p_;
  }
  return Elem(r);
}

Elem Field::neg_slow(Elem x) const {
  if (e_ == 1) return Elem((p_ - x) % p_);
  std::uint32_t r = 0, mul = 1, a = x;
  for (unsigned i = 0; i < e_; ++i) {
    r += ((p_ - a % p_) % p_) * mul;
    a /= p_;
    mul *= p_;
  }
  return Elem(r);
}

Elem Field::mul_slow(Elem x, Elem y) const {
  if (e_ == 1) return Elem((std::uint64_t(x) * y) % p_);
  Poly m(modulus_.begin(), modulus_.end());
  Poly r = poly_mod(poly_mul(decode(x, p_), decode(y, p_), p_), m, p_);
  return Elem(encode(r, p_));
}

Elem Field::inv_slow(Elem x) const {
  // x^(q-2); fine off the hot path.
  Elem r = 1, b = x;
  for (std::uint64_t k = q_ - 2; k; k >>= 1) {
    if (k & 1) r = mul_slow(r, b);
    b = mul_slow(b, b);
  }
  return r;
}

Elem Field::pow(Elem x, unsigned long long k) const {
  Elem r = 1, b = x;
  for (; k; k >>= 1) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
  }
  return r;
}

Character Field::legendre(Elem x) const {
  if (!odd_characteristic())
    throw EvenCharacteristic("legendre symbol undefined in characteristic 2");
  check(x);
  if (x == 0) throw ZeroArgument("legendre symbol of 0");
  return pow(x, (q_ - 1) / 2) == 1 ? kPlus : kMinus;
}

Elem Field::least_nonsquare() const {
  if (!odd_characteristic()) throw EvenCharacteristic("no nonsquares in characteristic 2");
  for (std::uint32_t x = 1; x < q_; ++x)
    if (legendre(Elem(x)) == kMinus) return Elem(x);
  throw Error("no nonsquare found");  // unreachable for odd q
}

FieldPtr make_field(std::uint32_t q) { return std::make_shared<const Field>(q); }

}  // namespace qmat::gf
