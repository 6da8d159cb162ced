#include "qmat/formulas.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qmat::formulas {
namespace {

// Memo tables are shared across calls; guarded for concurrent use.  Values
// are exact rationals keyed on the full argument tuple.
template <class Key>
class Memo {
 public:
  template <class F>
  QRat get(const Key& key, F&& compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    QRat value = compute();
    std::lock_guard<std::mutex> lock(mu_);
    return table_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<Key, QRat> table_;
};

QRat qr(const QInt& v) { return QRat(v); }

void need_odd(long q, const char* what) {
  if (q % 2 == 0) throw EvenCharacteristic(std::string(what) + " requires odd q");
}

int sign_of(Character c) { return c.sign; }

}  // namespace

QInt q_number(long n, long q) {
  if (n < 0) throw NegativeArgument("[n]_q needs n >= 0");
  QInt r = 0, p = 1;
  for (long i = 0; i < n; ++i) {
    r += p;
    p *= q;
  }
  return r;
}

QInt q_factorial(long n, long q) {
  if (n < 0) throw NegativeArgument("[n]_q! needs n >= 0");
  QInt r = 1;
  for (long i = 1; i <= n; ++i) r *= q_number(i, q);
  return r;
}

QInt q_double_factorial(long n, long q) {
  if (n < -1) throw NegativeArgument("[n]_q!! needs n >= -1");
  QInt r = 1;
  for (long i = n; i >= 1; i -= 2) r *= q_number(i, q);
  return r;
}

QInt q_basics(QBasicsKind kind, long n, long q) {
  switch (kind) {
    case QBasicsKind::number: return q_number(n, q);
    case QBasicsKind::factorial: return q_factorial(n, q);
    case QBasicsKind::double_factorial: return q_double_factorial(n, q);
  }
  throw OutOfRange("unknown q_basics kind");
}

namespace {

QRat f_rect_rec(int k, int n, long q) {
  static Memo<std::tuple<int, int, long>> memo;
  return memo.get({k, n, q}, [&]() -> QRat {
    if (k == 1) return qr(pow_int(q, n - 1) - 1);
    // f_{k,n} = q^{k-2}(q-1)(f_{k-1,n}[n-k+1]_q - f_{k-1,n-1})
    QRat prev_n = f_rect_rec(k - 1, n, q);
    QRat prev_n1 = f_rect_rec(k - 1, n - 1, q);
    return pow_rat(q, k - 2) * qr(q - 1) * (prev_n * qr(q_number(n - k + 1, q)) - prev_n1);
  });
}

}  // namespace

QInt f_rect(int k, int n, long q, Method method) {
  if (k < 1 || k > n) throw OutOfRange("f_rect: need 1 <= k <= n");
  if (method == Method::recursive) return require_integral(f_rect_rec(k, n, q), "f_rect");
  // q^C(k-1,2) (q-1)^k q^{-1} sum_i (-1)^i C(k,i) [n-i]_q!/[n-k]_q!
  QRat sum = 0;
  for (int i = 0; i <= k; ++i) {
    QInt ratio = 1;  // [n-i]_q!/[n-k]_q!
    for (long t = n - k + 1; t <= n - i; ++t) ratio *= q_number(t, q);
    QRat term = qr(binomial(k, i) * ratio);
    sum += (i % 2 ? -term : term);
  }
  QRat v = pow_rat(q, (long(k) - 1) * (long(k) - 2) / 2) * pow_rat(QInt(q) - 1, k) * sum / q;
  return require_integral(v, "f_rect closed form");
}

namespace {

QRat matz_rec(int n, int k, int r, long q) {
  static Memo<std::tuple<int, int, int, long>> memo;
  if (r < 0 || r > n) return 0;
  if (r == 0) return 1;
  return memo.get({n, k, r, q}, [&]() -> QRat {
    if (k == 0) {
      // q^C(r,2) (q-1)^r / [r]_q! * (prod_{i<r} [n-i]_q)^2
      QInt prod = 1;
      for (int i = 0; i < r; ++i) prod *= q_number(n - i, q);
      QRat v = qr(pow_int(q, long(r) * (r - 1) / 2)) * pow_rat(QInt(q) - 1, r) * qr(prod * prod);
      return v / qr(q_factorial(r, q));
    }
    QRat a = matz_rec(n, k - 1, r, q) / q;
    QRat b = (pow_rat(q, r) - pow_rat(q, r - 1)) * matz_rec(n - 1, k - 1, r, q);
    QRat c = (pow_rat(q, r - 1) - pow_rat(q, r - 2)) * matz_rec(n - 1, k - 1, r - 1, q);
    return a + b - c;
  });
}

}  // namespace

QInt matz_count(int n, int k, int r, long q) {
  if (n < 0 || k < 0 || k > n || r < 0 || r > n) throw OutOfRange("matz_count: bad arguments");
  return require_integral(matz_rec(n, k, r, q), "matz_count");
}

namespace {

QRat g_rec(int n, int r, long q) {
  static Memo<std::tuple<int, int, long>> memo;
  if (r < 0 || r > n) return 0;
  if (r == 0) return 1;
  if (n == 1) return 0;  // g(1,1) = 0
  return memo.get({n, r, q}, [&]() -> QRat {
    QRat a = (pow_rat(q, n - 1) - pow_rat(q, r - 2));
    a = a * a * g_rec(n - 1, r - 2, q);
    QRat b = (pow_rat(q, 2 * r - 1) + pow_rat(q, r) - pow_rat(q, r - 1)) * g_rec(n - 1, r, q);
    QRat c = (QRat(2) * pow_rat(q, n + r - 2) - pow_rat(q, 2 * r - 2) - pow_rat(q, 2 * r - 3) -
              pow_rat(q, r - 1) + pow_rat(q, r - 2)) *
             g_rec(n - 1, r - 1, q);
    return a + b + c;
  });
}

QRat g_closed(int n, int r, long q) {
  // (q-1)^r sum_{k=0}^{n-r} sum_{i=0}^{n} (-1)^{k+r+n+i}
  //   q^{C(n,2)+C(k,2)-nk-r} C(n,i) [n+k-i]_q! / (([k]_q!)^2 [n-r-k]_q!)
  QRat total = 0;
  for (int k = 0; k <= n - r; ++k) {
    QRat kfac2 = qr(q_factorial(k, q));
    kfac2 *= kfac2;
    for (int i = 0; i <= n; ++i) {
      long expo = long(n) * (n - 1) / 2 + long(k) * (k - 1) / 2 - long(n) * k - r;
      QRat term = pow_rat(q, expo) * qr(binomial(n, i) * q_factorial(n + k - i, q));
      term /= kfac2 * qr(q_factorial(n - r - k, q));
      if ((k + r + n + i) % 2) term = -term;
      total += term;
    }
  }
  return total * pow_rat(QInt(q) - 1, r);
}

}  // namespace

QInt g_zero_diag(int n, int r, long q, Method method) {
  if (n < 1 || r < 0 || r > n) throw OutOfRange("g_zero_diag: need 0 <= r <= n");
  if (method == Method::recursive) return require_integral(g_rec(n, r, q), "g_zero_diag");
  return require_integral(g_closed(n, r, q), "g_zero_diag closed form");
}

QInt sym_invertible(int n, long q) {
  if (n < 0) throw OutOfRange("sym_invertible: need n >= 0");
  // q^C(n+1,2) prod_{j=1}^{ceil(n/2)} (1 - q^{1-2j})
  QRat v = qr(pow_int(q, long(n) * (n + 1) / 2));
  for (int j = 1; j <= (n + 1) / 2; ++j) v *= QRat(1) - pow_rat(q, 1 - 2 * j);
  return require_integral(v, "sym_invertible");
}

QInt sym_rank(int n, int r, long q) {
  if (n < 0 || r < 0) throw OutOfRange("sym_rank: bad arguments");
  if (r > n) return 0;
  QRat v = 1;
  for (int i = 1; i <= r / 2; ++i) v *= pow_rat(q, 2 * i) / (pow_rat(q, 2 * i) - 1);
  for (int i = 0; i < r; ++i) v *= qr(pow_int(q, n - i) - 1);
  return require_integral(v, "sym_rank");
}

QInt sym_rank_char(int n, int r, Character psi, long q) {
  need_odd(q, "sym_rank_char");
  if (r > n) return 0;
  QInt total = sym_rank(n, r, q);
  QRat plus;
  if (r % 2 == 1) {
    plus = qr(total) / 2;
  } else {
    int s = r / 2;
    QRat factor;
    if (gf::psi_minus_one(q) == gf::kPlus)
      factor = (pow_rat(q, s) + 1) / (2 * pow_rat(q, s));
    else
      factor = (pow_rat(q, s) + QRat(s % 2 ? -1 : 1)) / (2 * pow_rat(q, s));
    plus = factor * qr(total);
  }
  QInt p = require_integral(plus, "sym_rank_char");
  return psi == gf::kPlus ? p : total - p;
}

QInt sym0_even_q(int n, int r, long q) {
  if (q % 2 != 0) throw OddCharacteristic("sym0_even_q requires q a power of 2");
  if (n < 0 || r < 0) throw OutOfRange("sym0_even_q: bad arguments");
  if (r % 2 == 1 || r > n) return 0;
  int s = r / 2;
  QRat v = 1;
  for (int i = 1; i <= s; ++i) v *= pow_rat(q, 2 * i - 2) / (pow_rat(q, 2 * i) - 1);
  for (int i = 0; i <= 2 * s - 1; ++i) v *= qr(pow_int(q, n - i) - 1);
  return require_integral(v, "sym0_even_q");
}

namespace {

QRat sk_rec(int n, int r, long q) {
  static Memo<std::tuple<int, int, long>> memo;
  if (r % 2 == 1 || r < 0 || r > n) return 0;
  if (r == 0) return 1;
  return memo.get({n, r, q}, [&]() -> QRat {
    // sk(n,r) = q^r sk(n-1,r) + (q^{n-1} - q^{r-2}) sk(n-1,r-2)
    return pow_rat(q, r) * sk_rec(n - 1, r, q) +
           (pow_rat(q, n - 1) - pow_rat(q, r - 2)) * sk_rec(n - 1, r - 2, q);
  });
}

}  // namespace

QInt sk_count(int n, int r, long q, Method method) {
  if (n < 0 || r < 0 || r > n) throw OutOfRange("sk_count: need 0 <= r <= n");
  if (r % 2 == 1) return 0;
  if (method == Method::recursive) return require_integral(sk_rec(n, r, q), "sk_count");
  // q^{r(r-2)/4} (q-1)^{r/2} [n]_q!/([n-r]_q! [r]_q!!); the (q-1)-power sign
  // normalization is fixed by the recursion and the oracle.
  QRat v = pow_rat(q, long(r) * (r - 2) / 4) * pow_rat(QInt(q) - 1, r / 2);
  v *= qr(q_factorial(n, q));
  v /= qr(q_factorial(n - r, q) * q_double_factorial(r, q));
  return require_integral(v, "sk_count closed form");
}

QInt sq_table(int m, long q, Character psi) {
  need_odd(q, "sq_table");
  if (m < 1) throw OutOfRange("sq_table: need m >= 1");
  if (m % 2 == 1) return pow_int(q, m - 1);
  // sign governed by whether (-1)^{m/2} is a square
  int sgn = sign_of(gf::psi_minus_one_pow(q, m / 2)) * sign_of(psi);
  QInt bump = pow_int(q, m / 2) - pow_int(q, m / 2 - 1);
  return pow_int(q, m - 1) + sgn * bump;
}

QInt bilinear_z(int n, long q) {
  if (n < 1) throw OutOfRange("bilinear_z: need N >= 1");
  return pow_int(q, n - 1) * (pow_int(q, n) + q - 1);
}

QInt bilinear_y(int n, long q) {
  if (n < 1) throw OutOfRange("bilinear_y: need N >= 1");
  return pow_int(q, n - 1) * (pow_int(q, n) - 1);
}

namespace {

// sym_0^psi(n,k,r): the two-branch character recursion.  Every node value is
// a count, so integrality is asserted on each memoized entry.
QRat sym0_rec(int n, int k, int r, int psi, long q) {
  static Memo<std::tuple<int, int, int, int, long>> memo;
  if (r < 0 || r > n) return 0;
  if (r == 0) return psi > 0 ? 1 : 0;  // psi(0) = +
  if (k == 0) return qr(sym_rank_char(n, r, Character{psi}, q));
  return memo.get({n, k, r, psi, q}, [&]() -> QRat {
    QRat v;
    if (r == 1) {
      // rank one with k >= 1 forced zeroes: (q^{n-k} - 1)/2 per character
      v = (qr(pow_int(q, n - k)) - 1) / 2;
    } else {
      QRat v0 = sym0_rec(n, k - 1, r, psi, q) / q;
      const int rr = r - 1;  // rank of the trailing block in the gluing step
      if (rr % 2 == 1) {
        int t = sign_of(gf::psi_minus_one_pow(q, (rr + 1) / 2));
        QRat half = sym0_rec(n - 1, k - 1, rr, +1, q) + sym0_rec(n - 1, k - 1, rr, -1, q);
        half /= 2;
        QRat corr = (half + sym0_rec(n - 1, k - 1, r, psi, q)) *
                    (pow_rat(q, (rr + 1) / 2) - pow_rat(q, (rr - 1) / 2));
        v = v0 + QRat(t * psi) * corr;
      } else {
        int t = sign_of(gf::psi_minus_one_pow(q, rr / 2));
        QRat diff = sym0_rec(n - 1, k - 1, rr, +1, q) - sym0_rec(n - 1, k - 1, rr, -1, q);
        QRat corr = diff * (pow_rat(q, rr / 2) - pow_rat(q, rr / 2 - 1)) / 2;
        v = v0 - QRat(t) * corr;
      }
    }
    require_integral(v, "sym0_char_recursive");
    return v;
  });
}

// symz^psi(n,k): full-rank specialization with its own two-branch recursion.
QRat symz_rec(int n, int k, int psi, long q) {
  static Memo<std::tuple<int, int, int, long>> memo;
  if (n == 0) return psi > 0 ? 1 : 0;  // empty matrix
  if (k == 0) return qr(sym_rank_char(n, n, Character{psi}, q));
  return memo.get({n, k, psi, q}, [&]() -> QRat {
    QRat v0 = symz_rec(n, k - 1, psi, q) / q;
    QRat v;
    const int m = n - 1;  // size before gluing the new row/column
    if (m % 2 == 1) {     // n even
      int t = sign_of(gf::psi_minus_one_pow(q, (m + 1) / 2));
      QRat tot = symz_rec(m, k - 1, +1, q) + symz_rec(m, k - 1, -1, q);
      v = v0 + QRat(t * psi) / 2 * tot * (pow_rat(q, n / 2) - pow_rat(q, n / 2 - 1));
    } else {  // n odd
      int t = sign_of(gf::psi_minus_one_pow(q, m / 2));
      QRat diff = symz_rec(m, k - 1, +1, q) - symz_rec(m, k - 1, -1, q);
      v = v0 - QRat(t) / 2 * diff * (pow_rat(q, (n - 1) / 2) - pow_rat(q, (n - 3) / 2));
    }
    require_integral(v, "symz recursion");
    return v;
  });
}

QRat symz_total_closed(int n, int k, long q) {
  if (n % 2 == 0) return qr(sym_invertible(n, q)) / pow_rat(q, k);
  const int m = (n - 1) / 2;
  QRat sum = 0;
  for (int j = 0; j <= m + 1; ++j) {
    QInt binoms = binomial(k, 2 * j - 1) + (QInt(q) - 1) * binomial(k, 2 * j);
    if (binoms == 0) continue;
    QRat term = pow_rat(QInt(q) - 1, m + j) * qr(q_double_factorial(2 * m - 2 * j + 1, q) * binoms);
    sum += (j % 2 ? -term : term);
  }
  return pow_rat(q, long(m) * m + m - k) * sum;
}

QRat symz_plus_closed(int n, int k, long q) {
  if (n % 2 == 1) return symz_total_closed(n, k, q) / 2;
  const int m = n / 2;
  const int sgn = sign_of(gf::psi_minus_one_pow(q, m));
  QRat sum = 0;
  for (int j = 0; j <= m; ++j) {
    QInt binoms = binomial(k, 2 * j) + (QInt(q) - 1) * binomial(k, 2 * j + 1);
    if (binoms == 0) continue;
    QRat term = pow_rat(QInt(q) - 1, m + j) * qr(q_double_factorial(2 * m - 2 * j - 1, q) * binoms);
    sum += (j % 2 ? -term : term);
  }
  return qr(sym_invertible(n, q)) / (2 * pow_rat(q, k)) +
         QRat(sgn) * pow_rat(q, long(m) * m - k) / 2 * sum;
}

}  // namespace

QInt sym0_char_recursive(int n, int k, int r, Character psi, long q) {
  need_odd(q, "sym0_char_recursive");
  if (n < 0 || k < 0 || k > n || r < 0 || r > n)
    throw OutOfRange("sym0_char_recursive: bad arguments");
  return require_integral(sym0_rec(n, k, r, sign_of(psi), q), "sym0_char_recursive");
}

QInt symz_total(int n, int k, long q, Method method) {
  need_odd(q, "symz");
  if (n < 0 || k < 0 || k > n) throw OutOfRange("symz: need 0 <= k <= n");
  if (method == Method::recursive)
    return require_integral(symz_rec(n, k, +1, q) + symz_rec(n, k, -1, q), "symz_total");
  return require_integral(symz_total_closed(n, k, q), "symz_total closed form");
}

QInt symz_char(int n, int k, Character psi, long q, Method method) {
  need_odd(q, "symz");
  if (n < 0 || k < 0 || k > n) throw OutOfRange("symz: need 0 <= k <= n");
  if (method == Method::recursive)
    return require_integral(symz_rec(n, k, sign_of(psi), q), "symz_char");
  QRat plus = symz_plus_closed(n, k, q);
  if (psi == gf::kPlus) return require_integral(plus, "symz_char closed form");
  return require_integral(symz_total_closed(n, k, q) - plus, "symz_char closed form");
}

QInt derangement(int n) {
  if (n < 0) throw OutOfRange("derangement: need n >= 0");
  QInt d = 1;  // d_0
  for (int i = 1; i <= n; ++i) d = d * i + (i % 2 ? -1 : 1);
  return d;
}

QInt partial_involution(int n, int r) {
  if (r % 2 != 0) throw OddRank("partial_involution: rank must be even");
  if (n < 0 || r < 0 || r > n) throw OutOfRange("partial_involution: need 0 <= r <= n");
  QInt dbl = 1;
  for (int i = r - 1; i >= 2; i -= 2) dbl *= i;
  return binomial(n, r) * dbl;
}

}  // namespace qmat::formulas
