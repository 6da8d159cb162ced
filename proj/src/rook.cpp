#include "qmat/rook.hpp"

#include <bit>

namespace qmat::rook {
namespace {

using u64 = std::uint64_t;

// non-attacking placements on `allowed` row masks, rows processed in order
QInt count_placements(const std::vector<u64>& allowed, int n_cols, int r) {
  QInt total = 0;
  const int m = int(allowed.size());
  // dfs over rows; prune when the remaining rows cannot host the missing rooks
  auto dfs = [&](auto&& self, int row, u64 used, int placed) -> void {
    if (placed == r) {
      total += 1;
      return;
    }
    if (row == m || placed + (m - row) < r) return;
    self(self, row + 1, used, placed);  // no rook in this row
    u64 avail = allowed[row] & ~used;
    while (avail) {
      u64 bit = avail & (~avail + 1);
      avail ^= bit;
      self(self, row + 1, used | bit, placed + 1);
    }
  };
  if (r < 0 || r > std::min(m, n_cols)) return 0;
  dfs(dfs, 0, 0, 0);
  return total;
}

}  // namespace

QInt rook_count_t1(const support::SupportSet& S, int r) {
  if (r < 0 || r > std::min(S.m(), S.n())) throw OutOfRange("rook_count_t1: rank out of range");
  std::vector<u64> allowed(S.m());
  for (int i = 1; i <= S.m(); ++i)
    for (int j = 1; j <= S.n(); ++j)
      if (!S.forbidden(i, j)) allowed[i - 1] |= u64(1) << (j - 1);
  return count_placements(allowed, S.n(), r);
}

QInt rook_count_t1_symmetric(const support::SupportSet& S, int r) {
  if (r % 2 != 0) throw OddRank("symmetric placements need even rank");
  if (S.m() != S.n()) throw OutOfRange("symmetric placements need a square grid");
  const int n = S.m(), s = r / 2;
  if (s < 0 || 2 * s > n) return 0;
  QInt total = 0;
  // choose s disjoint unordered pairs {i,j} with (i,j) and (j,i) free
  auto dfs = [&](auto&& self, int v, u64 used, int placed) -> void {
    if (placed == s) {
      total += 1;
      return;
    }
    if (v > n) return;
    if (used & (u64(1) << v)) {
      self(self, v + 1, used, placed);
      return;
    }
    self(self, v + 1, used, placed);  // leave v unmatched
    for (int w = v + 1; w <= n; ++w) {
      if (used & (u64(1) << w)) continue;
      if (S.forbidden(v, w) || S.forbidden(w, v)) continue;
      self(self, v + 1, used | (u64(1) << v) | (u64(1) << w), placed + 1);
    }
  };
  dfs(dfs, 1, 0, 0);
  return total;
}

QPolynomial q_rook_polynomial(const support::SupportSet& board_set, int r) {
  const int m = board_set.m(), n = board_set.n();
  if (r < 0 || r > std::min(m, n)) throw OutOfRange("q_rook_polynomial: rank out of range");
  std::vector<u64> board(m, 0);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      if (board_set.forbidden(i, j)) board[i - 1] |= u64(1) << (j - 1);

  std::vector<QRat> coeffs;
  std::vector<int> rook_col(m, -1);
  auto record = [&]() {
    // inv: board cells with no rook on them, no rook above in the column,
    // and no rook to their left in the row
    u64 col_covered = 0;
    int inv = 0;
    for (int i = 0; i < m; ++i) {
      u64 cells = board[i];
      if (rook_col[i] >= 0) {
        const u64 rbit = u64(1) << rook_col[i];
        cells &= ~(rbit | (~(rbit - 1) << 1));  // drop the rook cell and all to its right
        col_covered |= rbit;
      }
      cells &= ~col_covered;
      inv += std::popcount(cells);
    }
    if (std::size_t(inv) >= coeffs.size()) coeffs.resize(inv + 1);
    coeffs[inv] += 1;
  };
  auto dfs = [&](auto&& self, int row, u64 used, int placed) -> void {
    if (placed == r) {
      record();
      return;
    }
    if (row == m || placed + (m - row) < r) return;
    self(self, row + 1, used, placed);
    u64 avail = board[row] & ~used;
    while (avail) {
      u64 bit = avail & (~avail + 1);
      avail ^= bit;
      rook_col[row] = std::countr_zero(bit);
      self(self, row + 1, used | bit, placed + 1);
      rook_col[row] = -1;
    }
  };
  dfs(dfs, 0, 0, 0);
  return QPolynomial(std::move(coeffs));
}

HaglundResult haglund_check(const support::Partition& lambda, int n, int r, long q, int workers,
                            std::optional<QInt> budget) {
  support::SupportSet S = support::shape(support::ShapeKind::straight, lambda, n);
  oracle::CountQuery query(S, q);
  query.r = r;
  query.workers = workers;
  query.budget = std::move(budget);
  HaglundResult out;
  out.lhs = oracle::count_restricted(query).value;

  QPolynomial rook_poly = q_rook_polynomial(support::complement(S), r);
  QRat at_inv_q = rook_poly.eval(QRat(1, q));
  long expo = long(n) * n - lambda.sum() - r;
  out.rhs = pow_rat(QInt(q) - 1, r) * pow_rat(q, expo) * at_inv_q;
  out.equal = QRat(out.lhs) == out.rhs;
  return out;
}

QPolynomial haglund_rhs_polynomial(const support::Partition& lambda, int n, int r) {
  support::SupportSet S = support::shape(support::ShapeKind::straight, lambda, n);
  QPolynomial rook_poly = q_rook_polynomial(support::complement(S), r);
  if (rook_poly.is_zero()) return QPolynomial();
  // (q-1)^r q^{n^2-|lambda|-r} R_r(q^{-1}): coefficient of q^k reverses to
  // exponent n^2-|lambda|-r-k, always nonnegative since each rook cancels
  // at least its own cell
  const long shift = long(n) * n - lambda.sum() - r;
  std::vector<QRat> rev(shift + 1);
  for (long k = 0; k <= rook_poly.degree(); ++k) {
    if (shift - k < 0 && rook_poly.coeff(k) != 0)
      throw Error("haglund_rhs_polynomial: negative exponent");
    if (rook_poly.coeff(k) != 0) rev[shift - k] += rook_poly.coeff(k);
  }
  QPolynomial base(std::move(rev));
  return base * q_minus_one_power(r);
}

QAnalogueResult q_analogue_check(const support::SupportSet& S, int r, long q, QAnalogueClass cls,
                                 int workers, std::optional<QInt> budget) {
  QAnalogueResult out;
  oracle::CountQuery query(S, q);
  query.r = r;
  query.workers = workers;
  query.budget = std::move(budget);
  int expo;
  if (cls == QAnalogueClass::general) {
    out.t_q = oracle::count_restricted(query).value;
    out.t1 = rook_count_t1(S, r);
    expo = r;
  } else {
    if (r % 2 != 0) throw OddRank("symmetric q-analogue check needs even rank");
    if (q % 2 == 0) throw EvenCharacteristic("symmetric q-analogue check needs odd q");
    if (!S.contains_diagonal())
      throw OutOfRange("symmetric q-analogue check needs a diagonal-containing support set");
    query.cls = oracle::MatrixClass::symmetric;
    out.t_q = oracle::count_restricted(query).value;
    out.t1 = rook_count_t1_symmetric(S, r);
    expo = r / 2;
  }
  out.modulus = pow_int(QInt(q) - 1, expo + 1);
  auto mod = [&](const QInt& v) {
    QInt x = v % out.modulus;
    if (x < 0) x += out.modulus;
    return x;
  };
  out.lhs_mod = mod(out.t_q);
  out.rhs_mod = mod(out.t1 * pow_int(QInt(q) - 1, expo));
  out.holds = out.lhs_mod == out.rhs_mod;
  return out;
}

}  // namespace qmat::rook
