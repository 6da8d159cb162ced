#include "qmat/matq.hpp"

#include <cstdint>
#include <sstream>

namespace qmat::matq {

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < n(); ++i) os << (i ? " " : "") << images[i];
  os << ')';
  return os.str();
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool Matrix::is_skew() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r) {
    if ((*this)(r, r) != 0) return false;
    for (int c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != field_->neg((*this)(c, r))) return false;
  }
  return true;
}

bool Matrix::is_zero() const {
  for (auto v : a_)
    if (v) return false;
  return true;
}

Matrix Matrix::identity(gf::FieldPtr field, int n) {
  Matrix m(std::move(field), n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::parse(const std::string& text, gf::FieldPtr field) {
  std::vector<std::vector<gf::Elem>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<gf::Elem> entries;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ',')) {
      std::size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size() || v < 0) throw Error("bad matrix entry '" + tok + "'");
      entries.push_back(gf::Elem(v));
    }
    if (entries.empty()) throw Error("empty matrix row");
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw Error("empty matrix literal");
  Matrix m(std::move(field), int(rows.size()), int(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw Error("ragged matrix literal");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(int(r), int(c), rows[r][c]);
  }
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    if (r) os << ';';
    for (int c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
  }
  return os.str();
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows()) throw OutOfRange("matrix product dimension mismatch");
  const gf::Field& f = x.field();
  Matrix z(x.field_ptr(), x.rows(), y.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < y.cols(); ++c) {
      gf::Elem s = 0;
      for (int k = 0; k < x.cols(); ++k) s = f.add(s, f.mul(x(r, k), y(k, c)));
      z.set(r, c, s);
    }
  return z;
}

namespace {

int rank_gf2(const Matrix& a) {
  // rows packed into words; elimination is word-parallel
  std::vector<std::uint64_t> rows(a.rows(), 0);
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a(r, c)) rows[r] |= (std::uint64_t(1) << c);
  int rk = 0;
  for (int c = 0; c < a.cols() && rk < a.rows(); ++c) {
    const std::uint64_t bit = std::uint64_t(1) << c;
    int pivot = -1;
    for (int r = rk; r < a.rows(); ++r)
      if (rows[r] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rk], rows[pivot]);
    for (int r = 0; r < a.rows(); ++r)
      if (r != rk && (rows[r] & bit)) rows[r] ^= rows[rk];
    ++rk;
  }
  return rk;
}

}  // namespace

int rank(const Matrix& a) {
  const gf::Field& f = a.field();
  if (f.q() == 2 && a.cols() <= 64) return rank_gf2(a);
  std::vector<gf::Elem> w(std::size_t(a.rows()) * a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) w[std::size_t(r) * a.cols() + c] = a(r, c);
  auto at = [&](int r, int c) -> gf::Elem& { return w[std::size_t(r) * a.cols() + c]; };
  int rk = 0;
  for (int c = 0; c < a.cols() && rk < a.rows(); ++c) {
    int pivot = -1;
    for (int r = rk; r < a.rows(); ++r)
      if (at(r, c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int cc = 0; cc < a.cols(); ++cc) std::swap(at(rk, cc), at(pivot, cc));
    gf::Elem ipiv = f.inv(at(rk, c));
    for (int r = rk + 1; r < a.rows(); ++r) {
      gf::Elem factor = f.mul(at(r, c), ipiv);
      if (!factor) continue;
      for (int cc = c; cc < a.cols(); ++cc)
        at(r, cc) = f.sub(at(r, cc), f.mul(factor, at(rk, cc)));
    }
    ++rk;
  }
  return rk;
}

CongruenceDiagonalization congruence_diagonalize(const Matrix& a) {
  const gf::Field& f = a.field();
  if (!f.odd_characteristic())
    throw EvenCharacteristic("congruence diagonalization requires odd characteristic");
  if (!a.is_symmetric()) throw NotSymmetric("congruence diagonalization requires a symmetric matrix");
  const int n = a.rows();
  Matrix d = a;
  Matrix m = Matrix::identity(a.field_ptr(), n);

  // Track the inverse of the accumulated row operations on the columns of m,
  // maintaining a = m * d * m^T throughout.
  auto swap_rc = [&](int i, int j) {
    for (int c = 0; c < n; ++c) {
      gf::Elem t = d(i, c);
      d.set(i, c, d(j, c));
      d.set(j, c, t);
    }
    for (int r = 0; r < n; ++r) {
      gf::Elem t = d(r, i);
      d.set(r, i, d(r, j));
      d.set(r, j, t);
    }
    for (int r = 0; r < n; ++r) {
      gf::Elem t = m(r, i);
      m.set(r, i, m(r, j));
      m.set(r, j, t);
    }
  };
  // d: row i += c*row j, col i += c*col j;  m: col j -= c*col i
  auto add_rc = [&](int i, int j, gf::Elem c) {
    for (int k = 0; k < n; ++k) d.set(i, k, f.add(d(i, k), f.mul(c, d(j, k))));
    for (int k = 0; k < n; ++k) d.set(k, i, f.add(d(k, i), f.mul(c, d(k, j))));
    for (int k = 0; k < n; ++k) m.set(k, j, f.sub(m(k, j), f.mul(c, m(k, i))));
  };

  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int t = k; t < n; ++t)
      if (d(t, t)) {
        piv = t;
        break;
      }
    if (piv < 0) {
      // no diagonal pivot: create one from the smallest nonzero off-diagonal
      int bi = -1, bj = -1;
      for (int i = k; i < n && bi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (d(i, j)) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;  // trailing block is zero
      add_rc(bi, bj, 1);  // now d(bi,bi) = 2*a_ij != 0 in odd characteristic
      piv = bi;
    }
    if (piv != k) swap_rc(k, piv);
    gf::Elem ipiv = f.inv(d(k, k));
    for (int r = k + 1; r < n; ++r) {
      if (!d(r, k)) continue;
      gf::Elem c = f.neg(f.mul(d(r, k), ipiv));
      add_rc(r, k, c);
    }
  }
  return {std::move(d), std::move(m)};
}

gf::Character quadratic_character(const Matrix& a) {
  const gf::Field& f = a.field();
  auto diag = congruence_diagonalize(a);
  gf::Elem prod = 1;
  bool any = false;
  for (int i = 0; i < a.rows(); ++i)
    if (diag.d(i, i)) {
      prod = f.mul(prod, diag.d(i, i));
      any = true;
    }
  if (!any) return gf::kPlus;  // psi(0) = + by convention
  return f.legendre(prod);
}

Permutation bruhat_permutation(const Matrix& a) {
  if (a.rows() != a.cols()) throw OutOfRange("bruhat decomposition needs a square matrix");
  const int n = a.rows();
  if (rank(a) != n) throw Singular("bruhat decomposition needs an invertible matrix");
  const gf::Field& f = a.field();

  // r[i][j] = rank of the submatrix on rows 1..i, columns j..n (1-indexed),
  // invariant under left/right multiplication by lower-triangular matrices.
  std::vector<std::vector<int>> rk(n + 2, std::vector<int>(n + 2, 0));
  std::vector<gf::Elem> basis;  // echelon rows over columns j-1..n-1
  for (int j = 1; j <= n; ++j) {
    const int width = n - j + 1;
    basis.assign(0, 0);
    std::vector<std::vector<gf::Elem>> rows;
    std::vector<int> pivots;
    for (int i = 1; i <= n; ++i) {
      std::vector<gf::Elem> v(width);
      for (int c = 0; c < width; ++c) v[c] = a(i - 1, j - 1 + c);
      for (std::size_t b = 0; b < rows.size(); ++b) {
        gf::Elem coef = v[pivots[b]];
        if (!coef) continue;
        for (int c = 0; c < width; ++c) v[c] = f.sub(v[c], f.mul(coef, rows[b][c]));
      }
      int p = -1;
      for (int c = 0; c < width; ++c)
        if (v[c]) {
          p = c;
          break;
        }
      if (p >= 0) {
        gf::Elem ip = f.inv(v[p]);
        for (int c = 0; c < width; ++c) v[c] = f.mul(v[c], ip);
        rows.push_back(std::move(v));
        pivots.push_back(p);
      }
      rk[i][j] = int(rows.size());
    }
  }

  Permutation w;
  w.images.resize(n, 0);
  std::vector<bool> used(n + 1, false);
  for (int j = 1; j <= n; ++j) {
    int found = 0;
    for (int i = 1; i <= n; ++i) {
      int delta = rk[i][j] - rk[i - 1][j] - rk[i][j + 1] + rk[i - 1][j + 1];
      if (delta == 1) {
        w.images[j - 1] = i;
        ++found;
      }
    }
    if (found != 1 || used[w.images[j - 1]])
      throw Error("bruhat rank profile is not a permutation");  // cannot happen for invertible a
    used[w.images[j - 1]] = true;
  }
  return w;
}

}  // namespace qmat::matq
