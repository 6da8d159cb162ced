#ifndef QMAT_MATQ_HPP
#define QMAT_MATQ_HPP

#include <string>
#include <vector>

#include "qmat/gf.hpp"

namespace qmat::matq {

// Permutation of {1..n}, stored as the image list w(1), ..., w(n).
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n) {
    Permutation w;
    w.images.resize(n);
    for (int i = 0; i < n; ++i) w.images[i] = i + 1;
    return w;
  }
  int n() const { return int(images.size()); }
  int operator()(int i) const { return images[i - 1]; }  // 1-indexed
  bool is_derangement() const {
    for (int i = 0; i < n(); ++i)
      if (images[i] == i + 1) return false;
    return true;
  }
  int inversions() const {
    int c = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (images[i] > images[j]) ++c;
    return c;
  }
  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images == b.images; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.images < b.images; }
  std::string to_string() const;
};

// Dense matrix over a shared GF(q).  Value type; all operations are pure.
class Matrix {
 public:
  Matrix(gf::FieldPtr field, int rows, int cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {
    if (rows < 1 || cols < 1) throw OutOfRange("matrix dimensions must be positive");
  }

  const gf::Field& field() const { return *field_; }
  gf::FieldPtr field_ptr() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  gf::Elem operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
  void set(int r, int c, gf::Elem v) {
    if (v >= field_->q()) throw OutOfRange("entry not a field element");
    a_[std::size_t(r) * cols_ + c] = v;
  }

  Matrix transpose() const;
  bool is_symmetric() const;
  // Skew: square, A_ij = -A_ji, and zero diagonal in every characteristic.
  bool is_skew() const;
  bool is_zero() const;

  static Matrix identity(gf::FieldPtr field, int n);
  // Text literal, rows separated by ';', entries by ',': "0,1;1,0".
  static Matrix parse(const std::string& text, gf::FieldPtr field);
  std::string to_string() const;

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.field_->q() == y.field_->q() && x.a_ == y.a_;
  }

 private:
  gf::FieldPtr field_;
  int rows_, cols_;
  std::vector<gf::Elem> a_;
};

Matrix operator*(const Matrix& x, const Matrix& y);

// Row rank by Gaussian elimination; packed-word path for q = 2.
int rank(const Matrix& a);

struct CongruenceDiagonalization {
  Matrix d;  // diagonal
  Matrix m;  // invertible, a = m * d * m^T
};

// Symmetric congruence diagonalization over odd characteristic.  Pivot rule:
// use the smallest nonzero diagonal entry of the working block; otherwise add
// row j to row i (and column j to column i) for the smallest nonzero (i, j).
CongruenceDiagonalization congruence_diagonalize(const Matrix& a);

// + iff the product of the nonzero diagonal entries of the diagonalized form
// is a square; the zero matrix has character + by convention.
gf::Character quadratic_character(const Matrix& a);

// The unique w with a = b * g^w, b invertible lower triangular and g^w the
// cell normal form (1 at (w(i), i), zeros at (w(i), j) for j > i and (k, i)
// for k > w(i)).  Extracted from the rank profile of the leading-row /
// trailing-column submatrices, which is invariant on each double coset.
Permutation bruhat_permutation(const Matrix& a);

}  // namespace qmat::matq

#endif
