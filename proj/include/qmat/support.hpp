#ifndef QMAT_SUPPORT_HPP
#define QMAT_SUPPORT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qmat/errors.hpp"

namespace qmat::support {

// Integer partition, weakly decreasing parts; trailing zeros allowed.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 0) throw OutOfRange("partition parts must be nonnegative");
      if (i && parts[i] > parts[i - 1]) throw OutOfRange("partition parts must be weakly decreasing");
    }
  }
  long sum() const {
    long s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int part(std::size_t i) const { return i < parts.size() ? parts[i] : 0; }
};

// Forbidden-position set S inside an m x n grid.  Positions are 1-indexed
// (paper convention); internally one bitmask per row for fast membership.
class SupportSet {
 public:
  SupportSet(int m, int n) : m_(m), n_(n), row_mask_(m, 0) {
    if (m < 1 || n < 1 || n > 63) throw OutOfRange("support grid dimensions out of range");
  }
  static SupportSet from_positions(int m, int n, const std::vector<std::pair<int, int>>& positions);

  int m() const { return m_; }
  int n() const { return n_; }
  bool forbidden(int i, int j) const {  // 1-indexed
    bounds(i, j);
    return (row_mask_[i - 1] >> (j - 1)) & 1;
  }
  void forbid(int i, int j) {
    bounds(i, j);
    row_mask_[i - 1] |= std::uint64_t(1) << (j - 1);
  }
  std::uint64_t forbidden_row_mask(int i) const { return row_mask_[i - 1]; }  // 1-indexed row

  long forbidden_count() const;
  long free_count() const { return long(m_) * n_ - forbidden_count(); }
  // Free parameters of the symmetric class (cells on/above the diagonal) and
  // the skew class (cells strictly above); both require m = n.
  long free_count_symmetric() const;
  long free_count_skew() const;

  std::vector<std::pair<int, int>> positions() const;  // sorted, 1-indexed
  bool transpose_symmetric() const;
  bool contains_diagonal() const;
  SupportSet transpose() const;
  // 180-degree rotation of the grid, (i,j) -> (m+1-i, n+1-j).
  SupportSet rotate180() const;

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.row_mask_ == b.row_mask_;
  }

 private:
  void bounds(int i, int j) const {
    if (i < 1 || i > m_ || j < 1 || j > n_) throw OutOfRange("support position out of bounds");
  }
  int m_, n_;
  std::vector<std::uint64_t> row_mask_;
};

// The first k diagonal cells of an n x n grid.
SupportSet diagonal_prefix(int n, int k);

enum class ShapeKind { straight, skew };

// Straight shape S_lambda (row i forbids columns 1..lambda_i, top-left
// justified) or skew shape S_lambda \ S_mu, inside an n x n grid.
SupportSet shape(ShapeKind kind, const Partition& lambda, const Partition& mu, int n);
inline SupportSet shape(ShapeKind kind, const Partition& lambda, int n) {
  return shape(kind, lambda, Partition{}, n);
}

SupportSet complement(const SupportSet& s);

// The 7x7 forbidden set whose free cells are the Fano plane incidence
// pattern; 28 forbidden cells, 21 free.
SupportSet fano_support();

// From a graph on vertices 1..nv whose last vertex is adjacent to all others:
// the (nv-1) x (nv-1) set forbidding (i,j), i != j, whenever v_i v_j is not an
// edge.  Throws ApexMissing when the last vertex is not adjacent to all.
SupportSet graph_support(int num_vertices, const std::vector<std::pair<int, int>>& edges);

}  // namespace qmat::support

#endif
