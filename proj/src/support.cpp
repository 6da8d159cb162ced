#include "qmat/support.hpp"

#include <bit>

namespace qmat::support {

SupportSet SupportSet::from_positions(int m, int n, const std::vector<std::pair<int, int>>& positions) {
  SupportSet s(m, n);
  for (auto [i, j] : positions) {
    if (s.forbidden(i, j)) throw OutOfRange("duplicate support position");
    s.forbid(i, j);
  }
  return s;
}

long SupportSet::forbidden_count() const {
  long c = 0;
  for (auto mask : row_mask_) c += std::popcount(mask);
  return c;
}

long SupportSet::free_count_symmetric() const {
  if (m_ != n_) throw OutOfRange("symmetric free count needs a square grid");
  long c = 0;
  for (int i = 1; i <= m_; ++i)
    for (int j = i; j <= n_; ++j)
      if (!forbidden(i, j)) ++c;
  return c;
}

long SupportSet::free_count_skew() const {
  if (m_ != n_) throw OutOfRange("skew free count needs a square grid");
  long c = 0;
  for (int i = 1; i <= m_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (!forbidden(i, j)) ++c;
  return c;
}

std::vector<std::pair<int, int>> SupportSet::positions() const {
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i <= m_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (forbidden(i, j)) p.emplace_back(i, j);
  return p;
}

bool SupportSet::transpose_symmetric() const {
  if (m_ != n_) return false;
  for (int i = 1; i <= m_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (forbidden(i, j) != forbidden(j, i)) return false;
  return true;
}

bool SupportSet::contains_diagonal() const {
  if (m_ != n_) return false;
  for (int i = 1; i <= m_; ++i)
    if (!forbidden(i, i)) return false;
  return true;
}

SupportSet SupportSet::transpose() const {
  SupportSet t(n_, m_);
  for (int i = 1; i <= m_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (forbidden(i, j)) t.forbid(j, i);
  return t;
}

SupportSet SupportSet::rotate180() const {
  SupportSet t(m_, n_);
  for (int i = 1; i <= m_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (forbidden(i, j)) t.forbid(m_ + 1 - i, n_ + 1 - j);
  return t;
}

SupportSet diagonal_prefix(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw OutOfRange("diagonal_prefix: need 0 <= k <= n");
  SupportSet s(n, n);
  for (int i = 1; i <= k; ++i) s.forbid(i, i);
  return s;
}

SupportSet shape(ShapeKind kind, const Partition& lambda, const Partition& mu, int n) {
  if (n < 1) throw OutOfRange("shape: grid size must be positive");
  if (int(lambda.parts.size()) > n || lambda.part(0) > n)
    throw OutOfRange("shape: partition does not fit the grid");
  if (kind == ShapeKind::straight) {
    SupportSet s(n, n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= lambda.part(i - 1); ++j) s.forbid(i, j);
    return s;
  }
  for (std::size_t i = 0; i < mu.parts.size(); ++i)
    if (mu.part(i) > lambda.part(i)) throw NotNested("skew shape: mu is not contained in lambda");
  SupportSet d(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = mu.part(i - 1) + 1; j <= lambda.part(i - 1); ++j) d.forbid(i, j);
  return d;
}

SupportSet complement(const SupportSet& s) {
  SupportSet c(s.m(), s.n());
  for (int i = 1; i <= s.m(); ++i)
    for (int j = 1; j <= s.n(); ++j)
      if (!s.forbidden(i, j)) c.forbid(i, j);
  return c;
}

SupportSet fano_support() {
  static const int kFreeRows[7][3] = {{1, 2, 7}, {1, 3, 6}, {1, 4, 5}, {2, 3, 5},
                                      {2, 4, 6}, {3, 4, 7}, {5, 6, 7}};
  SupportSet s(7, 7);
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) {
      bool free = false;
      for (int t = 0; t < 3; ++t) free |= (kFreeRows[i - 1][t] == j);
      if (!free) s.forbid(i, j);
    }
  }
  return s;
}

SupportSet graph_support(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  if (num_vertices < 2) throw OutOfRange("graph_support: need at least 2 vertices");
  std::vector<std::vector<bool>> adj(num_vertices + 1, std::vector<bool>(num_vertices + 1, false));
  for (auto [a, b] : edges) {
    if (a < 1 || b < 1 || a > num_vertices || b > num_vertices || a == b)
      throw OutOfRange("graph_support: bad edge");
    adj[a][b] = adj[b][a] = true;
  }
  for (int v = 1; v < num_vertices; ++v)
    if (!adj[v][num_vertices])
      throw ApexMissing("graph_support: last vertex must be adjacent to all others");
  SupportSet s(num_vertices - 1, num_vertices - 1);
  for (int i = 1; i < num_vertices; ++i)
    for (int j = 1; j < num_vertices; ++j)
      if (i != j && !adj[i][j]) s.forbid(i, j);
  return s;
}

}  // namespace qmat::support
