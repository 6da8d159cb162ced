#ifndef QMAT_ORACLE_HPP
#define QMAT_ORACLE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmat/bigint.hpp"
#include "qmat/gf.hpp"
#include "qmat/matq.hpp"
#include "qmat/support.hpp"

namespace qmat::oracle {

enum class MatrixClass { general, symmetric, skew, symmetric_with_character };
enum class Strategy { automatic, exhaustive, projectivized, pruned_column_dfs };

const char* to_string(MatrixClass c);
const char* to_string(Strategy s);
std::optional<MatrixClass> matrix_class_from_string(const std::string& s);

// Work budget in candidate evaluations; QMAT_BUDGET overrides the default.
QInt default_budget();

struct CountQuery {
  CountQuery(support::SupportSet s, long q_) : S(std::move(s)), q(q_) {}

  support::SupportSet S;
  long q;
  std::optional<int> r;  // target rank; nullopt = full distribution
  MatrixClass cls = MatrixClass::general;
  std::optional<gf::Character> character;  // filter for symmetric_with_character
  Strategy strategy = Strategy::automatic;
  int workers = 0;               // 0 = available parallelism
  std::optional<QInt> budget;    // overrides QMAT_BUDGET / default

  int m() const { return S.m(); }
  int n() const { return S.n(); }
  // Free parameters of the class (degree bound for polynomiality probing).
  long class_free_count() const;
  void validate() const;
};

struct CountValue {
  QInt value;
  std::string method;
  double elapsed_sec = 0;
  std::uint64_t work = 0;
};

struct RankTable {
  std::vector<QInt> by_rank;                    // index = rank
  std::vector<std::array<QInt, 2>> by_char;     // [rank][{+,-}]; empty unless classified
  std::string method;
  double elapsed_sec = 0;
  std::uint64_t work = 0;

  QInt total() const;
  const QInt& at(int r) const { return by_rank.at(r); }
  QInt at(int r, gf::Character c) const { return by_char.at(r)[c == gf::kPlus ? 0 : 1]; }
};

// Exact count of matrices in the query's class with the given rank.  The
// three strategies (exhaustive, projectivized, pruned DFS) agree wherever
// they overlap; projectivization applies to the general class only.
CountValue count_restricted(const CountQuery& query);

// Full rank distribution in one sweep (the query's r is ignored).
RankTable count_table(const CountQuery& query);

// Symmetric matrices avoiding S counted by (rank, character); q odd.
RankTable count_rank_character_table(int n, const support::SupportSet& S, long q, int workers = 0,
                                     std::optional<QInt> budget = std::nullopt);

struct BruhatCells {
  int n;
  long q;
  std::map<matq::Permutation, QInt> cells;  // every w, including empty cells
  QInt total;
  std::string method;
  double elapsed_sec = 0;
  std::uint64_t work = 0;
};

// Per-cell counts of invertible zero-diagonal matrices, classified by their
// Bruhat permutation.  Default size bounds: n <= 5 for q = 2, n <= 4 for
// q = 3; an explicit budget lifts them (the work estimate still gates).
BruhatCells bruhat_cell_counts(int n, long q, int workers = 0,
                               std::optional<QInt> budget = std::nullopt);

// Solutions of x_1^2 + ... + x_m^2 = 0 (psi = +), or with the last square
// twisted by the least nonsquare (psi = -), by direct enumeration.
CountValue quadratic_form_zero_count(int m, long q, gf::Character psi);

// Direct DP count of solutions of sum_{i<=N} A_i B_i = target_zero ? 0 : a
// (a any fixed nonzero value); oracle for the z/y closed forms.
QInt bilinear_equation_count(int n, long q, bool target_zero);

}  // namespace qmat::oracle

#endif
