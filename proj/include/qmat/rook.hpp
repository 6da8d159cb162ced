#ifndef QMAT_ROOK_HPP
#define QMAT_ROOK_HPP

#include <optional>

#include "qmat/oracle.hpp"
#include "qmat/qpoly.hpp"
#include "qmat/support.hpp"

namespace qmat::rook {

// Number of r-rook non-attacking placements on the FREE cells of S.
QInt rook_count_t1(const support::SupportSet& S, int r);

// Symmetric placements off the diagonal avoiding S: choices of r/2 disjoint
// pairs {i,j}, i != j, with both (i,j) and (j,i) free; r must be even.
QInt rook_count_t1_symmetric(const support::SupportSet& S, int r);

// Garsia-Remmel q-rook number R_r(board, q).  Here the SupportSet's cell set
// is read as the BOARD (cells where rooks may sit).  Each rook cancels its
// own cell, the board cells below it in its column, and the board cells to
// its right in its row; inv counts the uncancelled board cells.  Calibrated
// by R_n(full n x n board) = [n]_q!.
QPolynomial q_rook_polynomial(const support::SupportSet& board, int r);

struct HaglundResult {
  QInt lhs;   // oracle count of n x n rank-r matrices avoiding S_lambda
  QRat rhs;   // (q-1)^r q^{n^2-|lambda|-r} R_r(free region, q^{-1})
  bool equal;
};

HaglundResult haglund_check(const support::Partition& lambda, int n, int r, long q, int workers = 0,
                            std::optional<QInt> budget = std::nullopt);

// The Haglund right-hand side expanded symbolically in q.
QPolynomial haglund_rhs_polynomial(const support::Partition& lambda, int n, int r);

struct QAnalogueResult {
  QInt t_q;         // matrix count over GF(q)
  QInt t1;          // rook placement count
  QInt modulus;     // (q-1)^(r+1), or (q-1)^(s+1) for the symmetric variant
  QInt lhs_mod;     // t_q mod modulus
  QInt rhs_mod;     // t1 * (q-1)^r (resp. (q-1)^s) mod modulus
  bool holds;
};

enum class QAnalogueClass { general, symmetric };

// Checks #T_q = #T_1 (q-1)^r mod (q-1)^{r+1} (general), or the symmetric
// variant with exponent s = r/2 for zero-diagonal symmetric matrices.
QAnalogueResult q_analogue_check(const support::SupportSet& S, int r, long q, QAnalogueClass cls,
                                 int workers = 0, std::optional<QInt> budget = std::nullopt);

}  // namespace qmat::rook

#endif
