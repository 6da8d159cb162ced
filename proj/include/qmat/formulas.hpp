#ifndef QMAT_FORMULAS_HPP
#define QMAT_FORMULAS_HPP

#include "qmat/bigint.hpp"
#include "qmat/gf.hpp"

namespace qmat::formulas {

using gf::Character;

enum class Method { closed, recursive };

// q-number [n]_q = (q^n - 1)/(q - 1), q-factorial, and q-double factorial
// (with [0]_q!! = [-1]_q!! = 1).
QInt q_number(long n, long q);
QInt q_factorial(long n, long q);
QInt q_double_factorial(long n, long q);

enum class QBasicsKind { number, factorial, double_factorial };
QInt q_basics(QBasicsKind kind, long n, long q);

// Number of k x n full-rank matrices with zero diagonal, 1 <= k <= n.
QInt f_rect(int k, int n, long q, Method method);

// Number of n x n rank-r matrices whose first k diagonal entries are zero.
QInt matz_count(int n, int k, int r, long q);

// Number of n x n rank-r matrices with all-zero diagonal.
QInt g_zero_diag(int n, int r, long q, Method method);

// Symmetric matrix counts: invertible, by rank, and by rank and character
// (the latter requires odd q).
QInt sym_invertible(int n, long q);
QInt sym_rank(int n, int r, long q);
QInt sym_rank_char(int n, int r, Character psi, long q);

// Symmetric zero-diagonal rank-r counts for q a power of 2.
QInt sym0_even_q(int n, int r, long q);

// Skew-symmetric rank-r counts (zero for odd r).
QInt sk_count(int n, int r, long q, Method method);

// Number of solutions of x_1^2+...+x_m^2 = 0 (psi = +) or of the form with
// the last square twisted by a nonsquare (psi = -), by the closed table.
QInt sq_table(int m, long q, Character psi);

// z(N,q): solutions of sum A_i B_i = 0; y(N,q): solutions of sum A_i B_i = a
// for a fixed nonzero a.  z + (q-1) y = q^(2N).
QInt bilinear_z(int n, long q);
QInt bilinear_y(int n, long q);

// Symmetric rank-r matrices with the first k diagonal entries zero, by
// character, via the two-branch recursion; q odd.
QInt sym0_char_recursive(int n, int k, int r, Character psi, long q);
inline QInt sym0_char_total(int n, int k, int r, long q) {
  return sym0_char_recursive(n, k, r, gf::kPlus, q) + sym0_char_recursive(n, k, r, gf::kMinus, q);
}

// Invertible symmetric matrices with the first k diagonal entries zero; q odd.
QInt symz_total(int n, int k, long q, Method method);
QInt symz_char(int n, int k, Character psi, long q, Method method);

// Classical limits: derangement numbers and partial fixed point-free
// involution counts C(n,r)*(r-1)!! (r even).
QInt derangement(int n);
QInt partial_involution(int n, int r);

}  // namespace qmat::formulas

#endif
