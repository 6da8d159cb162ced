#include "qmat/verify.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qmat/formulas.hpp"
#include "qmat/oracle.hpp"
#include "qmat/polyprobe.hpp"
#include "qmat/qpoly.hpp"
#include "qmat/rook.hpp"
#include "qmat/support.hpp"

namespace qmat::verify {
namespace {

namespace fml = qmat::formulas;
namespace orc = qmat::oracle;
using fml::Method;
using gf::Character;
using gf::kMinus;
using gf::kPlus;
using json = nlohmann::json;
using support::SupportSet;

constexpr std::uint64_t kQAnalogueSeed = 0x51c0de7701ull;  // fixed: runs must reproduce

// rectangular diagonal prefix, for the f_{k,n} oracle queries
SupportSet diag_rect(int m, int n, int k) {
  SupportSet s(m, n);
  for (int i = 1; i <= k; ++i) s.forbid(i, i);
  return s;
}

orc::CountQuery make_query(SupportSet s, long q, orc::MatrixClass cls, const SuiteOptions& opt) {
  orc::CountQuery query(std::move(s), q);
  query.cls = cls;
  query.workers = opt.workers;
  query.budget = opt.budget;
  return query;
}


// q grids honor the CLI's --q restriction
std::vector<long> qs(const SuiteOptions& opt, std::initializer_list<long> grid) {
  std::vector<long> v;
  for (long q : grid)
    if (!opt.only_q || *opt.only_q == q) v.push_back(q);
  return v;
}

orc::RankTable table_of(SupportSet s, long q, orc::MatrixClass cls, const SuiteOptions& opt,
                        SuiteReport& rep) {
  orc::RankTable t = orc::count_table(make_query(std::move(s), q, cls, opt));
  rep.work += t.work;
  return t;
}

std::string key3(const char* head, long a, long b, long c) {
  std::ostringstream os;
  os << head << '(' << a << ',' << b << ',' << c << ')';
  return os.str();
}

std::string key4(const char* head, long a, long b, long c, long d) {
  std::ostringstream os;
  os << head << '(' << a << ',' << b << ',' << c << ',' << d << ')';
  return os.str();
}

// [n]_q! as a polynomial in q
QPolynomial q_factorial_poly(int n) {
  QPolynomial acc = QPolynomial::constant(1);
  for (int i = 1; i <= n; ++i) {
    std::vector<QRat> c(i, QRat(1));  // [i]_q = 1 + q + ... + q^{i-1}
    acc = acc * QPolynomial(std::move(c));
  }
  return acc;
}

// ---------------------------------------------------------------------------

void suite_frect(SuiteReport& rep, const SuiteOptions& opt) {
  auto run = [&](int nmax, std::vector<long> qs) {
    for (long q : qs)
      for (int n = 1; n <= nmax; ++n)
        for (int k = 1; k <= n; ++k) {
          QInt closed = fml::f_rect(k, n, q, Method::closed);
          QInt rec = fml::f_rect(k, n, q, Method::recursive);
          orc::CountQuery query = make_query(diag_rect(k, n, k), q, orc::MatrixClass::general, opt);
          query.r = k;
          orc::CountValue oracle = orc::count_restricted(query);
          rep.work += oracle.work;
          rep.expect_eq(key3("f_closed_vs_recursive", k, n, q), closed, rec);
          rep.expect_eq(key3("f_vs_oracle", k, n, q), closed, oracle.value);
        }
  };
  run(4, qs(opt, {2, 3}));
  run(3, qs(opt, {5, 7}));
}

void suite_matz(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {2, 3}))
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k) {
        orc::RankTable t =
            table_of(diag_rect(n, n, k), q, orc::MatrixClass::general, opt, rep);
        for (int r = 0; r <= n; ++r)
          rep.expect_eq(key4("matz_vs_oracle", n, k, r, q), fml::matz_count(n, k, r, q), t.at(r));
      }
  // definitional identity matz(n,n,r) = g(n,r)
  for (long q : qs(opt, {2, 3}))
    for (int n = 1; n <= 4; ++n)
      for (int r = 0; r <= n; ++r)
        rep.expect_eq(key3("matz_equals_g", n, r, q), fml::matz_count(n, n, r, q),
                      fml::g_zero_diag(n, r, q, Method::recursive));
}

void suite_gzero(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {2, 3}))
    for (int n = 1; n <= 4; ++n) {
      orc::RankTable t =
          table_of(support::diagonal_prefix(n, n), q, orc::MatrixClass::general, opt, rep);
      for (int r = 0; r <= n; ++r) {
        QInt rec = fml::g_zero_diag(n, r, q, Method::recursive);
        rep.expect_eq(key3("g_recursive_vs_oracle", n, r, q), rec, t.at(r));
        rep.expect_eq(key3("g_closed_vs_recursive", n, r, q),
                      fml::g_zero_diag(n, r, q, Method::closed), rec);
      }
    }
  for (long q : qs(opt, {2, 3, 4, 5, 7, 9}))
    for (int n = 1; n <= 8; ++n)
      for (int r = 0; r <= n; ++r)
        rep.expect_eq(key3("g_closed_vs_recursive", n, r, q),
                      fml::g_zero_diag(n, r, q, Method::closed),
                      fml::g_zero_diag(n, r, q, Method::recursive));
}

void suite_macwilliams(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {2, 3, 4, 5}))
    for (int n = 1; n <= 4; ++n) {
      orc::RankTable t = table_of(SupportSet(n, n), q, orc::MatrixClass::symmetric, opt, rep);
      rep.expect_eq(key3("sym_invertible_vs_oracle", n, 0, q), fml::sym_invertible(n, q), t.at(n));
      rep.expect_eq(key3("sym_invertible_vs_sym_rank", n, n, q), fml::sym_invertible(n, q),
                    fml::sym_rank(n, n, q));
      for (int r = 0; r <= n; ++r)
        rep.expect_eq(key3("sym_rank_vs_oracle", n, r, q), fml::sym_rank(n, r, q), t.at(r));
    }
  for (long q : qs(opt, {3, 5}))
    for (int n = 1; n <= 4; ++n) {
      orc::RankTable t = orc::count_rank_character_table(n, SupportSet(n, n), q, opt.workers,
                                                         opt.budget);
      rep.work += t.work;
      for (int r = 0; r <= n; ++r) {
        rep.expect_eq(key3("sym_rank_char_plus_vs_oracle", n, r, q),
                      fml::sym_rank_char(n, r, kPlus, q), t.at(r, kPlus));
        rep.expect_eq(key3("sym_rank_char_minus_vs_oracle", n, r, q),
                      fml::sym_rank_char(n, r, kMinus, q), t.at(r, kMinus));
      }
    }
  for (long q : qs(opt, {2, 4}))
    for (int n = 1; n <= 5; ++n) {
      orc::RankTable t =
          table_of(support::diagonal_prefix(n, n), q, orc::MatrixClass::symmetric, opt, rep);
      for (int r = 0; r <= n; ++r)
        rep.expect_eq(key3("sym0_even_q_vs_oracle", n, r, q), fml::sym0_even_q(n, r, q), t.at(r));
    }
}

void suite_clover(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {3, 5}))
    for (int n : {2, 4}) {
      QInt lhs = fml::sym_invertible(n - 1, q);
      QInt rec = fml::symz_total(n, n, q, Method::recursive);
      QInt closed = fml::symz_total(n, n, q, Method::closed);
      orc::CountQuery zq = make_query(support::diagonal_prefix(n, n), q,
                                      orc::MatrixClass::symmetric, opt);
      zq.r = n;
      orc::CountValue z_oracle = orc::count_restricted(zq);
      rep.work += z_oracle.work;
      QInt sym_small = 1;
      if (n >= 2) {
        orc::CountQuery sq2 = make_query(SupportSet(n - 1, n - 1), q,
                                         orc::MatrixClass::symmetric, opt);
        sq2.r = n - 1;
        orc::CountValue v = orc::count_restricted(sq2);
        rep.work += v.work;
        sym_small = v.value;
      }
      rep.expect_eq(key3("clover_formula_recursive", n, 0, q), lhs, rec);
      rep.expect_eq(key3("clover_formula_closed", n, 0, q), lhs, closed);
      rep.expect_eq(key3("clover_oracle_sym0", n, 0, q), lhs, z_oracle.value);
      rep.expect_eq(key3("clover_oracle_sym", n, 0, q), lhs, sym_small);
    }
  for (long q : qs(opt, {2, 3, 4, 5, 7, 9, 11}))
    for (int n : {2, 4, 6, 8}) {
      QInt lhs = fml::sym_invertible(n - 1, q);
      QInt sym0n = q % 2 == 0 ? fml::sym0_even_q(n, n, q)
                              : fml::symz_total(n, n, q, Method::recursive);
      rep.expect_eq(key3("clover_formula", n, 0, q), lhs, sym0n);
      if (q % 2 == 1)
        rep.expect_eq(key3("clover_formula_closed", n, 0, q), lhs,
                      fml::symz_total(n, n, q, Method::closed));
    }
}

void suite_curious(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {3, 5}))
    for (int n : {2, 4}) {
      QInt lhs = fml::sym_invertible(n - 1, q);
      QInt rec = fml::sk_count(n, n, q, Method::recursive);
      QInt closed = fml::sk_count(n, n, q, Method::closed);
      orc::CountQuery query = make_query(SupportSet(n, n), q, orc::MatrixClass::skew, opt);
      query.r = n;
      orc::CountValue oracle = orc::count_restricted(query);
      rep.work += oracle.work;
      rep.expect_eq(key3("curious_recursive", n, 0, q), lhs, rec);
      rep.expect_eq(key3("curious_closed", n, 0, q), lhs, closed);
      rep.expect_eq(key3("curious_oracle", n, 0, q), lhs, oracle.value);
    }
  for (long q : qs(opt, {2, 3, 4, 5, 7, 9, 11}))
    for (int n : {2, 4, 6, 8}) {
      rep.expect_eq(key3("curious_formula", n, 0, q), fml::sym_invertible(n - 1, q),
                    fml::sk_count(n, n, q, Method::recursive));
      rep.expect_eq(key3("curious_formula_closed", n, 0, q), fml::sym_invertible(n - 1, q),
                    fml::sk_count(n, n, q, Method::closed));
    }
}

void suite_lemma33(SuiteReport& rep, const SuiteOptions& opt) {
  const int n = 4;
  for (long q : qs(opt, {3, 5})) {
    std::vector<QInt> counts(n + 1);
    for (int k = 0; k <= n; ++k) {
      orc::CountQuery query = make_query(support::diagonal_prefix(n, k), q,
                                         orc::MatrixClass::symmetric, opt);
      query.r = n;
      orc::CountValue v = orc::count_restricted(query);
      rep.work += v.work;
      counts[k] = v.value;
    }
    for (int k = 0; k + 1 <= n; ++k)
      rep.expect_eq(key3("lemma33_oracle", n, k, q), QInt(q) * counts[k + 1], counts[k]);
  }
}

void suite_sq(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {3, 5, 7, 9}))
    for (int m = 1; m <= 6; ++m)
      for (Character psi : {kPlus, kMinus}) {
        orc::CountValue oracle = orc::quadratic_form_zero_count(m, q, psi);
        rep.work += oracle.work;
        rep.expect_eq(key3(psi == kPlus ? "sq_plus" : "sq_minus", m, q, 0),
                      fml::sq_table(m, q, psi), oracle.value);
      }
}

void suite_char_recursion(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {3, 5}))
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k) {
        orc::RankTable t = orc::count_rank_character_table(n, support::diagonal_prefix(n, k), q,
                                                           opt.workers, opt.budget);
        rep.work += t.work;
        for (int r = 0; r <= n; ++r) {
          rep.expect_eq(key4("sym0_char_plus", n, k, r, q),
                        fml::sym0_char_recursive(n, k, r, kPlus, q), t.at(r, kPlus));
          rep.expect_eq(key4("sym0_char_minus", n, k, r, q),
                        fml::sym0_char_recursive(n, k, r, kMinus, q), t.at(r, kMinus));
        }
        // full-rank specialization agrees with the dedicated symz recursion
        rep.expect_eq(key3("symz_vs_sym0_char", n, k, q),
                      fml::symz_char(n, k, kPlus, q, Method::recursive),
                      fml::sym0_char_recursive(n, k, n, kPlus, q));
        rep.expect_eq(key3("symz_oracle_plus", n, k, q),
                      fml::symz_char(n, k, kPlus, q, Method::recursive), t.at(n, kPlus));
        rep.expect_eq(key3("symz_oracle_minus", n, k, q),
                      fml::symz_char(n, k, kMinus, q, Method::recursive), t.at(n, kMinus));
      }
}

void suite_cor44(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {3, 5}))
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k)
        for (int s = 0; 2 * s <= n; ++s) {
          // ranks above n count nothing
          QInt odd_plus = 2 * s + 1 > n ? QInt(0)
                                        : fml::sym0_char_recursive(n, k, 2 * s + 1, kPlus, q);
          QInt odd_minus = 2 * s + 1 > n ? QInt(0)
                                         : fml::sym0_char_recursive(n, k, 2 * s + 1, kMinus, q);
          rep.expect_eq(key4("cor44_half", n, k, 2 * s + 1, q), odd_plus, odd_minus);
          QRat lhs = QRat(fml::sym0_char_total(n, k, 2 * s, q) + odd_plus + odd_minus);
          QRat rhs = QRat(fml::sym_rank(n, 2 * s, q) + fml::sym_rank(n, 2 * s + 1, q)) /
                     pow_rat(q, k);
          rep.expect_eq(key4("cor44_sum", n, k, 2 * s, q), lhs, rhs);
        }
}

void suite_thm47(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {3, 5, 7}))
    for (int n = 1; n <= 7; ++n)
      for (int k = 0; k <= n; ++k) {
        rep.expect_eq(key3("thm47_total", n, k, q), fml::symz_total(n, k, q, Method::closed),
                      fml::symz_total(n, k, q, Method::recursive));
        rep.expect_eq(key3("thm47_plus", n, k, q), fml::symz_char(n, k, kPlus, q, Method::closed),
                      fml::symz_char(n, k, kPlus, q, Method::recursive));
        rep.expect_eq(key3("thm47_minus", n, k, q),
                      fml::symz_char(n, k, kMinus, q, Method::closed),
                      fml::symz_char(n, k, kMinus, q, Method::recursive));
      }
}

void suite_haglund(SuiteReport& rep, const SuiteOptions& opt) {
  const int n = 4;
  // all partitions inside the 4x4 box
  std::vector<std::vector<int>> lambdas;
  std::vector<int> parts;
  std::function<void(int, int)> gen = [&](int i, int maxp) {
    if (i == n) {
      lambdas.push_back(parts);
      return;
    }
    for (int p = 0; p <= maxp; ++p) {
      parts.push_back(p);
      gen(i + 1, p);
      parts.pop_back();
    }
  };
  gen(0, n);

  for (long q : qs(opt, {2, 3, 4, 5}))
    for (const auto& lp : lambdas) {
      support::Partition lambda(lp);
      SupportSet s = support::shape(support::ShapeKind::straight, lambda, n);
      orc::RankTable t = table_of(s, q, orc::MatrixClass::general, opt, rep);
      for (int r = 0; r <= n; ++r) {
        QRat rhs = rook::haglund_rhs_polynomial(lambda, n, r).eval(q);
        std::ostringstream name;
        name << "haglund(" << q << ",r=" << r << ",lambda=";
        for (int p : lp) name << p << '.';
        name << ')';
        rep.expect_eq(name.str(), QRat(t.at(r)), rhs);
      }
    }

  for (int nn = 1; nn <= 5; ++nn) {
    QPolynomial full = rook::q_rook_polynomial(support::complement(SupportSet(nn, nn)), nn);
    rep.add("full_board_qrook(" + std::to_string(nn) + ")", full == q_factorial_poly(nn),
            full.to_string(), q_factorial_poly(nn).to_string());
  }
}

void suite_qanalogue(SuiteReport& rep, const SuiteOptions& opt) {
  const int n = 4;
  std::mt19937_64 rng(kQAnalogueSeed);
  for (int trial = 0; trial < 200; ++trial) {
    SupportSet s(n, n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (rng() & 1) s.forbid(i, j);
    for (long q : qs(opt, {2, 3, 4, 5})) {
      orc::RankTable t = table_of(s, q, orc::MatrixClass::general, opt, rep);
      const QInt modulus_base = QInt(q) - 1;
      for (int r = 0; r <= n; ++r) {
        QInt modulus = pow_int(modulus_base, r + 1);
        QInt lhs = t.at(r) % modulus;
        QInt rhs = (rook::rook_count_t1(s, r) * pow_int(modulus_base, r)) % modulus;
        std::ostringstream name;
        name << "qanalogue(trial=" << trial << ",q=" << q << ",r=" << r << ')';
        rep.expect_eq(name.str(), lhs, rhs);
      }
    }
  }
  // diagonal family: q-analogue of derangements
  for (int nn = 1; nn <= 4; ++nn) {
    std::vector<std::pair<long, QInt>> points;
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 11L, 13L, 16L, 17L, 19L, 23L})
      points.emplace_back(q, fml::f_rect(nn, nn, q, Method::closed));
    QPolynomial fitted = polyprobe::interpolate_exact(points);
    QPolynomial quotient = fitted.divide_exact(q_minus_one_power(nn));
    rep.expect_eq("derangement_limit(" + std::to_string(nn) + ")", quotient.eval(1L),
                  QRat(fml::derangement(nn)));
    for (long q : qs(opt, {2, 3}))
      for (int r = 0; r <= nn; ++r) {
        rook::QAnalogueResult res = rook::q_analogue_check(support::diagonal_prefix(nn, nn), r, q,
                                                           rook::QAnalogueClass::general,
                                                           opt.workers, opt.budget);
        rep.add(key4("qanalogue_diag", nn, r, q, 0), res.holds, res.lhs_mod.str(),
                res.rhs_mod.str());
      }
  }
}

void suite_bruhat(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {2, 3}))
    for (int n = 1; n <= 3; ++n) {
      orc::BruhatCells cells = orc::bruhat_cell_counts(n, q, opt.workers, opt.budget);
      rep.work += cells.work;
      rep.expect_eq(key3("bruhat_total_vs_f", n, 0, q), cells.total,
                    fml::f_rect(n, n, q, Method::closed));
      const QInt modulus = pow_int(QInt(q) - 1, n + 1);
      const QInt expect = pow_int(QInt(q) - 1, n) % modulus;
      for (const auto& [w, count] : cells.cells) {
        QInt residue = count % modulus;
        std::ostringstream name;
        name << "bruhat_cell(n=" << n << ",q=" << q << ",w=" << w.to_string() << ')';
        rep.expect_eq(name.str(), residue, w.is_derangement() ? expect : QInt(0));
      }
    }
}

void suite_zy(SuiteReport& rep, const SuiteOptions& opt) {
  for (long q : qs(opt, {2, 3, 4, 5, 7, 9}))
    for (int n = 1; n <= 6; ++n) {
      QInt z = fml::bilinear_z(n, q), y = fml::bilinear_y(n, q);
      rep.expect_eq(key3("z_vs_oracle", n, q, 0), z, orc::bilinear_equation_count(n, q, true));
      rep.expect_eq(key3("y_vs_oracle", n, q, 0), y, orc::bilinear_equation_count(n, q, false));
      rep.expect_eq(key3("z_plus_qm1_y", n, q, 0), z + (QInt(q) - 1) * y, pow_int(q, 2 * n));
      rep.expect_eq(key3("z_mod_qm1", n, q, 0), z % (QInt(q) - 1), QInt(q) > 2 ? QInt(1) : QInt(0));
      rep.expect_eq(key3("y_mod_qm1", n, q, 0), y % (QInt(q) - 1), QInt(0));
    }
}

void suite_fano(SuiteReport& rep, const SuiteOptions& opt) {
  SupportSet fano = support::fano_support();
  rep.expect_eq("fano_free_count", QInt(fano.free_count()), QInt(21));
  rep.expect_eq("fano_t1", rook::rook_count_t1(fano, 7), QInt(24));

  orc::CountQuery q2 = make_query(fano, 2, orc::MatrixClass::general, opt);
  q2.r = 7;
  orc::CountValue v2 = orc::count_restricted(q2);
  rep.work += v2.work;
  rep.add("fano_q2_count", v2.value > 0, v2.value.str(), "> 0");

  rook::QAnalogueResult qa2 =
      rook::q_analogue_check(fano, 7, 2, rook::QAnalogueClass::general, opt.workers, opt.budget);
  rep.add("fano_q2_qanalogue_t1_24", qa2.holds && qa2.t1 == 24, qa2.lhs_mod.str(),
          qa2.rhs_mod.str());

  rook::QAnalogueResult qa3 =
      rook::q_analogue_check(fano, 7, 3, rook::QAnalogueClass::general, opt.workers, opt.budget);
  rep.add("fano_q3_qanalogue", qa3.holds, qa3.lhs_mod.str(), qa3.rhs_mod.str());
  rep.add("fano_q3_count", qa3.t_q > 0, qa3.t_q.str(), "> 0");
}

using SuiteFn = void (*)(SuiteReport&, const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"frect", suite_frect},
      {"matz", suite_matz},
      {"gzero", suite_gzero},
      {"macwilliams", suite_macwilliams},
      {"clover", suite_clover},
      {"curious", suite_curious},
      {"lemma33", suite_lemma33},
      {"sq", suite_sq},
      {"char_recursion", suite_char_recursion},
      {"cor44", suite_cor44},
      {"thm47", suite_thm47},
      {"haglund", suite_haglund},
      {"qanalogue", suite_qanalogue},
      {"bruhat", suite_bruhat},
      {"zy", suite_zy},
      {"fano", suite_fano},
  };
  return table;
}

void suite_determinism(SuiteReport& rep, const SuiteOptions& opt) {
  for (const auto& [name, fn] : suite_table()) {
    std::vector<std::string> dumps;
    for (int workers : {1, 4, 16}) {
      SuiteOptions o = opt;
      o.workers = workers;
      SuiteReport sub;
      sub.suite = name;
      fn(sub, o);
      dumps.push_back(sub.to_json(/*include_timing=*/false));
    }
    rep.add("determinism(" + name + ")", dumps[0] == dumps[1] && dumps[1] == dumps[2],
            "workers 1/4/16", dumps[0] == dumps[1] && dumps[1] == dumps[2] ? "identical"
                                                                           : "mismatch");
  }
}

}  // namespace

void SuiteReport::add(const std::string& name, bool ok, const std::string& lhs,
                      const std::string& rhs) {
  checks.push_back({name, ok, lhs, rhs});
  pass = pass && ok;
}

void SuiteReport::expect_eq(const std::string& name, const QInt& lhs, const QInt& rhs) {
  add(name, lhs == rhs, lhs.str(), rhs.str());
}

void SuiteReport::expect_eq(const std::string& name, const QRat& lhs, const QRat& rhs) {
  add(name, lhs == rhs, lhs.str(), rhs.str());
}

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

std::string SuiteReport::to_json(bool include_timing, bool include_rows) const {
  json doc;
  doc["schema"] = "qmatcount/1";
  doc["suite"] = suite;
  doc["pass"] = pass;
  doc["checks"] = checks.size();
  doc["failures"] = failures();
  doc["work"] = work;
  if (include_timing) doc["elapsed_sec"] = elapsed_sec;
  if (include_rows) {
    json rows = json::array();
    for (const auto& c : checks) {
      json row;
      row["name"] = c.name;
      row["pass"] = c.pass;
      if (!c.lhs.empty()) row["lhs"] = c.lhs;
      if (!c.rhs.empty()) row["rhs"] = c.rhs;
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
  }
  return doc.dump();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suite_table()) v.push_back(name);
    v.push_back("determinism");
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = name;
  if (name == "determinism") {
    suite_determinism(rep, options);
  } else {
    bool found = false;
    for (const auto& [sname, fn] : suite_table())
      if (sname == name) {
        fn(rep, options);
        found = true;
        break;
      }
    if (!found) throw OutOfRange("unknown verify suite '" + name + "'");
  }
  rep.elapsed_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace qmat::verify
