#include "qmat/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace qmat::oracle {
namespace {

// fields are immutable; cache them so repeated counts at one q share tables
gf::FieldPtr cached_field(long q) {
  static std::mutex mu;
  static std::map<long, gf::FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = gf::make_field(std::uint32_t(q));
  cache.emplace(q, f);
  return f;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Clock = std::chrono::steady_clock;

constexpr u64 kFrontierTarget = 1024;  // worker-count independent split depth
constexpr int kMaxDim = 63;

QInt qint_from_u128(u128 v) {
  QInt r = u64(v >> 64);
  r <<= 64;
  r += u64(v);
  return r;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

QInt parse_budget_env() {
  const char* s = std::getenv("QMAT_BUDGET");
  if (!s || !*s) return QInt(1) << 34;
  try {
    return QInt(std::string(s));
  } catch (const std::exception&) {
    throw OutOfRange("QMAT_BUDGET is not a valid integer");
  }
}

QInt resolve_budget(const std::optional<QInt>& override_budget) {
  if (override_budget) return *override_budget;
  static const QInt env = parse_budget_env();
  return env;
}

int resolve_workers(int requested) {
  if (requested > 0) return std::min(requested, 256);
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

void check_budget(const QInt& estimate, const QInt& budget, const char* what) {
  if (estimate > budget)
    throw BudgetExceeded(std::string(what) + ": work estimate " + estimate.str() +
                             " exceeds budget " + budget.str(),
                         estimate.str());
  if (estimate >= (QInt(1) << 62)) throw OutOfRange("enumeration too large to schedule");
}

// ---------------------------------------------------------------------------
// accumulators: u128 for the common case, QInt when totals may exceed 2^120

struct AccU128 {
  using Value = u128;
  static Value zero() { return 0; }
  static QInt to_qint(const Value& v) { return qint_from_u128(v); }
  static Value weight_pow(long base, int e) {
    Value w = 1;
    for (int i = 0; i < e; ++i) w *= u64(base);
    return w;
  }
};

struct AccQInt {
  using Value = QInt;
  static Value zero() { return QInt(0); }
  static QInt to_qint(const Value& v) { return v; }
  static Value weight_pow(long base, int e) { return pow_int(base, e); }
};

struct RawResult {
  std::vector<QInt> by_rank;
  std::vector<std::array<QInt, 2>> by_char;
  u64 work = 0;
};

// run `fn(worker_id)` on `workers` threads and rethrow any exception
template <class Fn>
void run_workers(int workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// mixed-radix frontier: the first `depth` levels are flattened and strided
// across workers; depth is chosen from a fixed threshold so that results and
// work counters do not depend on the worker count
int frontier_depth(const std::vector<u64>& radix, std::size_t levels) {
  u64 prod = 1;
  int depth = 0;
  while (depth < int(levels) && prod < kFrontierTarget) {
    prod *= radix[depth];
    ++depth;
  }
  return depth;
}

u64 frontier_size(const std::vector<u64>& radix, int depth) {
  u64 prod = 1;
  for (int j = 0; j < depth; ++j) prod *= radix[j];
  return prod;
}

// ---------------------------------------------------------------------------
// general class: column-by-column enumeration with incremental row echelon

struct ColumnSpec {
  std::vector<int> free_rows;  // 0-indexed rows that may be nonzero
  u64 cand = 1;                // candidate count at this level
  std::vector<u64> qpow;       // q^i for i <= #free_rows
};

std::vector<ColumnSpec> column_specs(const support::SupportSet& S, long q, bool projective) {
  std::vector<ColumnSpec> cols(S.n());
  for (int j = 1; j <= S.n(); ++j) {
    ColumnSpec& c = cols[j - 1];
    for (int i = 1; i <= S.m(); ++i)
      if (!S.forbidden(i, j)) c.free_rows.push_back(i - 1);
    const int f = int(c.free_rows.size());
    if (pow_int(q, f) >= (QInt(1) << 62))
      throw OutOfRange("single-column candidate space too large to enumerate");
    c.qpow.resize(f + 1);
    c.qpow[0] = 1;
    for (int t = 1; t <= f; ++t) c.qpow[t] = c.qpow[t - 1] * u64(q);
    c.cand = projective ? 1 + (c.qpow[f] - 1) / u64(q - 1) : c.qpow[f];
  }
  return cols;
}

QInt estimate_general(const support::SupportSet& S, long q, bool projective) {
  QInt est = 1;
  for (int j = 1; j <= S.n(); ++j) {
    long f = 0;
    for (int i = 1; i <= S.m(); ++i)
      if (!S.forbidden(i, j)) ++f;
    QInt per = pow_int(q, f);
    if (projective) per = 1 + (per - 1) / (q - 1);
    est *= per;
  }
  return est;
}

// echelon basis over GF(q) with byte vectors; push/pop for DFS
struct ByteEchelon {
  const gf::Elem* addt;
  const gf::Elem* mult;
  const gf::Elem* negt;
  const gf::Elem* invt;
  u64 q;
  int m;
  std::vector<std::array<std::uint8_t, 64>> rows;
  std::vector<int> pivots;

  explicit ByteEchelon(const gf::Field& F, int m_)
      : addt(F.add_table()), mult(F.mul_table()), negt(F.neg_table()), invt(F.inv_table()),
        q(F.q()), m(m_) {}

  int size() const { return int(rows.size()); }
  void pop() {
    rows.pop_back();
    pivots.pop_back();
  }
  // reduces v in place; returns true (and pushes) when independent
  bool insert(std::uint8_t* v) {
    for (std::size_t b = 0; b < rows.size(); ++b) {
      const int p = pivots[b];
      const std::uint8_t c = v[p];
      if (!c) continue;
      const std::uint8_t cn = std::uint8_t(negt[c]);
      const std::uint8_t* row = rows[b].data();
      for (int i = p; i < m; ++i)
        v[i] = std::uint8_t(addt[u64(v[i]) * q + mult[u64(cn) * q + row[i]]]);
    }
    int p = -1;
    for (int i = 0; i < m; ++i)
      if (v[i]) {
        p = i;
        break;
      }
    if (p < 0) return false;
    if (v[p] != 1) {
      const std::uint8_t s = std::uint8_t(invt[v[p]]);
      for (int i = p; i < m; ++i) v[i] = std::uint8_t(mult[u64(s) * q + v[i]]);
    }
    rows.emplace_back();
    std::copy(v, v + m, rows.back().data());
    pivots.push_back(p);
    return true;
  }
};

// decode candidate `id` of column spec `c` into v[0..m); returns nonzero flag
bool decode_column_bytes(const ColumnSpec& c, u64 id, bool projective, long q, std::uint8_t* v,
                         int m) {
  std::fill(v, v + m, 0);
  if (id == 0) return false;
  const int f = int(c.free_rows.size());
  if (!projective) {
    for (int t = 0; t < f; ++t) {
      v[c.free_rows[t]] = std::uint8_t(id % u64(q));
      id /= u64(q);
    }
    return true;
  }
  --id;  // skip the zero column
  for (int t = 0; t < f; ++t) {
    const u64 block = c.qpow[f - 1 - t];
    if (id < block) {
      v[c.free_rows[t]] = 1;
      for (int u = t + 1; u < f; ++u) {
        v[c.free_rows[u]] = std::uint8_t(id % u64(q));
        id /= u64(q);
      }
      return true;
    }
    id -= block;
  }
  throw Error("column candidate index out of range");  // unreachable
}

template <class Acc>
struct GeneralEngineBytes {
  const gf::Field& F;
  const support::SupportSet& S;
  long q;
  bool projective;
  std::optional<int> target;
  std::vector<ColumnSpec> cols;
  std::vector<u64> radix;
  int m, n, maxr;
  std::vector<typename Acc::Value> wpow;  // (q-1)^i weights

  GeneralEngineBytes(const gf::Field& F_, const support::SupportSet& S_, bool projective_,
                     std::optional<int> target_)
      : F(F_), S(S_), q(long(F_.q())), projective(projective_), target(target_),
        cols(column_specs(S_, q, projective_)), m(S_.m()), n(S_.n()), maxr(std::min(m, n)) {
    for (const auto& c : cols) radix.push_back(c.cand);
    wpow.resize(n + 1);
    for (int i = 0; i <= n; ++i) wpow[i] = Acc::weight_pow(projective ? q - 1 : 1, i);
  }

  bool pruned(int rank, int col) const {
    if (!target) return false;
    return rank > *target || rank + (n - col) < *target;
  }

  struct Ctx {
    ByteEchelon ech;
    std::vector<typename Acc::Value> by_rank;
    u64 work = 0;
    std::array<std::uint8_t, 64> buf;
    explicit Ctx(const gf::Field& F, int m, int maxr)
        : ech(F, m), by_rank(maxr + 1, Acc::zero()) {}
  };

  void dfs(Ctx& ctx, int col, int rank, int nz) {
    if (col == n) {
      ctx.by_rank[rank] += wpow[nz];
      return;
    }
    if (pruned(rank, col)) return;
    const ColumnSpec& c = cols[col];
    for (u64 id = 0; id < c.cand; ++id) {
      ++ctx.work;
      if (!decode_column_bytes(c, id, projective, q, ctx.buf.data(), m)) {
        dfs(ctx, col + 1, rank, nz);
        continue;
      }
      const bool grew = ctx.ech.insert(ctx.buf.data());
      dfs(ctx, col + 1, rank + (grew ? 1 : 0), nz + 1);
      if (grew) ctx.ech.pop();
    }
  }

  RawResult run(int workers) {
    const int depth = frontier_depth(radix, radix.size());
    const u64 fsize = frontier_size(radix, depth);
    std::vector<std::vector<typename Acc::Value>> tallies(workers);
    std::vector<u64> works(workers, 0);
    run_workers(workers, [&](int w) {
      Ctx ctx(F, m, maxr);
      for (u64 idx = u64(w); idx < fsize; idx += u64(workers)) {
        u64 rem = idx;
        int rank = 0, nz = 0, pushed = 0;
        bool dead = false;
        for (int j = 0; j < depth; ++j) {
          const u64 id = rem % radix[j];
          rem /= radix[j];
          if (pruned(rank, j)) {
            dead = true;
            break;
          }
          ++ctx.work;
          if (decode_column_bytes(cols[j], id, projective, q, ctx.buf.data(), m)) {
            ++nz;
            if (ctx.ech.insert(ctx.buf.data())) {
              ++rank;
              ++pushed;
            }
          }
        }
        if (!dead) dfs(ctx, depth, rank, nz);
        while (pushed--) ctx.ech.pop();
      }
      tallies[w] = std::move(ctx.by_rank);
      works[w] = ctx.work;
    });
    RawResult res;
    res.by_rank.assign(maxr + 1, QInt(0));
    for (int w = 0; w < workers; ++w) {
      res.work += works[w];
      if (tallies[w].empty()) continue;
      for (int r = 0; r <= maxr; ++r) res.by_rank[r] += Acc::to_qint(tallies[w][r]);
    }
    return res;
  }
};

// GF(2): columns as packed words, elimination is word-parallel
struct GeneralEngineBits {
  const support::SupportSet& S;
  std::optional<int> target;
  int m, n, maxr;
  std::vector<std::vector<int>> free_rows;
  std::vector<u64> radix;

  GeneralEngineBits(const support::SupportSet& S_, std::optional<int> target_)
      : S(S_), target(target_), m(S_.m()), n(S_.n()), maxr(std::min(m, n)) {
    free_rows.resize(n);
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= m; ++i)
        if (!S.forbidden(i, j)) free_rows[j - 1].push_back(i - 1);
      radix.push_back(u64(1) << free_rows[j - 1].size());
    }
  }

  bool pruned(int rank, int col) const {
    if (!target) return false;
    return rank > *target || rank + (n - col) < *target;
  }

  struct Ctx {
    std::vector<u64> rows;
    std::vector<u64> pivot_bit;
    std::vector<u128> by_rank;
    u64 work = 0;
    explicit Ctx(int maxr) : by_rank(maxr + 1, 0) {}
    bool insert(u64 v) {
      for (std::size_t b = 0; b < rows.size(); ++b)
        if (v & pivot_bit[b]) v ^= rows[b];
      if (!v) return false;
      rows.push_back(v);
      pivot_bit.push_back(v & (~v + 1));
      return true;
    }
    void pop() {
      rows.pop_back();
      pivot_bit.pop_back();
    }
  };

  u64 spread(int col, u64 id) const {
    u64 v = 0;
    const auto& fr = free_rows[col];
    for (std::size_t t = 0; t < fr.size(); ++t)
      if (id & (u64(1) << t)) v |= u64(1) << fr[t];
    return v;
  }

  void dfs(Ctx& ctx, int col, int rank) {
    if (col == n) {
      ctx.by_rank[rank] += 1;
      return;
    }
    if (pruned(rank, col)) return;
    for (u64 id = 0; id < radix[col]; ++id) {
      ++ctx.work;
      const u64 v = spread(col, id);
      if (!v) {
        dfs(ctx, col + 1, rank);
        continue;
      }
      const bool grew = ctx.insert(v);
      dfs(ctx, col + 1, rank + (grew ? 1 : 0));
      if (grew) ctx.pop();
    }
  }

  RawResult run(int workers) {
    const int depth = frontier_depth(radix, radix.size());
    const u64 fsize = frontier_size(radix, depth);
    std::vector<std::vector<u128>> tallies(workers);
    std::vector<u64> works(workers, 0);
    run_workers(workers, [&](int w) {
      Ctx ctx(maxr);
      for (u64 idx = u64(w); idx < fsize; idx += u64(workers)) {
        u64 rem = idx;
        int rank = 0, pushed = 0;
        bool dead = false;
        for (int j = 0; j < depth; ++j) {
          const u64 id = rem % radix[j];
          rem /= radix[j];
          if (pruned(rank, j)) {
            dead = true;
            break;
          }
          ++ctx.work;
          const u64 v = spread(j, id);
          if (v && ctx.insert(v)) {
            ++rank;
            ++pushed;
          }
        }
        if (!dead) dfs(ctx, depth, rank);
        while (pushed--) ctx.pop();
      }
      tallies[w] = std::move(ctx.by_rank);
      works[w] = ctx.work;
    });
    RawResult res;
    res.by_rank.assign(maxr + 1, QInt(0));
    for (int w = 0; w < workers; ++w) {
      res.work += works[w];
      if (tallies[w].empty()) continue;
      for (int r = 0; r <= maxr; ++r) res.by_rank[r] += qint_from_u128(tallies[w][r]);
    }
    return res;
  }
};

// ---------------------------------------------------------------------------
// symmetric and skew classes: build leading blocks, classify at the leaves

int plain_rank_bytes(const std::uint8_t* a, int n, const gf::Field& F, std::uint8_t* scratch) {
  const gf::Elem* addt = F.add_table();
  const gf::Elem* mult = F.mul_table();
  const gf::Elem* negt = F.neg_table();
  const gf::Elem* invt = F.inv_table();
  const u64 q = F.q();
  std::copy(a, a + std::size_t(n) * n, scratch);
  auto at = [&](int r, int c) -> std::uint8_t& { return scratch[std::size_t(r) * n + c]; };
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (at(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int cc = c; cc < n; ++cc) std::swap(at(rank, cc), at(piv, cc));
    const std::uint8_t ip = std::uint8_t(invt[at(rank, c)]);
    for (int r = rank + 1; r < n; ++r) {
      if (!at(r, c)) continue;
      const std::uint8_t f = std::uint8_t(mult[u64(at(r, c)) * q + ip]);
      const std::uint8_t fn = std::uint8_t(negt[f]);
      for (int cc = c; cc < n; ++cc)
        at(r, cc) = std::uint8_t(addt[u64(at(r, cc)) * q + mult[u64(fn) * q + at(rank, cc)]]);
    }
    ++rank;
  }
  return rank;
}

// symmetric congruence elimination: rank and character sign in one pass
void classify_symmetric(const std::uint8_t* a, int n, const gf::Field& F,
                        const std::int8_t* lsign, std::uint8_t* scratch, int& rank, int& sign) {
  const gf::Elem* addt = F.add_table();
  const gf::Elem* mult = F.mul_table();
  const gf::Elem* negt = F.neg_table();
  const gf::Elem* invt = F.inv_table();
  const u64 q = F.q();
  std::copy(a, a + std::size_t(n) * n, scratch);
  auto at = [&](int r, int c) -> std::uint8_t& { return scratch[std::size_t(r) * n + c]; };
  rank = 0;
  sign = +1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int t = k; t < n; ++t)
      if (at(t, t)) {
        piv = t;
        break;
      }
    if (piv < 0) {
      int bi = -1, bj = -1;
      for (int i = k; i < n && bi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (at(i, j)) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;  // trailing block is zero
      for (int c = k; c < n; ++c) at(bi, c) = std::uint8_t(addt[u64(at(bi, c)) * q + at(bj, c)]);
      for (int r = k; r < n; ++r) at(r, bi) = std::uint8_t(addt[u64(at(r, bi)) * q + at(r, bj)]);
      piv = bi;
    }
    if (piv != k) {
      for (int c = k; c < n; ++c) std::swap(at(k, c), at(piv, c));
      for (int r = k; r < n; ++r) std::swap(at(r, k), at(r, piv));
    }
    const std::uint8_t d = at(k, k);
    sign *= lsign[d];
    ++rank;
    const std::uint8_t ip = std::uint8_t(invt[d]);
    for (int r = k + 1; r < n; ++r) {
      const std::uint8_t v = at(r, k);
      if (!v) continue;
      const std::uint8_t fn = std::uint8_t(negt[mult[u64(v) * q + ip]]);
      for (int c = k; c < n; ++c)
        at(r, c) = std::uint8_t(addt[u64(at(r, c)) * q + mult[u64(fn) * q + at(k, c)]]);
      for (int c = k; c < n; ++c)
        at(c, r) = std::uint8_t(addt[u64(at(c, r)) * q + mult[u64(fn) * q + at(c, k)]]);
    }
  }
}

template <class Acc>
struct SymmetricEngine {
  const gf::Field& F;
  const support::SupportSet& S;
  long q;
  bool skew;
  bool classify_char;
  std::optional<int> target;
  int n;
  std::vector<std::vector<int>> offs;  // per step: earlier rows with a free cell
  std::vector<bool> diag_free;
  std::vector<u64> radix;
  std::vector<std::int8_t> lsign;

  SymmetricEngine(const gf::Field& F_, const support::SupportSet& S_, bool skew_, bool char_,
                  std::optional<int> target_)
      : F(F_), S(S_), q(long(F_.q())), skew(skew_), classify_char(char_), target(target_),
        n(S_.n()) {
    offs.resize(n);
    diag_free.resize(n, false);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < k; ++i)
        if (!S.forbidden(i + 1, k + 1)) offs[k].push_back(i);
      diag_free[k] = !skew && !S.forbidden(k + 1, k + 1);
      const int npar = int(offs[k].size()) + (diag_free[k] ? 1 : 0);
      u64 c = 1;
      for (int t = 0; t < npar; ++t) c *= u64(q);
      radix.push_back(c);
    }
    if (classify_char) {
      lsign.resize(q, 0);
      for (long x = 1; x < q; ++x)
        lsign[x] = F.legendre(gf::Elem(x)) == gf::kPlus ? 1 : -1;
    }
  }

  struct Ctx {
    std::vector<std::uint8_t> mat, scratch, block, block_scratch;
    std::vector<typename Acc::Value> by_rank;
    std::vector<std::array<typename Acc::Value, 2>> by_char;
    u64 work = 0;
    Ctx(int n, bool char_)
        : mat(std::size_t(n) * n, 0), scratch(std::size_t(n) * n, 0),
          block(std::size_t(n) * n, 0), block_scratch(std::size_t(n) * n, 0),
          by_rank(n + 1, Acc::zero()) {
      if (char_) by_char.assign(n + 1, {Acc::zero(), Acc::zero()});
    }
  };

  void assign(Ctx& ctx, int k, u64 id) const {
    for (int i : offs[k]) {
      const std::uint8_t v = std::uint8_t(id % u64(q));
      id /= u64(q);
      ctx.mat[std::size_t(i) * n + k] = v;
      ctx.mat[std::size_t(k) * n + i] = skew ? std::uint8_t(F.neg_table()[v]) : v;
    }
    if (diag_free[k]) {
      ctx.mat[std::size_t(k) * n + k] = std::uint8_t(id % u64(q));
      id /= u64(q);
    }
  }

  // leading k x k block rank, for pruning
  bool pruned(Ctx& ctx, int k) const {
    if (!target || k == 0) return false;
    ++ctx.work;
    int rk;
    if (k == n) {
      rk = plain_rank_bytes(ctx.mat.data(), n, F, ctx.scratch.data());
    } else {
      for (int r = 0; r < k; ++r)
        std::copy(&ctx.mat[std::size_t(r) * n], &ctx.mat[std::size_t(r) * n] + k,
                  &ctx.block[std::size_t(r) * k]);
      rk = plain_rank_bytes(ctx.block.data(), k, F, ctx.block_scratch.data());
    }
    return rk > *target || rk + 2 * (n - k) < *target;
  }

  void leaf(Ctx& ctx) {
    ++ctx.work;
    if (classify_char) {
      int rank, sign;
      classify_symmetric(ctx.mat.data(), n, F, lsign.data(), ctx.scratch.data(), rank, sign);
      ctx.by_rank[rank] += 1;
      ctx.by_char[rank][sign > 0 ? 0 : 1] += 1;
    } else {
      const int rank = plain_rank_bytes(ctx.mat.data(), n, F, ctx.scratch.data());
      ctx.by_rank[rank] += 1;
    }
  }

  void dfs(Ctx& ctx, int k) {
    if (k == n) {
      leaf(ctx);
      return;
    }
    if (pruned(ctx, k)) return;
    for (u64 id = 0; id < radix[k]; ++id) {
      assign(ctx, k, id);
      dfs(ctx, k + 1);
    }
  }

  RawResult run(int workers) {
    const int depth = frontier_depth(radix, radix.size());
    const u64 fsize = frontier_size(radix, depth);
    std::vector<std::vector<typename Acc::Value>> tallies(workers);
    std::vector<std::vector<std::array<typename Acc::Value, 2>>> ctallies(workers);
    std::vector<u64> works(workers, 0);
    run_workers(workers, [&](int w) {
      Ctx ctx(n, classify_char);
      for (u64 idx = u64(w); idx < fsize; idx += u64(workers)) {
        u64 rem = idx;
        bool dead = false;
        for (int j = 0; j < depth; ++j) {
          if (pruned(ctx, j)) {
            dead = true;
            break;
          }
          assign(ctx, j, rem % radix[j]);
          rem /= radix[j];
        }
        if (!dead) dfs(ctx, depth);
      }
      tallies[w] = std::move(ctx.by_rank);
      ctallies[w] = std::move(ctx.by_char);
      works[w] = ctx.work;
    });
    RawResult res;
    res.by_rank.assign(n + 1, QInt(0));
    if (classify_char) res.by_char.assign(n + 1, {QInt(0), QInt(0)});
    for (int w = 0; w < workers; ++w) {
      res.work += works[w];
      if (tallies[w].empty()) continue;
      for (int r = 0; r <= n; ++r) {
        res.by_rank[r] += Acc::to_qint(tallies[w][r]);
        if (classify_char)
          for (int c = 0; c < 2; ++c) res.by_char[r][c] += Acc::to_qint(ctallies[w][r][c]);
      }
    }
    return res;
  }
};

// ---------------------------------------------------------------------------

bool fits_u128(long q, long free_count) {
  // all tallies are bounded by q^free_count
  QInt bound = pow_int(q, free_count);
  return bound < (QInt(1) << 120);
}

struct EnginePlan {
  bool projective = false;
  bool prune = false;
  bool transposed = false;
  std::string method;
};

EnginePlan plan_general(const CountQuery& query, const QInt& budget) {
  EnginePlan plan;
  Strategy st = query.strategy;
  if (st == Strategy::automatic)
    st = query.r ? Strategy::pruned_column_dfs : Strategy::projectivized;
  plan.projective = (st != Strategy::exhaustive);
  plan.prune = (st == Strategy::pruned_column_dfs) && query.r.has_value();
  plan.method = to_string(st == Strategy::pruned_column_dfs && !plan.prune ? Strategy::projectivized
                                                                           : st);
  QInt direct = estimate_general(query.S, query.q, plan.projective);
  QInt flipped = estimate_general(query.S.transpose(), query.q, plan.projective);
  if (flipped < direct) {
    plan.transposed = true;
    std::swap(direct, flipped);
  }
  check_budget(direct, budget, "count");
  return plan;
}

RawResult run_general(const CountQuery& query, const EnginePlan& plan, int workers) {
  const support::SupportSet S = plan.transposed ? query.S.transpose() : query.S;
  std::optional<int> target = plan.prune ? query.r : std::nullopt;
  if (query.q == 2) {
    GeneralEngineBits engine(S, target);
    return engine.run(workers);
  }
  auto field = cached_field(query.q);
  if (!field->has_tables()) throw OutOfRange("oracle enumeration supports q <= 256 only");
  if (fits_u128(query.q, S.free_count())) {
    GeneralEngineBytes<AccU128> engine(*field, S, plan.projective, target);
    return engine.run(workers);
  }
  GeneralEngineBytes<AccQInt> engine(*field, S, plan.projective, target);
  return engine.run(workers);
}

RawResult run_symmetric(const CountQuery& query, bool skew, bool want_char, std::optional<int> target,
                        int workers) {
  auto field = cached_field(query.q);
  if (!field->has_tables()) throw OutOfRange("oracle enumeration supports q <= 256 only");
  const long fc = skew ? query.S.free_count_skew() : query.S.free_count_symmetric();
  if (fits_u128(query.q, fc)) {
    SymmetricEngine<AccU128> engine(*field, query.S, skew, want_char, target);
    return engine.run(workers);
  }
  SymmetricEngine<AccQInt> engine(*field, query.S, skew, want_char, target);
  return engine.run(workers);
}

}  // namespace

const char* to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::general: return "general";
    case MatrixClass::symmetric: return "symmetric";
    case MatrixClass::skew: return "skew";
    case MatrixClass::symmetric_with_character: return "symmetric_with_character";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::exhaustive: return "exhaustive";
    case Strategy::projectivized: return "projectivized";
    case Strategy::pruned_column_dfs: return "pruned_column_dfs";
  }
  return "?";
}

std::optional<MatrixClass> matrix_class_from_string(const std::string& s) {
  if (s == "general") return MatrixClass::general;
  if (s == "symmetric") return MatrixClass::symmetric;
  if (s == "skew") return MatrixClass::skew;
  if (s == "symmetric_with_character") return MatrixClass::symmetric_with_character;
  return std::nullopt;
}

QInt default_budget() { return resolve_budget(std::nullopt); }

long CountQuery::class_free_count() const {
  switch (cls) {
    case MatrixClass::general: return S.free_count();
    case MatrixClass::symmetric:
    case MatrixClass::symmetric_with_character: return S.free_count_symmetric();
    case MatrixClass::skew: return S.free_count_skew();
  }
  return S.free_count();
}

void CountQuery::validate() const {
  if (q < 2) throw OutOfRange("q must be at least 2");
  cached_field(q);  // throws NotAPrimePower when q is composite non-power
  if (r && (*r < 0 || *r > std::min(m(), n()))) throw OutOfRange("rank out of range");
  if (cls != MatrixClass::general) {
    if (m() != n()) throw OutOfRange("symmetric/skew classes need a square grid");
    if (!S.transpose_symmetric())
      throw NotSymmetric("symmetric/skew classes need a transpose-symmetric support set");
  }
  if (cls == MatrixClass::symmetric_with_character) {
    if (q % 2 == 0)
      throw EvenCharacteristic("character classification requires odd characteristic");
  }
  if (character && cls != MatrixClass::symmetric_with_character)
    throw OutOfRange("character filter requires class symmetric_with_character");
}

QInt RankTable::total() const {
  QInt t = 0;
  for (const auto& v : by_rank) t += v;
  return t;
}

RankTable count_table(const CountQuery& query) {
  query.validate();
  const auto t0 = Clock::now();
  const QInt budget = resolve_budget(query.budget);
  const int workers = resolve_workers(query.workers);
  RankTable table;
  if (query.cls == MatrixClass::general) {
    CountQuery full = query;
    full.r.reset();  // full distribution: no pruning
    EnginePlan plan = plan_general(full, budget);
    RawResult raw = run_general(full, plan, workers);
    table.by_rank = std::move(raw.by_rank);
    table.work = raw.work;
    table.method = plan.method;
  } else {
    const bool skew = query.cls == MatrixClass::skew;
    const bool want_char = query.cls == MatrixClass::symmetric_with_character;
    check_budget(pow_int(query.q, query.class_free_count()), budget, "count");
    RawResult raw = run_symmetric(query, skew, want_char, std::nullopt, workers);
    table.by_rank = std::move(raw.by_rank);
    table.by_char = std::move(raw.by_char);
    table.work = raw.work;
    table.method = "exhaustive";
  }
  table.elapsed_sec = seconds_since(t0);
  return table;
}

CountValue count_restricted(const CountQuery& query) {
  query.validate();
  if (!query.r) throw OutOfRange("count_restricted needs a target rank; use count_table for all");
  const auto t0 = Clock::now();
  const QInt budget = resolve_budget(query.budget);
  const int workers = resolve_workers(query.workers);
  const int r = *query.r;
  CountValue out;

  if (query.cls == MatrixClass::skew && r % 2 == 1) {
    out.value = 0;  // skew-symmetric matrices have even rank
    out.method = "parity";
    out.elapsed_sec = seconds_since(t0);
    return out;
  }

  if (query.cls == MatrixClass::general) {
    EnginePlan plan = plan_general(query, budget);
    RawResult raw = run_general(query, plan, workers);
    out.value = raw.by_rank[r];
    out.work = raw.work;
    out.method = plan.method;
  } else {
    if (query.strategy == Strategy::projectivized)
      throw Error("projectivized strategy applies to the general class only");
    const bool skew = query.cls == MatrixClass::skew;
    const bool want_char = query.cls == MatrixClass::symmetric_with_character;
    if (want_char && !query.character)
      throw OutOfRange("symmetric_with_character needs a character filter");
    check_budget(pow_int(query.q, query.class_free_count()), budget, "count");
    const bool prune = query.strategy != Strategy::exhaustive;
    RawResult raw =
        run_symmetric(query, skew, want_char, prune ? query.r : std::nullopt, workers);
    out.value = want_char ? raw.by_char[r][*query.character == gf::kPlus ? 0 : 1] : raw.by_rank[r];
    out.work = raw.work;
    out.method = prune ? "pruned_column_dfs" : "exhaustive";
  }
  out.elapsed_sec = seconds_since(t0);
  return out;
}

RankTable count_rank_character_table(int n, const support::SupportSet& S, long q, int workers,
                                     std::optional<QInt> budget) {
  if (S.m() != n || S.n() != n) throw OutOfRange("support set size mismatch");
  CountQuery query(S, q);
  query.cls = MatrixClass::symmetric_with_character;
  query.workers = workers;
  query.budget = std::move(budget);
  return count_table(query);
}

BruhatCells bruhat_cells_impl(int n, long q, int workers, const QInt& budget) {
  auto field = cached_field(q);
  if (!field->has_tables()) throw OutOfRange("oracle enumeration supports q <= 256 only");
  const auto t0 = Clock::now();
  support::SupportSet S = support::diagonal_prefix(n, n);

  // projectivized full-rank sweep; the Bruhat permutation is invariant under
  // column scaling so each orbit contributes (q-1)^n
  std::vector<ColumnSpec> cols = column_specs(S, q, true);
  std::vector<u64> radix;
  for (auto& c : cols) radix.push_back(c.cand);
  QInt est = estimate_general(S, q, true);
  check_budget(est, budget, "bruhat_cell_counts");

  const int depth = frontier_depth(radix, radix.size());
  const u64 fsize = frontier_size(radix, depth);
  const QInt orbit = pow_int(QInt(q) - 1, n);

  std::vector<std::map<matq::Permutation, u64>> maps(workers);
  std::vector<u64> works(workers, 0);
  run_workers(workers, [&](int w) {
    ByteEchelon ech(*field, n);
    std::array<std::uint8_t, 64> buf;
    std::vector<std::array<std::uint8_t, 64>> colvals(n);
    std::map<matq::Permutation, u64>& cells = maps[w];
    u64 work = 0;

    // recursive full-rank DFS; every column must raise the rank
    auto dfs = [&](auto&& self, int col) -> void {
      if (col == n) {
        matq::Matrix a(field, n, n);
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) a.set(i, j, colvals[j][i]);
        cells[matq::bruhat_permutation(a)] += 1;
        return;
      }
      for (u64 id = 1; id < radix[col]; ++id) {  // id 0 is the zero column
        ++work;
        decode_column_bytes(cols[col], id, true, q, buf.data(), n);
        colvals[col] = buf;
        if (!ech.insert(buf.data())) continue;
        self(self, col + 1);
        ech.pop();
      }
    };

    for (u64 idx = u64(w); idx < fsize; idx += u64(workers)) {
      u64 rem = idx;
      int pushed = 0;
      bool dead = false;
      for (int j = 0; j < depth && !dead; ++j) {
        const u64 id = rem % radix[j];
        rem /= radix[j];
        if (id == 0) {
          dead = true;  // zero column cannot reach full rank
          break;
        }
        ++work;
        decode_column_bytes(cols[j], id, true, q, buf.data(), n);
        colvals[j] = buf;
        if (!ech.insert(buf.data())) {
          dead = true;
          break;
        }
        ++pushed;
      }
      if (!dead) dfs(dfs, depth);
      while (pushed--) ech.pop();
    }
    works[w] = work;
  });

  BruhatCells out;
  out.n = n;
  out.q = q;
  out.method = "projectivized";
  out.total = 0;
  // include empty cells for every permutation
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  do {
    matq::Permutation w;
    w.images = perm;
    out.cells[w] = 0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (int w = 0; w < workers; ++w) {
    out.work += works[w];
    for (auto& [perm_w, count] : maps[w]) {
      QInt v = QInt(count) * orbit;
      out.cells[perm_w] += v;
      out.total += v;
    }
  }
  out.elapsed_sec = seconds_since(t0);
  return out;
}

BruhatCells bruhat_cell_counts(int n, long q, int workers, std::optional<QInt> budget) {
  if (n < 1) throw OutOfRange("bruhat_cell_counts: need n >= 1");
  if (!budget) {
    const int bound = q == 2 ? 5 : (q == 3 ? 4 : 3);
    if (n > bound)
      throw BudgetExceeded("bruhat_cell_counts: n exceeds the default bound " +
                               std::to_string(bound) + " for q = " + std::to_string(q) +
                               "; pass an explicit budget to override",
                           estimate_general(support::diagonal_prefix(n, n), q, true).str());
  }
  return bruhat_cells_impl(n, q, resolve_workers(workers), resolve_budget(budget));
}

CountValue quadratic_form_zero_count(int m, long q, gf::Character psi) {
  if (m < 1) throw OutOfRange("quadratic_form_zero_count: need m >= 1");
  if (q % 2 == 0) throw EvenCharacteristic("quadratic_form_zero_count requires odd q");
  auto field = cached_field(q);
  if (!field->has_tables()) throw OutOfRange("oracle enumeration supports q <= 256 only");
  const auto t0 = Clock::now();
  check_budget(pow_int(q, m), resolve_budget(std::nullopt), "quadratic_form_zero_count");
  const gf::Field& F = *field;
  const gf::Elem twist = psi == gf::kPlus ? gf::Elem(1) : F.least_nonsquare();

  u64 count = 0, work = 0;
  // direct enumeration with running partial sums
  auto dfs = [&](auto&& self, int i, gf::Elem sum) -> void {
    if (i == m) {
      ++work;
      if (sum == 0) ++count;
      return;
    }
    const gf::Elem scale = (i == m - 1) ? twist : gf::Elem(1);
    for (long x = 0; x < q; ++x) {
      gf::Elem sq = F.mul(gf::Elem(x), gf::Elem(x));
      self(self, i + 1, F.add(sum, F.mul(scale, sq)));
    }
  };
  dfs(dfs, 0, 0);

  CountValue out;
  out.value = count;
  out.method = "exhaustive";
  out.work = work;
  out.elapsed_sec = seconds_since(t0);
  return out;
}

QInt bilinear_equation_count(int n, long q, bool target_zero) {
  if (n < 1) throw OutOfRange("bilinear_equation_count: need N >= 1");
  auto field = cached_field(q);
  const gf::Field& F = *field;
  // DP over the partial sum value; exact and independent of the closed forms
  std::vector<QInt> cur(q, 0), next(q);
  cur[0] = 1;
  for (int i = 0; i < n; ++i) {
    std::fill(next.begin(), next.end(), QInt(0));
    for (long v = 0; v < q; ++v) {
      if (cur[v] == 0) continue;
      for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b)
          next[F.add(gf::Elem(v), F.mul(gf::Elem(a), gf::Elem(b)))] += cur[v];
    }
    cur.swap(next);
  }
  return target_zero ? cur[0] : cur[1];
}

}  // namespace qmat::oracle
