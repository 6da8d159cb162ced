#include "qmat/polyprobe.hpp"

#include <algorithm>
#include <thread>

namespace qmat::polyprobe {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::inconsistent: return "inconsistent";
    case Verdict::insufficient: return "insufficient";
  }
  return "?";
}

QPolynomial interpolate_exact(const std::vector<std::pair<long, QInt>>& points) {
  if (points.empty()) throw OutOfRange("interpolate_exact: need at least one point");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw DuplicateAbscissa("interpolate_exact: repeated q value " +
                                std::to_string(points[i].first));
  // Newton form: divided differences, then expansion to the monomial basis.
  const std::size_t k = points.size();
  std::vector<QRat> dd(k);
  for (std::size_t i = 0; i < k; ++i) dd[i] = QRat(points[i].second);
  for (std::size_t level = 1; level < k; ++level)
    for (std::size_t i = k - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / QRat(points[i].first - points[i - level].first);
  QPolynomial result;
  QPolynomial basis = QPolynomial::constant(1);
  for (std::size_t i = 0; i < k; ++i) {
    result += basis * dd[i];
    basis = basis * QPolynomial({QRat(-points[i].first), QRat(1)});
  }
  return result;
}

ProbeResult probe_with(const std::function<QInt(long)>& count_at, long degree_bound,
                       const std::vector<long>& q_list, int holdout, int workers) {
  if (holdout < 0 || int(q_list.size()) < holdout + 2)
    throw OutOfRange("probe: need |q_list| >= holdout + 2");
  std::vector<long> qs = q_list;
  std::sort(qs.begin(), qs.end());
  for (std::size_t i = 1; i < qs.size(); ++i)
    if (qs[i] == qs[i - 1]) throw DuplicateAbscissa("probe: repeated q value");

  ProbeResult res;
  res.degree_bound = degree_bound;

  // counts for distinct q run concurrently; partial data is kept if a
  // BudgetExceeded (or any error) aborts one of them
  if (workers <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    workers = hw ? int(hw) : 1;
  }
  const int nthreads = std::min<int>(workers, int(qs.size()));
  std::vector<std::optional<QInt>> values(qs.size());
  std::vector<std::exception_ptr> errors(qs.size());
  auto run_slice = [&](int t) {
    for (std::size_t i = t; i < qs.size(); i += nthreads) {
      try {
        values[i] = count_at(qs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (nthreads <= 1) {
    run_slice(0);
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < nthreads; ++t) threads.emplace_back(run_slice, t);
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 0; i < qs.size(); ++i)
    if (values[i]) res.samples.emplace_back(qs[i], *values[i]);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const BudgetExceeded& e) {
      throw ProbeBudgetExceeded(e, std::move(res));  // partial samples retained
    }
  }

  res.points_below_bound = long(res.samples.size()) <= degree_bound;
  if (int(res.samples.size()) < 2 || int(res.samples.size()) <= holdout) {
    res.verdict = Verdict::insufficient;
    return res;
  }

  const std::size_t fit_count = res.samples.size() - holdout;
  std::vector<std::pair<long, QInt>> fit_points(res.samples.begin(),
                                                res.samples.begin() + fit_count);
  res.fitted = interpolate_exact(fit_points);
  if (holdout == 0) {
    res.verdict = Verdict::insufficient;  // nothing held out: no cross-validation
  } else {
    bool all_match = true;
    for (std::size_t i = fit_count; i < res.samples.size(); ++i) {
      const auto& [q, actual] = res.samples[i];
      HeldOut h;
      h.q = q;
      h.actual = actual;
      h.expected = res.fitted->eval(q);
      all_match = all_match && (QRat(actual) == h.expected);
      res.residuals.push_back(std::move(h));
    }
    res.verdict = all_match ? Verdict::consistent : Verdict::inconsistent;
  }

  // separate even-q / odd-q fits, when both parities have enough points
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::pair<long, QInt>> sub;
    for (const auto& p : res.samples)
      if (p.first % 2 == parity) sub.push_back(p);
    if (sub.size() >= 2) {
      ParityFit pf;
      pf.parity = parity == 0 ? "even" : "odd";
      for (const auto& p : sub) pf.qs.push_back(p.first);
      pf.fitted = interpolate_exact(sub);
      res.parity_fits.push_back(std::move(pf));
    }
  }
  return res;
}

ProbeResult probe(const oracle::CountQuery& query_template, const std::vector<long>& q_list,
                  int holdout) {
  auto count_at = [&](long q) -> QInt {
    oracle::CountQuery query = query_template;
    query.q = q;
    query.workers = 1;  // parallelism lives across the q values here
    if (!query.r) {
      return oracle::count_table(query).total();
    }
    return oracle::count_restricted(query).value;
  };
  return probe_with(count_at, query_template.class_free_count(), q_list, holdout,
                    query_template.workers);
}

}  // namespace qmat::polyprobe
