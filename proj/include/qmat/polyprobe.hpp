#ifndef QMAT_POLYPROBE_HPP
#define QMAT_POLYPROBE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmat/oracle.hpp"
#include "qmat/qpoly.hpp"

namespace qmat::polyprobe {

// Unique polynomial of degree < #points through the given (q, value) points,
// with exact rational coefficients.
QPolynomial interpolate_exact(const std::vector<std::pair<long, QInt>>& points);

enum class Verdict { consistent, inconsistent, insufficient };
const char* to_string(Verdict v);

struct HeldOut {
  long q;
  QRat expected;  // fit evaluated at q
  QInt actual;    // counted value
};

struct ParityFit {
  std::string parity;  // "even" or "odd"
  QPolynomial fitted;
  std::vector<long> qs;
};

struct ProbeResult {
  Verdict verdict = Verdict::insufficient;
  std::optional<QPolynomial> fitted;
  std::vector<std::pair<long, QInt>> samples;
  std::vector<HeldOut> residuals;
  long degree_bound = 0;            // class free count of S
  bool points_below_bound = false;  // #points <= degree bound: evidence only
  std::vector<ParityFit> parity_fits;
};

// Thrown when a per-q count blows the budget; the samples that did finish
// ride along.
struct ProbeBudgetExceeded : BudgetExceeded {
  ProbeBudgetExceeded(const BudgetExceeded& cause, ProbeResult partial_)
      : BudgetExceeded(cause.what(), cause.estimate), partial(std::move(partial_)) {}
  ProbeResult partial;
};

// Counts the query at every q in q_list, fits on all but the `holdout`
// largest q, and grades the evidence.  Counts for distinct q run
// concurrently.  BudgetExceeded propagates with partial data retained.
ProbeResult probe(const oracle::CountQuery& query_template, const std::vector<long>& q_list,
                  int holdout);

// Same, with an arbitrary exact count source (oracle or formula).
ProbeResult probe_with(const std::function<QInt(long)>& count_at, long degree_bound,
                       const std::vector<long>& q_list, int holdout, int workers = 0);

}  // namespace qmat::polyprobe

#endif
