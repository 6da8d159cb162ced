#ifndef QMAT_VERIFY_HPP
#define QMAT_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmat/bigint.hpp"

namespace qmat::verify {

struct CheckRow {
  std::string name;
  bool pass;
  std::string lhs, rhs;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRow> checks;
  bool pass = true;
  double elapsed_sec = 0;
  std::uint64_t work = 0;

  void add(const std::string& name, bool ok, const std::string& lhs = "", const std::string& rhs = "");
  void expect_eq(const std::string& name, const QInt& lhs, const QInt& rhs);
  void expect_eq(const std::string& name, const QRat& lhs, const QRat& rhs);
  int failures() const;
  // JSON document; wall-clock fields are omitted when include_timing is false
  // so that reports can be compared bit-for-bit across worker counts.
  std::string to_json(bool include_timing, bool include_rows = true) const;
};

struct SuiteOptions {
  int workers = 0;  // 0 = available parallelism
  std::optional<QInt> budget;
  std::optional<long> only_q;  // restrict a suite's checks to one field order
};

// One suite per verified result; "all" runs every suite in order.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace qmat::verify

#endif
