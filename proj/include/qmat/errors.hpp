#ifndef QMAT_ERRORS_HPP
#define QMAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace qmat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAPrimePower : Error {
  using Error::Error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct EvenCharacteristic : Error {
  using Error::Error;
};
struct OddCharacteristic : Error {
  using Error::Error;
};
struct ZeroArgument : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct NegativeArgument : Error {
  using Error::Error;
};
struct OddRank : Error {
  using Error::Error;
};
struct NotNested : Error {
  using Error::Error;
};
struct ApexMissing : Error {
  using Error::Error;
};
struct Singular : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct DuplicateAbscissa : Error {
  using Error::Error;
};

// A formula whose final value must be a matrix count failed to reduce to an
// integer; loud so that transcription typos surface immediately.
struct IntegralityError : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& msg, const std::string& estimate_)
      : Error(msg), estimate(estimate_) {}
  std::string estimate;  // decimal string of the work estimate
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset_, std::vector<std::string> expected_)
      : Error(msg), offset(offset_), expected(std::move(expected_)) {}
  std::size_t offset;
  std::vector<std::string> expected;
};

}  // namespace qmat

#endif
