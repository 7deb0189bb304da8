#ifndef MTC_ERROR_HPP
#define MTC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mtc {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of a routine.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A series, iteration or quadrature failed to converge.
class NumericError : public Error {
public:
  NumericError(const std::string& routine, const std::string& detail, int iterations = 0,
               double last_estimate = 0.0)
      : Error(routine + ": " + detail), routine_(routine), iterations_(iterations),
        last_estimate_(last_estimate) {}

  const std::string& routine() const { return routine_; }
  int iterations() const { return iterations_; }
  double last_estimate() const { return last_estimate_; }

private:
  std::string routine_;
  int iterations_;
  double last_estimate_;
};

}  // namespace mtc

#endif
