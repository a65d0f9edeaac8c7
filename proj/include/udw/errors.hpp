#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace udw {

// Best estimate carried by an AccuracyError so callers can still inspect it.
struct ErrorEstimate {
  std::complex<double> value{0.0, 0.0};
  double abs_err = 0.0;
};

// A quadrature or series failed to reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, ErrorEstimate best)
      : std::runtime_error(what), best_(best) {}
  const ErrorEstimate& best() const noexcept { return best_; }

 private:
  ErrorEstimate best_;
};

// Parameters outside the supported domain (L too small, negative gap, ...).
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

// Caller violated an interface contract (bad bracket, too few samples, ...).
class ContractError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A principal-value root with |u'(s*)| below the supported floor.
class DegeneracyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace udw
