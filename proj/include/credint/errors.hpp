#pragma once

#include <stdexcept>
#include <string>

namespace credint {

// Argument outside the mathematical domain of an operation (p outside (0,1),
// alpha_x outside [0, alpha], t below y0 for the spending band, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A pivot distribution whose cdf cannot be inverted: no bracket within the
// support, or a flat stretch where a unique quantile is required.
class DistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// 1 - G(-t) underflowed: the observation carries no posterior mass on tau >= 0.
class DegeneratePosteriorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pivot-quantile choice with a1 - a2 * gamma1 < 0.
class FeasibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Spending function that fails the admissibility check; coverage runs refuse it.
class InadmissibleSpendingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace credint
