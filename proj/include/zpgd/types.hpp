#pragma once

#include <stdexcept>
#include <string>

namespace zpgd {

// Velocity weight pattern outside the classification table (ua or ub zero).
class UncoveredCaseError : public std::domain_error {
 public:
  explicit UncoveredCaseError(const std::string& msg) : std::domain_error(msg) {}
};

// Pointwise query landed exactly on an initial-data jump where the
// requested quantity is not single-valued.
class JumpEvaluationError : public std::domain_error {
 public:
  explicit JumpEvaluationError(const std::string& msg) : std::domain_error(msg) {}
};

// Quadrature subdivision budget exhausted. Carries the best estimate and
// the error bound it reached.
class QuadratureConvergenceError : public std::runtime_error {
 public:
  QuadratureConvergenceError(const std::string& msg, double best, double bound)
      : std::runtime_error(msg), best_estimate(best), error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

// Peak search failed to bracket an interior maximum.
class LocalizationError : public std::runtime_error {
 public:
  explicit LocalizationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller-supplied grid or schedule leaves nothing to evaluate.
class ConfigurationError : public std::invalid_argument {
 public:
  explicit ConfigurationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Side selector for one-sided evaluation at a discontinuity.
enum class Side { Left, Right };

// Two-impulse initial data: velocity impulses ua at x = a and ub at x = b,
// mass impulses rhoc at x = c and rhod at x = d. Admissible ordering is
// a < c < b < d strictly, every field finite.
struct DeltaRiemannData {
  double a = 0.0;
  double c = 0.5;
  double b = 1.0;
  double d = 2.0;
  double ua = 0.0;
  double ub = 0.0;
  double rhoc = 0.0;
  double rhod = 0.0;
};

// Throws std::domain_error unless the ordering is strict and all fields
// are finite.
void validate(const DeltaRiemannData& data);

}  // namespace zpgd
