#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace zpgd {

// One signed magnitude kept in log space: sign * exp(log_abs).
// sign == 0 encodes an exact zero; log_abs is then -inf.
struct SignedLog {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

SignedLog signed_log_of(double v);

// log(1 - exp(-y)) for y > 0, accurate for both tiny and large y.
double log1mexp(double y);

// Accumulator for signed exponential-scale terms that never leaves log
// space. collapse() sorts the terms before the pivoted accumulation, so any
// insertion order produces bitwise identical output.
class SignedLogSum {
 public:
  // Zero terms (sign == 0 or log_abs == -inf) are dropped on entry.
  void add(int sign, double log_abs);
  void add(SignedLog term);
  void add_value(double v);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<SignedLog>& terms() const { return terms_; }

  // Largest log magnitude among the terms, -inf when empty.
  double peak_log() const;

  SignedLog collapse() const;

 private:
  std::vector<SignedLog> terms_;
};

}  // namespace zpgd
