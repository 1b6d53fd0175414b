#include "zpgd/signed_log_sum.hpp"

#include <algorithm>
#include <stdexcept>

namespace zpgd {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

SignedLog signed_log_of(double v) {
  if (v == 0.0) return {0, kNegInf};
  return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
}

double log1mexp(double y) {
  if (!(y > 0.0)) {
    throw std::domain_error("log1mexp requires a positive argument");
  }
  // Split at ln 2 keeps both log1p and expm1 in their accurate ranges.
  constexpr double kLn2 = 0.6931471805599453;
  if (y > kLn2) return std::log1p(-std::exp(-y));
  return std::log(-std::expm1(-y));
}

void SignedLogSum::add(int sign, double log_abs) {
  if (sign == 0 || log_abs == kNegInf) return;
  if (std::isnan(log_abs)) {
    throw std::invalid_argument("SignedLogSum: NaN log magnitude");
  }
  terms_.push_back({sign > 0 ? 1 : -1, log_abs});
}

void SignedLogSum::add(SignedLog term) { add(term.sign, term.log_abs); }

void SignedLogSum::add_value(double v) { add(signed_log_of(v)); }

double SignedLogSum::peak_log() const {
  double peak = kNegInf;
  for (const auto& t : terms_) peak = std::max(peak, t.log_abs);
  return peak;
}

SignedLog SignedLogSum::collapse() const {
  if (terms_.empty()) return {0, kNegInf};
  std::vector<SignedLog> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [](const SignedLog& l, const SignedLog& r) {
    if (l.log_abs != r.log_abs) return l.log_abs > r.log_abs;
    return l.sign > r.sign;
  });
  const double pivot = sorted.front().log_abs;
  double acc = 0.0;
  for (const auto& t : sorted) {
    acc += t.sign * std::exp(t.log_abs - pivot);
  }
  if (acc == 0.0) return {0, kNegInf};
  return {acc > 0.0 ? 1 : -1, pivot + std::log(std::abs(acc))};
}

}  // namespace zpgd
