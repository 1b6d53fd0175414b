#include "zpgd/erfc.hpp"

#include <cmath>
#include <stdexcept>

namespace zpgd {

namespace {

constexpr double kSqrtPiHalf = 0.8862269254527580;  // sqrt(pi)/2
constexpr double kSeriesSwitch = 8.0;

void require_finite(double z) {
  if (!std::isfinite(z)) {
    throw std::domain_error("erfc argument must be finite");
  }
}

// exp(z^2) * erfc_tail(z) for large positive z. Alternating series in
// 1/(2 z^2); terms shrink until k is near z^2, far past double precision
// for z >= 8, so truncation at the smallest term is exact to working
// precision.
double scaled_tail_series(double z) {
  const double w = 1.0 / (2.0 * z * z);
  double term = 1.0 / (2.0 * z);
  double sum = term;
  double prev = std::abs(term);
  for (int k = 1; k < 80; ++k) {
    term *= -(2.0 * k - 1.0) * w;
    const double mag = std::abs(term);
    if (mag >= prev) break;
    sum += term;
    prev = mag;
    if (mag <= std::abs(sum) * 1e-18) break;
  }
  return sum;
}

}  // namespace

double log_erfc_tail(double z) {
  require_finite(z);
  if (z <= kSeriesSwitch) {
    return std::log(kSqrtPiHalf * std::erfc(z));
  }
  return -z * z + std::log(scaled_tail_series(z));
}

double erfc_tail(double z) {
  require_finite(z);
  if (z <= kSeriesSwitch) {
    return kSqrtPiHalf * std::erfc(z);
  }
  return std::exp(log_erfc_tail(z));
}

ErfcValue erfc_tail_value(double z) {
  require_finite(z);
  if (z <= kSeriesSwitch) {
    const double v = kSqrtPiHalf * std::erfc(z);
    return {v, std::log(v)};
  }
  const double lg = log_erfc_tail(z);
  return {std::exp(lg), lg};
}

double erfc_scaled(double z) {
  require_finite(z);
  if (z < -40.0) {
    throw std::range_error("erfc_scaled argument below -40");
  }
  if (z <= 0.0) {
    return z * erfc_tail(z) * std::exp(z * z);
  }
  if (z <= kSeriesSwitch) {
    return z * (kSqrtPiHalf * std::erfc(z)) * std::exp(z * z);
  }
  return z * scaled_tail_series(z);
}

LogErfcRatio log_erfc_ratio(double p, double q, double x, double t, double eps) {
  for (double v : {p, q, x, t, eps}) {
    if (!std::isfinite(v)) {
      throw std::domain_error("log_erfc_ratio arguments must be finite");
    }
  }
  if (!(t > 0.0) || !(eps > 0.0)) {
    throw std::domain_error("log_erfc_ratio requires t > 0 and eps > 0");
  }
  if (p == q) {
    throw std::domain_error("log_erfc_ratio requires distinct nodes");
  }
  const double s = std::sqrt(2.0 * t * eps);
  const double dp = std::abs(x - p);
  const double dq = std::abs(x - q);
  return {log_erfc_tail(dp / s) - log_erfc_tail(dq / s), dp == dq};
}

}  // namespace zpgd
