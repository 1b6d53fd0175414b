#pragma once

namespace zpgd {

// Tail integral of exp(-s^2) together with its logarithm. value underflows
// to zero past z of about 26.6 while log_value stays finite.
struct ErfcValue {
  double value;
  double log_value;
};

// erfc_tail(z) = integral of exp(-s^2) over [z, inf).
// Unnormalized convention: equals sqrt(pi)/2 * std::erfc(z). Positive and
// strictly decreasing. Throws std::domain_error on a non-finite argument.
double erfc_tail(double z);

ErfcValue erfc_tail_value(double z);

// Logarithm of erfc_tail(z), finite for every finite z of ordinary size.
// Direct evaluation up to z = 8; beyond that an alternating asymptotic
// series truncated at its smallest term (the first omitted term bounds the
// truncation error, about 3e-17 relative at the switch point).
double log_erfc_tail(double z);

// z * erfc_tail(z) * exp(z^2). Increases from 0 toward 1/2 on [0, inf);
// the gap 1/2 - f(z) stays below 1/(2 z^2) for z >= 2. Direct formula for
// z <= 0 (the value overflows to -inf near z = -27); z < -40 throws
// std::range_error instead of producing an astronomic magnitude silently.
double erfc_scaled(double z);

// log erfc_tail(|x-p|/sqrt(2 t eps)) - log erfc_tail(|x-q|/sqrt(2 t eps)).
// degenerate marks the equidistant point |x-p| == |x-q|, where the ratio
// stays bounded as eps shrinks instead of collapsing to 0 or infinity.
struct LogErfcRatio {
  double value;
  bool degenerate;
};

LogErfcRatio log_erfc_ratio(double p, double q, double x, double t, double eps);

}  // namespace zpgd
