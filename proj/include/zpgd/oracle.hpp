#pragma once

#include "zpgd/signed_log_sum.hpp"
#include "zpgd/types.hpp"

namespace zpgd {

// Controls for the direct-quadrature evaluator. The window half-width is
// measured in units of sqrt(2 t eps); values below 8 are clamped up to 8,
// keeping the truncated kernel tails below exp(-64) of each piece's peak.
struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  int max_subdivisions = 400;
  double window_halfwidth_sigmas = 12.0;
};

// Kernel averages computed by adaptive Gauss-Kronrod quadrature on the
// initial profiles, independent of the closed-form evaluator. V and S carry
// the same normalization as the closed forms, so the results are directly
// comparable. Throws QuadratureConvergenceError when the subdivision budget
// runs out; its best_estimate and error_bound are expressed relative to the
// dominant contribution of the failing integral.
SignedLog oracle_V(const DeltaRiemannData& data, double eps, double x,
                   double t, const QuadratureSpec& spec = {});
SignedLog oracle_S(const DeltaRiemannData& data, double eps, double x,
                   double t, const QuadratureSpec& spec = {});

double oracle_u(const DeltaRiemannData& data, double eps, double x, double t,
                const QuadratureSpec& spec = {});
double oracle_R(const DeltaRiemannData& data, double eps, double x, double t,
                const QuadratureSpec& spec = {});

}  // namespace zpgd
