#pragma once

#include "zpgd/signed_log_sum.hpp"
#include "zpgd/types.hpp"

namespace zpgd {

// Gaussian-scaled distances to the four nodes: |x - p| / sqrt(2 t eps).
struct ScaledVariables {
  double A, B, C, D;
};

ScaledVariables scaled_variables(const DeltaRiemannData& data, double x, double t,
                                 double eps);

// 1..5 for the open intervals cut by the nodes a, c, b, d, left to right.
// Throws JumpEvaluationError exactly at a node.
int region_of(const DeltaRiemannData& data, double x);

// Step profiles of the integrated variables at t = 0: U0 jumps by ua at a
// and by ub at b; R0 jumps by rhoc at c and by rhod at d.
struct InitialProfiles {
  double U0;
  double R0;
};

InitialProfiles initial_profiles(const DeltaRiemannData& data, double x);

// Kernel averages of the transformed pair as term lists. Scaled so that V
// collapses to the average itself (identically 1 for zero velocity
// weights). Each list is one plateau term plus one tail-integral
// correction per jump; everything stays in log space, so exp(K/eps) never
// materializes. At a node the left-sided form is returned (the sides
// agree).
struct ViscousVS {
  SignedLogSum V, S;
};

ViscousVS viscous_V_S(const DeltaRiemannData& data, double eps, double x, double t);

// Regularized velocity. Zero when both weights vanish. The collapsed
// denominator is certified positive; a nonpositive collapse throws
// std::logic_error. Finite across eps >= 1e-6, |x| <= 1e3, t in
// [1e-3, 1e3].
double viscous_u(const DeltaRiemannData& data, double eps, double x, double t);

// -eps d/dx log V assembled by differentiating the V list term by term.
// Agrees with viscous_u to rounding; serves as the identity cross-check.
double viscous_u_from_V(const DeltaRiemannData& data, double eps, double x, double t);

// Density ratio S/V: a positively weighted average of {0, rhoc,
// rhoc+rhod}, checked against that band with slack 1e-9.
double viscous_R(const DeltaRiemannData& data, double eps, double x, double t);

// Spatial derivative of the density ratio, used to localize the spikes.
double viscous_R_x(const DeltaRiemannData& data, double eps, double x, double t);

}  // namespace zpgd
