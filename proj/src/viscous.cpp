#include "zpgd/viscous.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "zpgd/erfc.hpp"

namespace zpgd {

namespace {

constexpr double kLogSqrtPi = 0.57236494292470009;  // log sqrt(pi)

void check_point(double x, double t, double eps) {
  if (!std::isfinite(x) || !std::isfinite(t) || !std::isfinite(eps)) {
    throw std::domain_error("evaluation point must be finite");
  }
  if (!(t > 0.0)) throw std::domain_error("time must be positive");
  if (!(eps > 0.0)) throw std::domain_error("viscosity must be positive");
}

bool at_node(const DeltaRiemannData& q, double x) {
  return x == q.a || x == q.c || x == q.b || x == q.d;
}

// v * exp(-w/eps) as a SignedLog.
SignedLog damped(double v, double w, double eps) {
  if (v == 0.0) return {};
  return {v > 0.0 ? 1 : -1, std::log(std::abs(v)) - w / eps};
}

// exp(-wr/eps) - exp(-wl/eps) as a SignedLog.
SignedLog exp_jump(double wl, double wr, double eps) {
  if (wl == wr) return {};
  const double lo = std::min(wl, wr);
  return {wr < wl ? 1 : -1, -lo / eps + log1mexp(std::abs(wl - wr) / eps)};
}

SignedLog mul(SignedLog l, SignedLog r) {
  if (l.sign == 0 || r.sign == 0) return {};
  return {l.sign * r.sign, l.log_abs + r.log_abs};
}

// +1 left of the node, -1 right of it; exactly at it the side decides.
int orientation(double x, double p, Side side) {
  if (x < p) return 1;
  if (x > p) return -1;
  return side == Side::Left ? 1 : -1;
}

struct Assembly {
  SignedLogSum V, S, Vx, Sx;
};

// Plateau value at x plus one tail correction per jump. The correction at
// node p uses erfc_tail(|x - p| / sqrt(2 t eps)), nonnegative argument by
// construction, oriented by which side of p the point lies on.
Assembly assemble(const DeltaRiemannData& q, double eps, double x, double t,
                  Side side) {
  const double s = std::sqrt(2.0 * t * eps);
  const double wa = q.ua;
  const double wab = q.ua + q.ub;

  const auto left_of = [side](double y, double p) {
    return y < p || (y == p && side == Side::Left);
  };

  Assembly out;

  // Plateau terms (folded by 1/sqrt(pi) so V collapses to the average).
  const double v_exp = left_of(x, q.a) ? 0.0 : (left_of(x, q.b) ? wa : wab);
  out.V.add(1, -v_exp / eps);
  SignedLog s_plateau;
  if (left_of(x, q.c)) {
    s_plateau = {};
  } else if (left_of(x, q.b)) {
    s_plateau = damped(q.rhoc, wa, eps);
  } else if (left_of(x, q.d)) {
    s_plateau = damped(q.rhoc, wab, eps);
  } else {
    s_plateau = damped(q.rhoc + q.rhod, wab, eps);
  }
  out.S.add(s_plateau);

  const SignedLog jump_b = exp_jump(wa, wab, eps);
  const std::array<std::pair<double, SignedLog>, 2> vjumps = {
      {{q.a, exp_jump(0.0, wa, eps)}, {q.b, jump_b}}};
  const std::array<std::pair<double, SignedLog>, 3> sjumps = {
      {{q.c, damped(q.rhoc, wa, eps)},
       {q.b, mul(signed_log_of(q.rhoc), jump_b)},
       {q.d, damped(q.rhod, wab, eps)}}};

  const double log_s = std::log(s);
  for (const auto& [p, dv] : vjumps) {
    if (dv.sign == 0) continue;
    const double P = std::abs(x - p) / s;
    const int sig = orientation(x, p, side);
    out.V.add(sig * dv.sign, log_erfc_tail(P) + dv.log_abs - kLogSqrtPi);
    out.Vx.add(dv.sign, -P * P + dv.log_abs - kLogSqrtPi - log_s);
  }
  for (const auto& [p, ds] : sjumps) {
    if (ds.sign == 0) continue;
    const double P = std::abs(x - p) / s;
    const int sig = orientation(x, p, side);
    out.S.add(sig * ds.sign, log_erfc_tail(P) + ds.log_abs - kLogSqrtPi);
    out.Sx.add(ds.sign, -P * P + ds.log_abs - kLogSqrtPi - log_s);
  }
  return out;
}

SignedLog certified_V(const Assembly& asm_) {
  const SignedLog v = asm_.V.collapse();
  if (v.sign <= 0) {
    throw std::logic_error("kernel average collapsed nonpositive");
  }
  return v;
}

// One-sided velocity: direct two-Gaussian numerator over the average.
double u_one_sided(const DeltaRiemannData& q, double eps, double x, double t,
                   Side side) {
  const double s = std::sqrt(2.0 * t * eps);
  const Assembly parts = assemble(q, eps, x, t, side);
  const SignedLog v = certified_V(parts);

  SignedLogSum num;
  const std::array<std::pair<double, SignedLog>, 2> vjumps = {
      {{q.a, exp_jump(0.0, q.ua, eps)}, {q.b, exp_jump(q.ua, q.ua + q.ub, eps)}}};
  for (const auto& [p, dv] : vjumps) {
    if (dv.sign == 0) continue;
    const double P = std::abs(x - p) / s;
    num.add(-dv.sign, -P * P + dv.log_abs);
  }
  const SignedLog n = num.collapse();
  if (n.sign == 0) return 0.0;
  return (eps / s) * n.sign * std::exp(n.log_abs - v.log_abs - kLogSqrtPi);
}

double u_from_V_one_sided(const DeltaRiemannData& q, double eps, double x, double t,
                          Side side) {
  const Assembly parts = assemble(q, eps, x, t, side);
  const SignedLog v = certified_V(parts);
  const SignedLog vx = parts.Vx.collapse();
  if (vx.sign == 0) return 0.0;
  return -eps * vx.sign * std::exp(vx.log_abs - v.log_abs);
}

double R_one_sided(const DeltaRiemannData& q, double eps, double x, double t,
                   Side side) {
  const Assembly parts = assemble(q, eps, x, t, side);
  const SignedLog v = certified_V(parts);
  const SignedLog sl = parts.S.collapse();
  if (sl.sign == 0) return 0.0;
  return sl.sign * std::exp(sl.log_abs - v.log_abs);
}

double R_x_one_sided(const DeltaRiemannData& q, double eps, double x, double t,
                     Side side) {
  const Assembly parts = assemble(q, eps, x, t, side);
  const SignedLog v = certified_V(parts);
  const SignedLog sl = parts.S.collapse();
  const SignedLog sx = parts.Sx.collapse();
  const SignedLog vx = parts.Vx.collapse();
  double r = 0.0;
  if (sx.sign != 0) r += sx.sign * std::exp(sx.log_abs - v.log_abs);
  if (sl.sign != 0 && vx.sign != 0) {
    r -= sl.sign * vx.sign * std::exp(sl.log_abs + vx.log_abs - 2.0 * v.log_abs);
  }
  return r;
}

template <typename F>
double node_averaged(const DeltaRiemannData& q, double x, F&& f) {
  if (at_node(q, x)) {
    return 0.5 * (f(Side::Left) + f(Side::Right));
  }
  return f(Side::Right);
}

}  // namespace

ScaledVariables scaled_variables(const DeltaRiemannData& data, double x, double t,
                                 double eps) {
  validate(data);
  check_point(x, t, eps);
  const double s = std::sqrt(2.0 * t * eps);
  return {std::abs(x - data.a) / s, std::abs(x - data.b) / s,
          std::abs(x - data.c) / s, std::abs(x - data.d) / s};
}

int region_of(const DeltaRiemannData& data, double x) {
  validate(data);
  if (!std::isfinite(x)) throw std::domain_error("position must be finite");
  if (at_node(data, x)) throw JumpEvaluationError("evaluation at jump");
  if (x < data.a) return 1;
  if (x < data.c) return 2;
  if (x < data.b) return 3;
  if (x < data.d) return 4;
  return 5;
}

InitialProfiles initial_profiles(const DeltaRiemannData& data, double x) {
  validate(data);
  if (!std::isfinite(x)) throw std::domain_error("position must be finite");
  if (at_node(data, x)) throw JumpEvaluationError("evaluation at jump");
  InitialProfiles p{0.0, 0.0};
  if (x > data.a) p.U0 += data.ua;
  if (x > data.b) p.U0 += data.ub;
  if (x > data.c) p.R0 += data.rhoc;
  if (x > data.d) p.R0 += data.rhod;
  return p;
}

ViscousVS viscous_V_S(const DeltaRiemannData& data, double eps, double x, double t) {
  validate(data);
  check_point(x, t, eps);
  Assembly parts = assemble(data, eps, x, t, Side::Left);
  certified_V(parts);
  return {std::move(parts.V), std::move(parts.S)};
}

double viscous_u(const DeltaRiemannData& data, double eps, double x, double t) {
  validate(data);
  check_point(x, t, eps);
  return node_averaged(data, x, [&](Side side) {
    return u_one_sided(data, eps, x, t, side);
  });
}

double viscous_u_from_V(const DeltaRiemannData& data, double eps, double x,
                        double t) {
  validate(data);
  check_point(x, t, eps);
  return node_averaged(data, x, [&](Side side) {
    return u_from_V_one_sided(data, eps, x, t, side);
  });
}

double viscous_R(const DeltaRiemannData& data, double eps, double x, double t) {
  validate(data);
  check_point(x, t, eps);
  const double r = node_averaged(data, x, [&](Side side) {
    return R_one_sided(data, eps, x, t, side);
  });
  const double lo = std::min({0.0, data.rhoc, data.rhoc + data.rhod});
  const double hi = std::max({0.0, data.rhoc, data.rhoc + data.rhod});
  const double slack =
      1e-9 * std::max({1.0, std::abs(data.rhoc), std::abs(data.rhoc + data.rhod)});
  if (r < lo - slack || r > hi + slack) {
    throw std::logic_error("density average left its plateau band");
  }
  return r;
}

double viscous_R_x(const DeltaRiemannData& data, double eps, double x, double t) {
  validate(data);
  check_point(x, t, eps);
  return node_averaged(data, x, [&](Side side) {
    return R_x_one_sided(data, eps, x, t, side);
  });
}

}  // namespace zpgd
