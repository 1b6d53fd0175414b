#include "zpgd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpgd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 15-point Kronrod extension of 7-point Gauss, nodes on [0, 1] side.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double lo, double hi, double& integral, double& error) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 3; ++j) {
    const double off = half * kXgk[2 * j + 1];
    const double pair = f(center - off) + f(center + off);
    resg += kWg[j] * pair;
    resk += kWgk[2 * j + 1] * pair;
  }
  for (int j = 0; j < 4; ++j) {
    const double off = half * kXgk[2 * j];
    resk += kWgk[2 * j] * (f(center - off) + f(center + off));
  }
  integral = resk * half;
  error = std::abs((resk - resg) * half);
}

struct Panel {
  double error;
  double integral;
  double lo;
  double hi;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Integrates f >= 0 over [lo, hi] to absolute tolerance, bisecting the
// worst panel first. report_scale converts panel sums into units relative
// to the dominant contribution for error reporting.
template <class F>
double adaptive(const F& f, double lo, double hi, double abs_tol, int max_sub,
                double report_scale, const char* what) {
  std::priority_queue<Panel> queue;
  Panel p{0.0, 0.0, lo, hi};
  gk15(f, lo, hi, p.integral, p.error);
  double total = p.integral;
  double total_err = p.error;
  queue.push(p);
  int used = 0;
  while (total_err > abs_tol && used < max_sub) {
    const Panel worst = queue.top();
    if (worst.error == 0.0) break;
    queue.pop();
    total -= worst.integral;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const auto& half : {std::pair{worst.lo, mid}, std::pair{mid, worst.hi}}) {
      Panel h{0.0, 0.0, half.first, half.second};
      gk15(f, h.lo, h.hi, h.integral, h.error);
      total += h.integral;
      total_err += h.error;
      queue.push(h);
    }
    ++used;
  }
  if (total_err > abs_tol)
    throw QuadratureConvergenceError(
        std::string("quadrature did not converge for ") + what,
        total * report_scale, total_err * report_scale);
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().integral;
    queue.pop();
  }
  return sum;
}

// One window piece on which both integrated initial profiles are constant:
// the integrated velocity takes 0, ua, ua + ub across a and b, and the
// integrated mass takes 0, rhoc, rhoc + rhod across c and d.
struct Piece {
  double lo;
  double hi;
  double u0;
  double r0;
};

enum class Mode { Plain, Mass, Drift };

std::vector<Piece> window_pieces(const DeltaRiemannData& q, double x, double lo,
                                 double hi, bool split_at_x) {
  std::vector<double> cuts = {lo, hi};
  for (double p : {q.a, q.c, q.b, q.d})
    if (p > lo && p < hi) cuts.push_back(p);
  if (split_at_x && x > lo && x < hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Piece p;
    p.lo = cuts[i];
    p.hi = cuts[i + 1];
    if (p.hi <= p.lo) continue;
    const double ym = 0.5 * (p.lo + p.hi);
    p.u0 = ym < q.a ? 0.0 : (ym < q.b ? q.ua : q.ua + q.ub);
    p.r0 = ym < q.c ? 0.0 : (ym < q.d ? q.rhoc : q.rhoc + q.rhod);
    out.push_back(p);
  }
  return out;
}

// Log of the kernel-weighted initial profile, the mass factor excluded:
// -(x - y)^2 / (2 t eps) - U0(y) / eps.
double log_plain(const Piece& p, double x, double t, double eps, double y) {
  const double dy = x - y;
  return -dy * dy / (2.0 * t * eps) - p.u0 / eps;
}

// Exact maximum of the concave per-piece log integrand; the |x - y| factor
// of the drift kernel moves the stationary points to x -+ sqrt(t eps).
double piece_pivot(const Piece& p, double x, double t, double eps, Mode mode) {
  std::vector<double> candidates = {p.lo, p.hi};
  if (mode == Mode::Drift) {
    const double z = std::sqrt(t * eps);
    candidates.push_back(std::clamp(x - z, p.lo, p.hi));
    candidates.push_back(std::clamp(x + z, p.lo, p.hi));
  } else {
    candidates.push_back(std::clamp(x, p.lo, p.hi));
  }
  double best = -kInf;
  for (double y : candidates) {
    double l = log_plain(p, x, t, eps, y);
    if (mode == Mode::Drift) {
      const double ady = std::abs(x - y);
      l = ady > 0.0 ? l + std::log(ady) - std::log(t) : -kInf;
    }
    best = std::max(best, l);
  }
  return best;
}

void check_arguments(const DeltaRiemannData& q, double eps, double x, double t,
                     const QuadratureSpec& spec) {
  validate(q);
  if (!std::isfinite(eps) || eps <= 0.0)
    throw std::domain_error("eps must be positive and finite");
  if (!std::isfinite(x)) throw std::domain_error("x must be finite");
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("t must be positive and finite");
  if (!std::isfinite(spec.relative_tolerance) ||
      spec.relative_tolerance <= 0.0 || spec.relative_tolerance > 1e-2)
    throw std::invalid_argument("relative_tolerance must lie in (0, 1e-2]");
  if (spec.max_subdivisions < 1)
    throw std::invalid_argument("max_subdivisions must be at least 1");
  if (!std::isfinite(spec.window_halfwidth_sigmas) ||
      spec.window_halfwidth_sigmas <= 0.0)
    throw std::invalid_argument("window_halfwidth_sigmas must be positive");
}

SignedLogSum integrate(const DeltaRiemannData& q, double eps, double x,
                       double t, const QuadratureSpec& spec, Mode mode) {
  const double sigmas = std::max(spec.window_halfwidth_sigmas, 8.0);
  const double w = sigmas * std::sqrt(2.0 * t * eps);
  const auto pieces =
      window_pieces(q, x, x - w, x + w, mode == Mode::Drift);

  std::vector<double> scale(pieces.size(), -kInf);
  double global = -kInf;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (mode == Mode::Mass && pieces[i].r0 == 0.0) continue;
    scale[i] = piece_pivot(pieces[i], x, t, eps, mode);
    if (mode == Mode::Mass) scale[i] += std::log(std::abs(pieces[i].r0));
    global = std::max(global, scale[i]);
  }

  SignedLogSum sum;
  if (global == -kInf) return sum;
  // Peaks are O(sqrt(t eps)) wide, so the dominant integral is about
  // exp(global) sqrt(t eps); budgeting each piece against that keeps the
  // summed error relative.
  const double width = std::sqrt(t * eps);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (scale[i] == -kInf || global - scale[i] > 700.0) continue;
    const Piece& p = pieces[i];
    const double pivot = mode == Mode::Mass
                             ? scale[i] - std::log(std::abs(p.r0))
                             : scale[i];
    const double log_t = std::log(t);
    const auto f = [&](double y) {
      double l = log_plain(p, x, t, eps, y) - pivot;
      if (mode == Mode::Drift) {
        const double ady = std::abs(x - y);
        if (ady == 0.0) return 0.0;
        l += std::log(ady) - log_t;
      }
      return std::exp(l);
    };
    const double tol = spec.relative_tolerance * std::exp(global - scale[i]) * width;
    const char* what = mode == Mode::Plain ? "kernel average"
                       : mode == Mode::Mass ? "mass average"
                                            : "drift average";
    const double val = adaptive(f, p.lo, p.hi, tol, spec.max_subdivisions,
                                std::exp(scale[i] - global), what);
    if (val <= 0.0) continue;
    int sign = 1;
    if (mode == Mode::Mass && p.r0 < 0.0) sign = -1;
    if (mode == Mode::Drift && p.lo >= x) sign = -1;
    const double extra = mode == Mode::Mass ? std::log(std::abs(p.r0)) : 0.0;
    sum.add(sign, pivot + extra + std::log(val));
  }
  return sum;
}

double log_normalization(double t, double eps) {
  return -0.5 * std::log(2.0 * 3.14159265358979323846 * t * eps);
}

SignedLog ratio(SignedLog num, SignedLog den, const char* what) {
  if (den.sign <= 0) throw std::logic_error(std::string("nonpositive denominator in ") + what);
  if (num.sign == 0) return SignedLog{0, -kInf};
  return SignedLog{num.sign * den.sign, num.log_abs - den.log_abs};
}

}  // namespace

SignedLog oracle_V(const DeltaRiemannData& q, double eps, double x, double t,
                   const QuadratureSpec& spec) {
  check_arguments(q, eps, x, t, spec);
  SignedLog v = integrate(q, eps, x, t, spec, Mode::Plain).collapse();
  v.log_abs += log_normalization(t, eps);
  return v;
}

SignedLog oracle_S(const DeltaRiemannData& q, double eps, double x, double t,
                   const QuadratureSpec& spec) {
  check_arguments(q, eps, x, t, spec);
  SignedLog s = integrate(q, eps, x, t, spec, Mode::Mass).collapse();
  if (s.sign != 0) s.log_abs += log_normalization(t, eps);
  return s;
}

double oracle_u(const DeltaRiemannData& q, double eps, double x, double t,
                const QuadratureSpec& spec) {
  check_arguments(q, eps, x, t, spec);
  const SignedLog num = integrate(q, eps, x, t, spec, Mode::Drift).collapse();
  const SignedLog den = integrate(q, eps, x, t, spec, Mode::Plain).collapse();
  return ratio(num, den, "velocity ratio").value();
}

double oracle_R(const DeltaRiemannData& q, double eps, double x, double t,
                const QuadratureSpec& spec) {
  check_arguments(q, eps, x, t, spec);
  const SignedLog num = integrate(q, eps, x, t, spec, Mode::Mass).collapse();
  const SignedLog den = integrate(q, eps, x, t, spec, Mode::Plain).collapse();
  return ratio(num, den, "mass ratio").value();
}

}  // namespace zpgd
