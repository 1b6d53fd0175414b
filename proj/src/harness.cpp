#include "zpgd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zpgd/viscous.hpp"

namespace zpgd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kSuiteTimes = {0.01, 0.1, 1.0, 10.0, 100.0};

template <class Fn>
void for_each_curve(const LimitSolution& sol, const Fn& fn) {
  for (const auto& c : sol.curves) fn(c);
  for (const auto& f : sol.fans) {
    fn(f.left);
    fn(f.right);
  }
}

struct Hull {
  double lo = kInf;
  double hi = -kInf;
};

Hull position_hull(const LimitSolution& sol, double t) {
  Hull h;
  for_each_curve(sol, [&](const Curve& c) {
    const double p = curve_position(c, t);
    h.lo = std::min(h.lo, p);
    h.hi = std::max(h.hi, p);
  });
  return h;
}

std::vector<double> discontinuity_positions(const LimitSolution& sol,
                                            double t) {
  std::vector<double> out;
  for_each_curve(sol, [&](const Curve& c) {
    const double p = curve_position(c, t);
    if (eval_u(sol, p, t).on_discontinuity) out.push_back(p);
  });
  return out;
}

template <class Fn>
double golden_max(const Fn& f, double lo, double hi) {
  constexpr double kRatio = 0.6180339887498949;
  double c = hi - kRatio * (hi - lo);
  double d = lo + kRatio * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kRatio * (hi - lo);
      fd = f(d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kRatio * (hi - lo);
      fc = f(c);
    }
  }
  return 0.5 * (lo + hi);
}

void check_time_point(double eps, double t) {
  if (!std::isfinite(eps) || eps <= 0.0)
    throw std::domain_error("eps must be positive and finite");
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("t must be positive and finite");
}

}  // namespace

ScanReport converge_scan(const DeltaRiemannData& data, const ScanSpec& spec) {
  if (spec.eps_schedule.empty())
    throw ConfigurationError("eps schedule is empty");
  if (spec.times.empty()) throw ConfigurationError("time list is empty");
  if (spec.grid_points < 2)
    throw std::invalid_argument("grid_points must be at least 2");
  if (!std::isfinite(spec.margin) || spec.margin < 0.0)
    throw std::invalid_argument("margin must be finite and nonnegative");
  for (double e : spec.eps_schedule) check_time_point(e, 1.0);
  for (double t : spec.times) check_time_point(1.0, t);

  const LimitSolution sol = build_solution(data, spec.sum_tolerance);
  ScanReport report;
  for (double eps : spec.eps_schedule) {
    for (double t : spec.times) {
      const Hull hull = position_hull(sol, t);
      const double lo = hull.lo - 1.0;
      const double hi = hull.hi + 1.0;
      const auto disc = discontinuity_positions(sol, t);
      const auto carriers = delta_positions(sol, t);
      std::vector<double> mass_points;
      if (data.rhoc != 0.0) mass_points.push_back(carriers.x_c);
      if (data.rhod != 0.0) mass_points.push_back(carriers.x_d);

      ScanCell cell{eps, t, 0.0, 0.0, 0, 0};
      int kept_r = 0;
      for (int i = 0; i < spec.grid_points; ++i) {
        const double x =
            lo + (hi - lo) * static_cast<double>(i) / (spec.grid_points - 1);
        const auto near =
            [&](const std::vector<double>& pts) {
              for (double p : pts)
                if (std::abs(x - p) < spec.margin) return true;
              return false;
            };
        if (near(disc)) continue;
        ++cell.probe_count;
        const double du =
            std::abs(viscous_u(data, eps, x, t) - eval_u(sol, x, t).value);
        cell.sup_error_u = std::max(cell.sup_error_u, du);
        if (near(mass_points)) continue;
        ++kept_r;
        const double dr =
            std::abs(viscous_R(data, eps, x, t) - plateau_R(sol, x, t));
        cell.sup_error_R = std::max(cell.sup_error_R, dr);
      }
      cell.excluded_near_curve = spec.grid_points - kept_r;
      if (cell.probe_count == 0)
        throw ConfigurationError("margin excludes every velocity probe");
      if (kept_r == 0)
        throw ConfigurationError("margin excludes every plateau probe");
      report.cells.push_back(cell);
    }
  }

  const std::size_t nt = spec.times.size();
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t k = 1; k < spec.eps_schedule.size(); ++k) {
      const ScanCell& prev = report.cells[(k - 1) * nt + j];
      const ScanCell& cur = report.cells[k * nt + j];
      if (cur.sup_error_u > prev.sup_error_u + 1e-12) report.monotone_u = false;
      if (cur.sup_error_R > prev.sup_error_R + 1e-12) report.monotone_R = false;
    }
  }
  return report;
}

LocateReport locate_delta(const DeltaRiemannData& data, double eps, double t,
                          double window) {
  check_time_point(eps, t);
  if (!std::isfinite(window) || window <= 0.0)
    throw std::invalid_argument("window must be positive and finite");
  const LimitSolution sol = build_solution(data);
  const DeltaPositions predicted = delta_positions(sol, t);

  LocateReport report;
  report.merged = predicted.merged;
  if (data.rhoc == 0.0 && data.rhod == 0.0) {
    report.no_mass = true;
    return report;
  }

  const auto slope_mag = [&](double x) {
    return std::abs(viscous_R_x(data, eps, x, t));
  };
  const auto search = [&](double center) {
    constexpr int kPoints = 241;
    int best = 0;
    double best_val = -kInf;
    std::vector<double> xs(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      xs[i] = center - window +
              2.0 * window * static_cast<double>(i) / (kPoints - 1);
      const double v = slope_mag(xs[i]);
      if (v > best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == 0 || best == kPoints - 1)
      throw LocalizationError("mass peak is not interior to the search window");
    return golden_max(slope_mag, xs[best - 1], xs[best + 1]);
  };

  if (data.rhoc != 0.0)
    report.carrier_c = DeltaEstimate{predicted.x_c, search(predicted.x_c)};
  if (data.rhod != 0.0)
    report.carrier_d = DeltaEstimate{predicted.x_d, search(predicted.x_d)};
  return report;
}

PlateauReport plateau_check(const DeltaRiemannData& data, double eps,
                            double t) {
  check_time_point(eps, t);
  const LimitSolution sol = build_solution(data);
  const Hull hull = position_hull(sol, t);
  const double s = std::sqrt(2.0 * t * eps);
  const double pad = std::max(1.0, 4.0 * s);
  const DeltaPositions carriers = delta_positions(sol, t);

  PlateauReport report;
  const auto probe = [&](const char* name, double x, double expected) {
    const double actual = viscous_R(data, eps, x, t);
    report.probes.push_back({name, x, expected, actual});
    report.max_error = std::max(report.max_error, std::abs(actual - expected));
  };
  probe("left", hull.lo - pad, 0.0);
  if (carriers.x_d - carriers.x_c < 4.0 * s) {
    report.mid_skipped = true;
  } else {
    probe("mid", 0.5 * (carriers.x_c + carriers.x_d), data.rhoc);
  }
  probe("right", hull.hi + pad, data.rhoc + data.rhod);
  return report;
}

std::vector<InvariantResult> invariant_suite(const LimitSolution& sol) {
  std::vector<InvariantResult> out;
  const DeltaRiemannData& q = sol.data;
  const double sum = q.ua + q.ub;

  {  // curve_continuity
    double worst = 0.0;
    std::string detail;
    for (const auto& c : sol.curves) {
      for (std::size_t i = 0; i + 1 < c.segments.size(); ++i) {
        const double t = c.segments[i].t_end;
        const double p = segment_position(c.segments[i], t);
        const double n = segment_position(c.segments[i + 1], t);
        const double m =
            std::abs(p - n) / std::max({1.0, std::abs(p), std::abs(n)});
        if (m > worst) {
          worst = m;
          std::ostringstream os;
          os << c.name << " switch " << i;
          detail = os.str();
        }
      }
    }
    const bool ok = worst <= 1e-12;
    out.push_back({"curve_continuity", ok, worst, 1e-12, ok ? "" : detail});
  }

  {  // fan_ordering
    double worst = 0.0;
    std::string detail;
    const auto chain = ordering_chain(sol);
    for (double t : kSuiteTimes) {
      double prev = -kInf;
      std::string prev_name = "start";
      for (const auto& e : chain) {
        const double x =
            e.curve >= 0 ? curve_position(sol.curves[e.curve], t) : e.constant;
        const std::string name =
            e.curve >= 0 ? sol.curves[e.curve].name : "node";
        const double v = (prev - x) / std::max(1.0, std::abs(x));
        if (v > worst) {
          worst = v;
          std::ostringstream os;
          os << prev_name << " above " << name << " at t=" << t;
          detail = os.str();
        }
        prev = x;
        prev_name = name;
      }
      for (const auto& f : sol.fans) {
        const double l = curve_position(f.left, t);
        const double r = curve_position(f.right, t);
        const double v = (l - r) / std::max(1.0, std::abs(r));
        if (v > worst) {
          worst = v;
          detail = "fan edges out of order";
        }
      }
    }
    const bool ok = worst <= 1e-12;
    out.push_back({"fan_ordering", ok, worst, 1e-12, ok ? "" : detail});
  }

  {  // rh_residual
    double worst = 0.0;
    std::string detail;
    for (double t : kSuiteTimes) {
      for_each_curve(sol, [&](const Curve& c) {
        const double pos = curve_position(c, t);
        const auto v = eval_u(sol, pos, t);
        const double m = std::abs(rh_residual(sol, c, t)) /
                         std::max({1.0, std::abs(v.left), std::abs(v.right)});
        if (m > worst) {
          worst = m;
          std::ostringstream os;
          os << c.name << " at t=" << t;
          detail = os.str();
        }
      });
    }
    const bool ok = worst <= 1e-10;
    out.push_back({"rh_residual", ok, worst, 1e-10, ok ? "" : detail});
  }

  {  // momentum_conservation
    double worst = 0.0;
    std::string detail;
    for (double t : kSuiteTimes) {
      const double m =
          std::abs(momentum(sol, t) - sum) / std::max(1.0, std::abs(sum));
      if (m > worst) {
        worst = m;
        std::ostringstream os;
        os << "t=" << t;
        detail = os.str();
      }
    }
    const bool ok = worst <= 1e-12;
    out.push_back({"momentum_conservation", ok, worst, 1e-12, ok ? "" : detail});
  }

  {  // mass_sum
    double worst = 0.0;
    std::string detail;
    if (sol.carrier_c < 0 || sol.carrier_d < 0 ||
        sol.carrier_c >= static_cast<int>(sol.curves.size()) ||
        sol.carrier_d >= static_cast<int>(sol.curves.size())) {
      worst = 1.0;
      detail = "carrier indices invalid";
    } else {
      const Hull hull = position_hull(sol, 1.0);
      const double left = plateau_R(sol, hull.lo - 1.0, 1.0);
      const double right = plateau_R(sol, hull.hi + 1.0, 1.0);
      worst = std::abs(left) + std::abs(right - (q.rhoc + q.rhod));
      if (worst > 0.0) detail = "plateau heights off";
    }
    const bool ok = worst <= 0.0;
    out.push_back({"mass_sum", ok, worst, 0.0, ok ? "" : detail});
  }

  {  // transport_consistency
    double worst = 0.0;
    std::string detail;
    for (double t : kSuiteTimes) {
      for (int idx : {sol.carrier_c, sol.carrier_d}) {
        if (idx < 0 || idx >= static_cast<int>(sol.curves.size())) continue;
        const Curve& c = sol.curves[idx];
        const double pos = curve_position(c, t);
        const auto v = eval_u(sol, pos, t);
        const double m = std::abs(rh_residual(sol, c, t)) /
                         std::max({1.0, std::abs(v.left), std::abs(v.right)});
        if (m > worst) {
          worst = m;
          std::ostringstream os;
          os << c.name << " at t=" << t;
          detail = os.str();
        }
      }
    }
    const bool ok = worst <= 1e-10;
    out.push_back({"transport_consistency", ok, worst, 1e-10, ok ? "" : detail});
  }

  {  // subcase_coherence
    double worst = 0.0;
    std::string detail;
    const bool needs_star = sol.tag.major == MajorCase::Case2 ||
                            sol.tag.major == MajorCase::Case3 ||
                            sol.tag.major == MajorCase::Case4 ||
                            sol.tag.major == MajorCase::Case5;
    if (needs_star != sol.star.has_value()) {
      worst = 1.0;
      detail = "interaction point presence inconsistent";
    } else if (sol.star) {
      const double xs = sol.star->x;
      const double ts = sol.star->t;
      double from_a, from_b;
      if (sol.tag.major == MajorCase::Case2) {
        from_a = q.a + std::sqrt(2.0 * (q.ua + q.ub) * ts);
        from_b = q.b + std::sqrt(2.0 * q.ub * ts);
      } else {
        from_a = q.a + std::sqrt(2.0 * q.ua * ts);
        from_b = q.b - std::sqrt(-2.0 * q.ub * ts);
      }
      const double scale = std::max(1.0, std::abs(xs));
      worst = std::max(std::abs(xs - from_a), std::abs(xs - from_b)) / scale;
      if (worst > 1e-12) detail = "interaction point off the front equations";
      const double node = sol.tag.major == MajorCase::Case2 ? q.d : q.c;
      const Subcase expect = node < xs   ? Subcase::Below
                             : node > xs ? Subcase::Above
                                         : Subcase::At;
      if (expect != sol.tag.subcase) {
        worst = 1.0;
        detail = "subcase disagrees with the carrier node position";
      }
    }
    const bool ok = worst <= 1e-12;
    out.push_back({"subcase_coherence", ok, worst, 1e-12, ok ? "" : detail});
  }

  return out;
}

}  // namespace zpgd
