#include "zpgd/limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace zpgd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double v) { return v * v; }

struct SegSpec {
  SegmentKind kind;
  double anchor;
  double strength;
};

SegSpec constant(double x0) { return {SegmentKind::Constant, x0, 0.0}; }
SegSpec sqrt_right(double x0, double k) { return {SegmentKind::SqrtRight, x0, k}; }
SegSpec sqrt_left(double x0, double k) { return {SegmentKind::SqrtLeft, x0, k}; }
SegSpec line(double x0, double v) { return {SegmentKind::Line, x0, v}; }

// Assembles one curve from lifetime pieces. Zero-length pieces (switch time
// equal to the previous one) collapse away together with their opening
// junction, so boundary data landing exactly on a subcase border still
// builds a clean curve.
class CurveBuilder {
 public:
  CurveBuilder(std::string name, SegSpec first) : name_(std::move(name)) {
    push(first, 0.0);
  }

  CurveBuilder& then(std::string label, double printed, double used,
                     SegSpec next) {
    if (!std::isfinite(used) || used < 0.0)
      throw std::logic_error("curve switch time must be finite and nonnegative");
    while (!segments_.empty() && used <= segments_.back().t_begin) {
      segments_.pop_back();
      if (!junctions_.empty()) junctions_.pop_back();
    }
    if (!segments_.empty()) {
      segments_.back().t_end = used;
      junctions_.push_back({std::move(label), printed, used});
    }
    push(next, used);
    return *this;
  }

  Curve finish() {
    segments_.back().t_end = kInf;
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
      const double t = segments_[i].t_end;
      const double p = segment_position(segments_[i], t);
      const double q = segment_position(segments_[i + 1], t);
      if (std::abs(p - q) > 1e-9 * std::max(1.0, std::abs(p)))
        throw std::logic_error("curve pieces disagree at a switch time");
    }
    return Curve{std::move(name_), std::move(segments_), std::move(junctions_)};
  }

 private:
  void push(SegSpec s, double t_begin) {
    segments_.push_back({s.kind, t_begin, kInf, s.anchor, s.strength});
  }

  std::string name_;
  std::vector<CurveSegment> segments_;
  std::vector<Junction> junctions_;
};

Curve single_segment_curve(std::string name, SegSpec s) {
  return CurveBuilder(std::move(name), s).finish();
}

MajorCase major_case(const DeltaRiemannData& q, double sum_tolerance) {
  if (q.ua == 0.0 || q.ub == 0.0)
    throw UncoveredCaseError("uncovered case: a velocity weight is zero");
  if (q.ua < 0.0 && q.ub > 0.0) return MajorCase::Case1;
  if (q.ua > 0.0 && q.ub > 0.0) return MajorCase::Case2;
  if (q.ua < 0.0 && q.ub < 0.0) return MajorCase::Case6;
  const double sum = q.ua + q.ub;
  if (std::abs(sum) <= sum_tolerance || sum == 0.0) return MajorCase::Case5;
  return sum > 0.0 ? MajorCase::Case3 : MajorCase::Case4;
}

std::optional<StarPoint> star_point(const DeltaRiemannData& q, MajorCase m) {
  const double w = q.b - q.a;
  switch (m) {
    case MajorCase::Case1:
    case MajorCase::Case6:
      return std::nullopt;
    case MajorCase::Case2: {
      const double k = std::sqrt(q.ua + q.ub) - std::sqrt(q.ub);
      return StarPoint{q.b + w * std::sqrt(q.ub) / k, sq(w) / (2.0 * sq(k))};
    }
    default: {
      const double k = std::sqrt(q.ua) + std::sqrt(-q.ub);
      return StarPoint{q.a + w * std::sqrt(q.ua) / k, sq(w) / (2.0 * sq(k))};
    }
  }
}

Subcase side_of(double value, double pivot) {
  if (value < pivot) return Subcase::Below;
  if (value > pivot) return Subcase::Above;
  return Subcase::At;
}

int index_of(const std::vector<Curve>& curves, const char* name) {
  for (std::size_t i = 0; i < curves.size(); ++i)
    if (curves[i].name == name) return static_cast<int>(i);
  throw std::logic_error("curve missing from solution");
}

}  // namespace

const CurveSegment& segment_at(const Curve& c, double t, Side side) {
  if (!std::isfinite(t) || t < 0.0)
    throw std::domain_error("time must be finite and nonnegative");
  for (const auto& s : c.segments) {
    if (side == Side::Right ? t < s.t_end : t <= s.t_end) return s;
  }
  return c.segments.back();
}

std::string to_string(MajorCase m) {
  switch (m) {
    case MajorCase::Case1: return "Case1";
    case MajorCase::Case2: return "Case2";
    case MajorCase::Case3: return "Case3";
    case MajorCase::Case4: return "Case4";
    case MajorCase::Case5: return "Case5";
    case MajorCase::Case6: return "Case6";
  }
  throw std::logic_error("unknown case");
}

std::string to_string(Subcase s) {
  switch (s) {
    case Subcase::None: return "";
    case Subcase::Below: return "below";
    case Subcase::At: return "at";
    case Subcase::Above: return "above";
  }
  throw std::logic_error("unknown subcase");
}

std::string to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::Constant: return "constant";
    case SegmentKind::SqrtRight: return "sqrt_right";
    case SegmentKind::SqrtLeft: return "sqrt_left";
    case SegmentKind::Line: return "line";
  }
  throw std::logic_error("unknown segment kind");
}

CaseTag classify(const DeltaRiemannData& q, double sum_tolerance) {
  validate(q);
  if (!std::isfinite(sum_tolerance) || sum_tolerance < 0.0)
    throw std::invalid_argument("sum_tolerance must be finite and nonnegative");
  const MajorCase m = major_case(q, sum_tolerance);
  CaseTag tag{m, Subcase::None};
  const auto star = star_point(q, m);
  if (m == MajorCase::Case2) {
    tag.subcase = side_of(q.d, star->x);
  } else if (m == MajorCase::Case3 || m == MajorCase::Case4 ||
             m == MajorCase::Case5) {
    tag.subcase = side_of(q.c, star->x);
  }
  return tag;
}

std::optional<StarPoint> x_star(const DeltaRiemannData& q,
                                double sum_tolerance) {
  const CaseTag tag = classify(q, sum_tolerance);
  return star_point(q, tag.major);
}

double segment_position(const CurveSegment& s, double t) {
  switch (s.kind) {
    case SegmentKind::Constant: return s.anchor;
    case SegmentKind::SqrtRight: return s.anchor + std::sqrt(2.0 * s.strength * t);
    case SegmentKind::SqrtLeft: return s.anchor - std::sqrt(2.0 * s.strength * t);
    case SegmentKind::Line: return s.anchor + s.strength * t;
  }
  throw std::logic_error("unknown segment kind");
}

double segment_speed(const CurveSegment& s, double t) {
  switch (s.kind) {
    case SegmentKind::Constant: return 0.0;
    case SegmentKind::SqrtRight: return std::sqrt(s.strength / (2.0 * t));
    case SegmentKind::SqrtLeft: return -std::sqrt(s.strength / (2.0 * t));
    case SegmentKind::Line: return s.strength;
  }
  throw std::logic_error("unknown segment kind");
}

double curve_position(const Curve& c, double t) {
  return segment_position(segment_at(c, t, Side::Right), t);
}

double curve_speed(const Curve& c, double t, Side side) {
  if (t <= 0.0) throw std::domain_error("curve speed needs t > 0");
  return segment_speed(segment_at(c, t, side), t);
}

LimitSolution build_solution(const DeltaRiemannData& q, double sum_tolerance) {
  const CaseTag tag = classify(q, sum_tolerance);
  const double a = q.a, b = q.b, c = q.c, d = q.d;
  const double ua = q.ua, ub = q.ub;
  const double sum = ua + ub;
  const double w = b - a;
  const double mid = 0.5 * (a + b);
  const auto star = star_point(q, tag.major);

  LimitSolution sol;
  sol.data = q;
  sol.tag = tag;
  sol.star = star;

  switch (tag.major) {
    case MajorCase::Case1: {
      Curve ga = single_segment_curve("gamma_a", sqrt_left(a, -ua));
      Curve gb = single_segment_curve("gamma_b", sqrt_right(b, ub));
      Curve gc = single_segment_curve("gamma_c", constant(c));
      const double td = sq(d - b) / (2.0 * ub);
      Curve gd = CurveBuilder("gamma_d", constant(d))
                     .then("t_1", td, td, sqrt_right(b, ub))
                     .finish();
      sol.curves = {std::move(ga), std::move(gb), std::move(gc), std::move(gd)};
      sol.fans = {Fan{a, sol.curves[0], single_segment_curve("edge_a", constant(a))},
                  Fan{b, single_segment_curve("edge_b", constant(b)), sol.curves[1]}};
      break;
    }
    case MajorCase::Case2: {
      const double t1 = sq(w) / (2.0 * ua);
      const double k = std::sqrt(sum) - std::sqrt(ub);
      const double ts = star->t;
      // Transcribed switch time measured from d instead of b; continuity
      // across the junction forces the star time.
      const double ts_printed = sq(d - a) / (2.0 * sq(k));
      const SegSpec mid_line = line(mid, ua / w);
      const SegSpec front = sqrt_right(a, sum);
      Curve ga = CurveBuilder("gamma_a", sqrt_right(a, ua))
                     .then("t_1", t1, t1, mid_line)
                     .then("t_2", ts_printed, ts, front)
                     .finish();
      Curve gb1 = CurveBuilder("gamma_b1", constant(b))
                      .then("t_1", t1, t1, mid_line)
                      .then("t_2", ts, ts, front)
                      .finish();
      Curve gb2 = CurveBuilder("gamma_b2", sqrt_right(b, ub))
                      .then("t_1", ts, ts, front)
                      .finish();
      const double tc1 = sq(c - a) / (2.0 * ua);
      Curve gc = CurveBuilder("gamma_c", constant(c))
                     .then("t_1", tc1, tc1, sqrt_right(a, ua))
                     .then("t_2", t1, t1, mid_line)
                     .then("t_3", ts_printed, ts, front)
                     .finish();
      Curve gd = [&] {
        switch (tag.subcase) {
          case Subcase::Below: {
            const double td1 = sq(d - b) / (2.0 * ub);
            return CurveBuilder("gamma_d", constant(d))
                .then("t_1", td1, td1, sqrt_right(b, ub))
                .then("t_2", ts, ts, front)
                .finish();
          }
          case Subcase::At:
            return CurveBuilder("gamma_d", constant(d))
                .then("t_1", ts, ts, front)
                .finish();
          default: {
            // Transcribed time uses the pre-merge branch; after the fronts
            // merge only the combined front can reach d.
            const double td = sq(d - a) / (2.0 * sum);
            const double td_printed = sq(d - b) / (2.0 * ub);
            return CurveBuilder("gamma_d", constant(d))
                .then("t_1", td_printed, td, front)
                .finish();
          }
        }
      }();
      sol.curves = {std::move(ga), std::move(gb1), std::move(gb2),
                    std::move(gc), std::move(gd)};
      sol.fans = {Fan{a, single_segment_curve("edge_a", constant(a)), sol.curves[0]},
                  Fan{b, sol.curves[1], sol.curves[2]}};
      break;
    }
    case MajorCase::Case3: {
      const double ts = star->t;
      const double tl = sq(w) / (2.0 * sum);
      const SegSpec mid_line = line(mid, sum / w);
      const SegSpec front = sqrt_right(a, sum);
      Curve ga = CurveBuilder("gamma_a", sqrt_right(a, ua))
                     .then("t_1", ts, ts, mid_line)
                     .then("t_2", tl, tl, front)
                     .finish();
      Curve gb1 = CurveBuilder("gamma_b1", sqrt_left(b, -ub))
                      .then("t_1", ts, ts, mid_line)
                      .then("t_2", tl, tl, front)
                      .finish();
      Curve gb2 = CurveBuilder("gamma_b2", constant(b))
                      .then("t_1", tl, tl, front)
                      .finish();
      Curve gc = [&] {
        switch (tag.subcase) {
          case Subcase::Below: {
            const double tc1 = sq(c - a) / (2.0 * ua);
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", tc1, tc1, sqrt_right(a, ua))
                .then("t_2", ts, ts, mid_line)
                .then("t_3", tl, tl, front)
                .finish();
          }
          case Subcase::At:
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", ts, ts, mid_line)
                .then("t_2", tl, tl, front)
                .finish();
          default: {
            const double tc1 = sq(b - c) / (-2.0 * ub);
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", tc1, tc1, sqrt_left(b, -ub))
                .then("t_2", ts, ts, mid_line)
                .then("t_3", tl, tl, front)
                .finish();
          }
        }
      }();
      const double td = sq(d - a) / (2.0 * sum);
      Curve gd = CurveBuilder("gamma_d", constant(d))
                     .then("t_1", td, td, front)
                     .finish();
      sol.curves = {std::move(ga), std::move(gb1), std::move(gb2),
                    std::move(gc), std::move(gd)};
      sol.fans = {Fan{a, single_segment_curve("edge_a", constant(a)), sol.curves[0]},
                  Fan{b, sol.curves[1], sol.curves[2]}};
      break;
    }
    case MajorCase::Case4: {
      const double ts = star->t;
      const double te = sq(w) / (-2.0 * sum);
      const SegSpec mid_line = line(mid, sum / w);
      const SegSpec front = sqrt_left(b, -sum);
      Curve ga1 = CurveBuilder("gamma_a1", constant(a))
                      .then("t_1", te, te, front)
                      .finish();
      Curve ga2 = CurveBuilder("gamma_a2", sqrt_right(a, ua))
                      .then("t_1", ts, ts, mid_line)
                      .then("t_2", te, te, front)
                      .finish();
      Curve gb = CurveBuilder("gamma_b", sqrt_left(b, -ub))
                     .then("t_1", ts, ts, mid_line)
                     .then("t_2", te, te, front)
                     .finish();
      Curve gc = [&] {
        switch (tag.subcase) {
          case Subcase::Below: {
            const double tc1 = sq(c - a) / (2.0 * ua);
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", tc1, tc1, sqrt_right(a, ua))
                .then("t_2", ts, ts, mid_line)
                .then("t_3", te, te, front)
                .finish();
          }
          case Subcase::At:
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", ts, ts, mid_line)
                .then("t_2", te, te, front)
                .finish();
          default: {
            const double tc1 = sq(b - c) / (-2.0 * ub);
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", tc1, tc1, sqrt_left(b, -ub))
                .then("t_2", ts, ts, mid_line)
                .then("t_3", te, te, front)
                .finish();
          }
        }
      }();
      Curve gd = single_segment_curve("gamma_d", constant(d));
      sol.curves = {std::move(ga1), std::move(ga2), std::move(gb),
                    std::move(gc), std::move(gd)};
      sol.fans = {Fan{a, sol.curves[0], sol.curves[1]},
                  Fan{b, sol.curves[2], single_segment_curve("edge_b", constant(b))}};
      break;
    }
    case MajorCase::Case5: {
      const double ts = star->t;
      const double xw = star->x;
      Curve ga = CurveBuilder("gamma_a", sqrt_right(a, ua))
                     .then("t_1", ts, ts, constant(xw))
                     .finish();
      Curve gb = CurveBuilder("gamma_b", sqrt_left(b, -ub))
                     .then("t_1", ts, ts, constant(xw))
                     .finish();
      Curve gc = [&] {
        switch (tag.subcase) {
          case Subcase::Below: {
            const double tc1 = sq(c - a) / (2.0 * ua);
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", tc1, tc1, sqrt_right(a, ua))
                .then("t_2", ts, ts, constant(xw))
                .finish();
          }
          case Subcase::At:
            return single_segment_curve("gamma_c", constant(c));
          default: {
            const double tc1 = sq(b - c) / (-2.0 * ub);
            return CurveBuilder("gamma_c", constant(c))
                .then("t_1", tc1, tc1, sqrt_left(b, -ub))
                .then("t_2", ts, ts, constant(xw))
                .finish();
          }
        }
      }();
      Curve gd = single_segment_curve("gamma_d", constant(d));
      sol.curves = {std::move(ga), std::move(gb), std::move(gc), std::move(gd)};
      sol.fans = {Fan{a, single_segment_curve("edge_a", constant(a)), sol.curves[0]},
                  Fan{b, sol.curves[1], single_segment_curve("edge_b", constant(b))}};
      break;
    }
    case MajorCase::Case6: {
      const double t2 = sq(w) / (-2.0 * ub);
      const double k = std::sqrt(-sum) - std::sqrt(-ua);
      const double t3 = sq(w) / (2.0 * sq(k));
      const SegSpec mid_line = line(mid, ub / w);
      const SegSpec front = sqrt_left(b, -sum);
      Curve ga1 = CurveBuilder("gamma_a1", sqrt_left(a, -ua))
                      .then("t_1", t3, t3, front)
                      .finish();
      Curve ga2 = CurveBuilder("gamma_a2", constant(a))
                      .then("t_1", t2, t2, mid_line)
                      .then("t_2", t3, t3, front)
                      .finish();
      Curve gb = CurveBuilder("gamma_b", sqrt_left(b, -ub))
                     .then("t_1", t2, t2, mid_line)
                     .then("t_2", t3, t3, front)
                     .finish();
      const double tc1 = sq(b - c) / (-2.0 * ub);
      Curve gc = CurveBuilder("gamma_c", constant(c))
                     .then("t_1", tc1, tc1, sqrt_left(b, -ub))
                     .then("t_2", t2, t2, mid_line)
                     .then("t_3", t3, t3, front)
                     .finish();
      Curve gd = single_segment_curve("gamma_d", constant(d));
      sol.curves = {std::move(ga1), std::move(ga2), std::move(gb),
                    std::move(gc), std::move(gd)};
      sol.fans = {Fan{a, sol.curves[0], sol.curves[1]},
                  Fan{b, sol.curves[2], single_segment_curve("edge_b", constant(b))}};
      break;
    }
  }

  sol.carrier_c = index_of(sol.curves, "gamma_c");
  sol.carrier_d = index_of(sol.curves, "gamma_d");
  return sol;
}

std::vector<Discrepancy> discrepancies(const LimitSolution& sol) {
  std::vector<Discrepancy> out;
  for (const auto& c : sol.curves) {
    for (const auto& j : c.junctions) {
      if (std::abs(j.printed - j.used) > 1e-12 * std::max(1.0, std::abs(j.used)))
        out.push_back({c.name, j.label, j.printed, j.used});
    }
  }
  return out;
}

VelocityValue eval_u(const LimitSolution& sol, double x, double t) {
  if (!std::isfinite(x)) throw std::domain_error("x must be finite");
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("velocity evaluation needs t > 0");
  const auto one_sided = [&](Side side) {
    for (const auto& fan : sol.fans) {
      const double l = curve_position(fan.left, t);
      const double r = curve_position(fan.right, t);
      const bool inside = side == Side::Left ? (l < x && x <= r)
                                             : (l <= x && x < r);
      if (inside) return (x - fan.center) / t;
    }
    return 0.0;
  };
  VelocityValue v;
  v.left = one_sided(Side::Left);
  v.right = one_sided(Side::Right);
  v.value = 0.5 * (v.left + v.right);
  v.on_discontinuity = std::abs(v.left - v.right) >
                       1e-12 * std::max({1.0, std::abs(v.left), std::abs(v.right)});
  return v;
}

DeltaPositions delta_positions(const LimitSolution& sol, double t) {
  DeltaPositions p;
  p.x_c = curve_position(sol.curves[sol.carrier_c], t);
  p.x_d = curve_position(sol.curves[sol.carrier_d], t);
  p.merged = std::abs(p.x_c - p.x_d) <=
             1e-12 * std::max({1.0, std::abs(p.x_c), std::abs(p.x_d)});
  return p;
}

double plateau_R(const LimitSolution& sol, double x, double t) {
  if (!std::isfinite(x)) throw std::domain_error("x must be finite");
  const DeltaPositions p = delta_positions(sol, t);
  double r = 0.0;
  if (x >= p.x_c) r += sol.data.rhoc;
  if (x >= p.x_d) r += sol.data.rhod;
  return r;
}

double rh_residual(const LimitSolution& sol, const Curve& curve, double t,
                   Side side) {
  const double pos = curve_position(curve, t);
  const VelocityValue v = eval_u(sol, pos, t);
  return curve_speed(curve, t, side) - 0.5 * (v.left + v.right);
}

double momentum(const LimitSolution& sol, double t) {
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("momentum needs t > 0");
  double total = 0.0;
  for (const auto& fan : sol.fans) {
    const double l = curve_position(fan.left, t);
    const double r = curve_position(fan.right, t);
    if (l >= r) continue;
    total += (sq(r - fan.center) - sq(l - fan.center)) / (2.0 * t);
  }
  return total;
}

std::vector<ChainEntry> ordering_chain(const LimitSolution& sol) {
  const auto curve = [](int i) { return ChainEntry{i, 0.0}; };
  const auto at = [](double x) { return ChainEntry{-1, x}; };
  const double a = sol.data.a, b = sol.data.b;
  switch (sol.tag.major) {
    case MajorCase::Case1:
      return {curve(0), at(a), curve(2), at(b), curve(1), curve(3)};
    case MajorCase::Case2:
    case MajorCase::Case3:
      return {at(a), curve(0), curve(3), curve(1), curve(2), curve(4)};
    case MajorCase::Case4:
    case MajorCase::Case6:
      return {curve(0), curve(1), curve(3), curve(2), at(b), curve(4)};
    case MajorCase::Case5:
      return {at(a), curve(0), curve(2), curve(1), at(b), curve(3)};
  }
  throw std::logic_error("unknown case");
}

}  // namespace zpgd
