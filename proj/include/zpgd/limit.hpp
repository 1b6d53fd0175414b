#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "zpgd/types.hpp"

namespace zpgd {

// Sign pattern of (ua, ub, ua+ub):
//   Case1 (-,+,*)  Case2 (+,+,*)  Case3 (+,-,+)
//   Case4 (+,-,-)  Case5 (+,-,0)  Case6 (-,-,*)
enum class MajorCase { Case1 = 1, Case2, Case3, Case4, Case5, Case6 };

// Position of the free mass node relative to the interaction point: d for
// Case2, c for Cases 3..5. Cases 1 and 6 have no subcase.
enum class Subcase { None, Below, At, Above };

struct CaseTag {
  MajorCase major;
  Subcase subcase = Subcase::None;
};

std::string to_string(MajorCase m);  // "Case1".."Case6"
std::string to_string(Subcase s);    // "", "below", "at", "above"

// Classifies by exact sign comparison; sum_tolerance widens only the
// ua + ub == 0 test. Throws UncoveredCaseError when ua or ub is zero.
CaseTag classify(const DeltaRiemannData& data, double sum_tolerance = 0.0);

// Interaction point of the two velocity fronts. Engaged for Cases 2..5
// (for Case5 this is the standing wall and its formation time), empty for
// Cases 1 and 6.
struct StarPoint {
  double x;
  double t;
};

std::optional<StarPoint> x_star(const DeltaRiemannData& data,
                                double sum_tolerance = 0.0);

// One lifetime piece of a curve in the (x, t) half-plane:
//   Constant  x(t) = anchor
//   SqrtRight x(t) = anchor + sqrt(2 strength t)   strength > 0
//   SqrtLeft  x(t) = anchor - sqrt(2 strength t)   strength > 0
//   Line      x(t) = anchor + strength t
enum class SegmentKind { Constant, SqrtRight, SqrtLeft, Line };

std::string to_string(SegmentKind k);

struct CurveSegment {
  SegmentKind kind;
  double t_begin;
  double t_end;  // +inf on the final segment
  double anchor;
  double strength;
};

double segment_position(const CurveSegment& s, double t);
double segment_speed(const CurveSegment& s, double t);

// Junction bookkeeping: the transcribed switch time next to the value the
// construction actually uses (derived by continuity). They differ only
// where the transcription is internally inconsistent; such rows surface in
// discrepancy reports.
struct Junction {
  std::string label;
  double printed;
  double used;
};

struct Curve {
  std::string name;  // "gamma_a", "gamma_b1", ...
  std::vector<CurveSegment> segments;  // tile [0, inf) contiguously
  std::vector<Junction> junctions;     // one per interior boundary
};

// Position uses the segment active at t; at a junction time the two
// candidates agree to rounding. Speed is side-selectable, right by default.
double curve_position(const Curve& c, double t);
double curve_speed(const Curve& c, double t, Side side = Side::Right);

// Active segment at time t; the side picks which neighbor wins when t is
// exactly a switch time.
const CurveSegment& segment_at(const Curve& c, double t,
                               Side side = Side::Right);

// Oriented rarefaction region around center p: velocity (x - p)/t between
// the bounding curves, empty whenever left >= right.
struct Fan {
  double center;
  Curve left;
  Curve right;
};

struct Discrepancy {
  std::string curve;
  std::string label;
  double printed;
  double used;
};

// The full explicit limit: named curves, two fans, two mass carriers.
struct LimitSolution {
  DeltaRiemannData data;
  CaseTag tag;
  std::optional<StarPoint> star;
  std::vector<Curve> curves;
  std::array<Fan, 2> fans;
  int carrier_c = -1;  // index of gamma_c in curves
  int carrier_d = -1;  // index of gamma_d in curves
};

LimitSolution build_solution(const DeltaRiemannData& data,
                             double sum_tolerance = 0.0);

// Junctions whose printed and used values disagree beyond 1e-12 relative.
std::vector<Discrepancy> discrepancies(const LimitSolution& sol);

// Pointwise velocity. value carries the side average; on a discontinuity
// the flag is set and both one-sided values are reported.
struct VelocityValue {
  double value;
  bool on_discontinuity;
  double left;
  double right;
};

VelocityValue eval_u(const LimitSolution& sol, double x, double t);

// Carrier positions at time t; merged when they agree to 1e-12 relative.
struct DeltaPositions {
  double x_c;
  double x_d;
  bool merged;
};

DeltaPositions delta_positions(const LimitSolution& sol, double t);

// Step profile of the accumulated mass: 0 left of the c carrier, rhoc up to
// the d carrier, rhoc + rhod beyond.
double plateau_R(const LimitSolution& sol, double x, double t);

// Curve speed minus the side average of the velocity across the curve.
double rh_residual(const LimitSolution& sol, const Curve& curve, double t,
                   Side side = Side::Right);

// Integral of the velocity profile; equals ua + ub for every t > 0.
double momentum(const LimitSolution& sol, double t);

// Left-to-right monotone chain of constants and curve indices used by the
// ordering invariant.
struct ChainEntry {
  int curve;        // index into sol.curves, or -1 for a constant
  double constant;  // used when curve < 0
};

std::vector<ChainEntry> ordering_chain(const LimitSolution& sol);

}  // namespace zpgd
