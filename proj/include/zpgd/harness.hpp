#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zpgd/limit.hpp"
#include "zpgd/types.hpp"

namespace zpgd {

// Convergence scan controls. The probe grid spans the hull of all curve
// positions at each time, padded by one unit on both sides; probes within
// margin of a velocity discontinuity are skipped for the velocity error,
// and probes within margin of a mass carrier are additionally skipped for
// the plateau error.
struct ScanSpec {
  std::vector<double> eps_schedule = {0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
  std::vector<double> times = {0.5, 1.0, 2.0};
  double margin = 0.1;
  int grid_points = 81;
  double sum_tolerance = 0.0;
};

struct ScanCell {
  double eps;
  double t;
  double sup_error_u;
  double sup_error_R;
  int probe_count;          // probes used for the velocity error
  int excluded_near_curve;  // grid points not used for the plateau error
};

// Cells ordered schedule-major: all times for the first eps, then the next.
// monotone_* report whether each time's sup error is non-increasing along
// the schedule.
struct ScanReport {
  std::vector<ScanCell> cells;
  bool monotone_u = true;
  bool monotone_R = true;
};

ScanReport converge_scan(const DeltaRiemannData& data,
                         const ScanSpec& spec = {});

// Mass concentration found by maximizing |d/dx R| near the predicted
// carrier position.
struct DeltaEstimate {
  double predicted;
  double located;
};

struct LocateReport {
  std::optional<DeltaEstimate> carrier_c;  // empty when rhoc is zero
  std::optional<DeltaEstimate> carrier_d;  // empty when rhod is zero
  bool no_mass = false;                    // both weights zero
  bool merged = false;                     // carriers coincide in the limit
};

// Coarse argmax on a 241-point grid over [predicted - window,
// predicted + window], refined by golden-section search. Throws
// LocalizationError when the coarse argmax lands on the window boundary.
LocateReport locate_delta(const DeltaRiemannData& data, double eps, double t,
                          double window = 0.25);

// Far-field and inter-carrier probes of the smoothed mass profile against
// the plateau heights 0, rhoc, rhoc + rhod.
struct PlateauProbe {
  std::string name;  // "left", "mid", "right"
  double x;
  double expected;
  double actual;
};

struct PlateauReport {
  std::vector<PlateauProbe> probes;
  bool mid_skipped = false;  // carriers closer than four kernel widths
  double max_error = 0.0;
};

PlateauReport plateau_check(const DeltaRiemannData& data, double eps, double t);

// One structural invariant of a built solution. Failures are reported as
// data, never thrown, so corrupted inputs can be diagnosed.
struct InvariantResult {
  std::string name;
  bool passed;
  double worst;
  double tolerance;
  std::string detail;  // offender description, empty when passed
};

// Runs, in order: curve_continuity, fan_ordering, rh_residual,
// momentum_conservation, mass_sum, transport_consistency,
// subcase_coherence.
std::vector<InvariantResult> invariant_suite(const LimitSolution& sol);

}  // namespace zpgd
