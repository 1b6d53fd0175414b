#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zpgd/erfc.hpp"
#include "zpgd/harness.hpp"
#include "zpgd/limit.hpp"
#include "zpgd/oracle.hpp"
#include "zpgd/types.hpp"
#include "zpgd/viscous.hpp"

namespace py = pybind11;
using namespace zpgd;

PYBIND11_MODULE(_zpgd, m) {
  m.doc() = "explicit vanishing-viscosity limits for two-impulse initial data";
  m.attr("__version__") = "0.1.0";

  py::register_exception<UncoveredCaseError>(m, "UncoveredCaseError",
                                             PyExc_ValueError);
  py::register_exception<QuadratureConvergenceError>(
      m, "QuadratureConvergenceError", PyExc_RuntimeError);
  py::register_exception<LocalizationError>(m, "LocalizationError",
                                            PyExc_RuntimeError);

  py::class_<DeltaRiemannData>(m, "DeltaRiemannData")
      .def(py::init([](double a, double c, double b, double d, double ua,
                       double ub, double rhoc, double rhod) {
             return DeltaRiemannData{a, c, b, d, ua, ub, rhoc, rhod};
           }),
           py::arg("a") = 0.0, py::arg("c") = 0.5, py::arg("b") = 1.0,
           py::arg("d") = 2.0, py::arg("ua") = 0.0, py::arg("ub") = 0.0,
           py::arg("rhoc") = 0.0, py::arg("rhod") = 0.0)
      .def_readwrite("a", &DeltaRiemannData::a)
      .def_readwrite("c", &DeltaRiemannData::c)
      .def_readwrite("b", &DeltaRiemannData::b)
      .def_readwrite("d", &DeltaRiemannData::d)
      .def_readwrite("ua", &DeltaRiemannData::ua)
      .def_readwrite("ub", &DeltaRiemannData::ub)
      .def_readwrite("rhoc", &DeltaRiemannData::rhoc)
      .def_readwrite("rhod", &DeltaRiemannData::rhod)
      .def("validate", [](const DeltaRiemannData& q) { validate(q); })
      .def("__repr__", [](const DeltaRiemannData& q) {
        std::ostringstream os;
        os << "DeltaRiemannData(a=" << q.a << ", c=" << q.c << ", b=" << q.b
           << ", d=" << q.d << ", ua=" << q.ua << ", ub=" << q.ub
           << ", rhoc=" << q.rhoc << ", rhod=" << q.rhod << ")";
        return os.str();
      });

  py::enum_<MajorCase>(m, "MajorCase")
      .value("Case1", MajorCase::Case1)
      .value("Case2", MajorCase::Case2)
      .value("Case3", MajorCase::Case3)
      .value("Case4", MajorCase::Case4)
      .value("Case5", MajorCase::Case5)
      .value("Case6", MajorCase::Case6);
  py::enum_<Subcase>(m, "Subcase")
      .value("NoneCase", Subcase::None)
      .value("Below", Subcase::Below)
      .value("At", Subcase::At)
      .value("Above", Subcase::Above);
  py::enum_<SegmentKind>(m, "SegmentKind")
      .value("Constant", SegmentKind::Constant)
      .value("SqrtRight", SegmentKind::SqrtRight)
      .value("SqrtLeft", SegmentKind::SqrtLeft)
      .value("Line", SegmentKind::Line);
  py::enum_<Side>(m, "Side").value("Left", Side::Left).value(
      "Right", Side::Right);

  py::class_<CaseTag>(m, "CaseTag")
      .def_readonly("major", &CaseTag::major)
      .def_readonly("subcase", &CaseTag::subcase)
      .def("__repr__", [](const CaseTag& t) {
        std::string s = to_string(t.major);
        const std::string sub = to_string(t.subcase);
        if (!sub.empty()) s += " " + sub;
        return s;
      });
  py::class_<StarPoint>(m, "StarPoint")
      .def_readonly("x", &StarPoint::x)
      .def_readonly("t", &StarPoint::t);
  py::class_<CurveSegment>(m, "CurveSegment")
      .def_readonly("kind", &CurveSegment::kind)
      .def_readonly("t_begin", &CurveSegment::t_begin)
      .def_readonly("t_end", &CurveSegment::t_end)
      .def_readonly("anchor", &CurveSegment::anchor)
      .def_readonly("strength", &CurveSegment::strength);
  py::class_<Junction>(m, "Junction")
      .def_readonly("label", &Junction::label)
      .def_readonly("printed", &Junction::printed)
      .def_readonly("used", &Junction::used);
  py::class_<Curve>(m, "Curve")
      .def_readonly("name", &Curve::name)
      .def_readonly("segments", &Curve::segments)
      .def_readonly("junctions", &Curve::junctions);
  py::class_<Fan>(m, "Fan")
      .def_readonly("center", &Fan::center)
      .def_readonly("left", &Fan::left)
      .def_readonly("right", &Fan::right);
  py::class_<Discrepancy>(m, "Discrepancy")
      .def_readonly("curve", &Discrepancy::curve)
      .def_readonly("label", &Discrepancy::label)
      .def_readonly("printed", &Discrepancy::printed)
      .def_readonly("used", &Discrepancy::used);
  py::class_<LimitSolution>(m, "LimitSolution")
      .def_readonly("data", &LimitSolution::data)
      .def_readonly("tag", &LimitSolution::tag)
      .def_readonly("star", &LimitSolution::star)
      .def_readonly("curves", &LimitSolution::curves)
      .def_readonly("fans", &LimitSolution::fans)
      .def_readonly("carrier_c", &LimitSolution::carrier_c)
      .def_readonly("carrier_d", &LimitSolution::carrier_d);
  py::class_<VelocityValue>(m, "VelocityValue")
      .def_readonly("value", &VelocityValue::value)
      .def_readonly("on_discontinuity", &VelocityValue::on_discontinuity)
      .def_readonly("left", &VelocityValue::left)
      .def_readonly("right", &VelocityValue::right);
  py::class_<DeltaPositions>(m, "DeltaPositions")
      .def_readonly("x_c", &DeltaPositions::x_c)
      .def_readonly("x_d", &DeltaPositions::x_d)
      .def_readonly("merged", &DeltaPositions::merged);

  m.def("classify", &classify, py::arg("data"),
        py::arg("sum_tolerance") = 0.0);
  m.def("x_star", &x_star, py::arg("data"), py::arg("sum_tolerance") = 0.0);
  m.def("build_solution", &build_solution, py::arg("data"),
        py::arg("sum_tolerance") = 0.0);
  m.def("discrepancies", &discrepancies, py::arg("solution"));
  m.def("curve_position", &curve_position, py::arg("curve"), py::arg("t"));
  m.def("curve_speed", &curve_speed, py::arg("curve"), py::arg("t"),
        py::arg("side") = Side::Right);
  m.def("eval_u", &eval_u, py::arg("solution"), py::arg("x"), py::arg("t"));
  m.def("plateau_R", &plateau_R, py::arg("solution"), py::arg("x"),
        py::arg("t"));
  m.def("delta_positions", &delta_positions, py::arg("solution"),
        py::arg("t"));
  m.def("rh_residual", &rh_residual, py::arg("solution"), py::arg("curve"),
        py::arg("t"), py::arg("side") = Side::Right);
  m.def("momentum", &momentum, py::arg("solution"), py::arg("t"));

  m.def("erfc_tail", &erfc_tail, py::arg("z"));
  m.def("log_erfc_tail", &log_erfc_tail, py::arg("z"));
  m.def("erfc_scaled", &erfc_scaled, py::arg("z"));

  m.def("viscous_u", &viscous_u, py::arg("data"), py::arg("eps"),
        py::arg("x"), py::arg("t"));
  m.def("viscous_u_from_V", &viscous_u_from_V, py::arg("data"),
        py::arg("eps"), py::arg("x"), py::arg("t"));
  m.def("viscous_R", &viscous_R, py::arg("data"), py::arg("eps"),
        py::arg("x"), py::arg("t"));
  m.def("viscous_R_x", &viscous_R_x, py::arg("data"), py::arg("eps"),
        py::arg("x"), py::arg("t"));

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("relative_tolerance", &QuadratureSpec::relative_tolerance)
      .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions)
      .def_readwrite("window_halfwidth_sigmas",
                     &QuadratureSpec::window_halfwidth_sigmas);
  m.def("oracle_u", &oracle_u, py::arg("data"), py::arg("eps"), py::arg("x"),
        py::arg("t"), py::arg("spec") = QuadratureSpec{});
  m.def("oracle_R", &oracle_R, py::arg("data"), py::arg("eps"), py::arg("x"),
        py::arg("t"), py::arg("spec") = QuadratureSpec{});

  py::class_<ScanSpec>(m, "ScanSpec")
      .def(py::init<>())
      .def_readwrite("eps_schedule", &ScanSpec::eps_schedule)
      .def_readwrite("times", &ScanSpec::times)
      .def_readwrite("margin", &ScanSpec::margin)
      .def_readwrite("grid_points", &ScanSpec::grid_points)
      .def_readwrite("sum_tolerance", &ScanSpec::sum_tolerance);
  py::class_<ScanCell>(m, "ScanCell")
      .def_readonly("eps", &ScanCell::eps)
      .def_readonly("t", &ScanCell::t)
      .def_readonly("sup_error_u", &ScanCell::sup_error_u)
      .def_readonly("sup_error_R", &ScanCell::sup_error_R)
      .def_readonly("probe_count", &ScanCell::probe_count)
      .def_readonly("excluded_near_curve", &ScanCell::excluded_near_curve);
  py::class_<ScanReport>(m, "ScanReport")
      .def_readonly("cells", &ScanReport::cells)
      .def_readonly("monotone_u", &ScanReport::monotone_u)
      .def_readonly("monotone_R", &ScanReport::monotone_R);
  m.def("converge_scan", &converge_scan, py::arg("data"),
        py::arg("spec") = ScanSpec{});

  py::class_<DeltaEstimate>(m, "DeltaEstimate")
      .def_readonly("predicted", &DeltaEstimate::predicted)
      .def_readonly("located", &DeltaEstimate::located);
  py::class_<LocateReport>(m, "LocateReport")
      .def_readonly("carrier_c", &LocateReport::carrier_c)
      .def_readonly("carrier_d", &LocateReport::carrier_d)
      .def_readonly("no_mass", &LocateReport::no_mass)
      .def_readonly("merged", &LocateReport::merged);
  m.def("locate_delta", &locate_delta, py::arg("data"), py::arg("eps"),
        py::arg("t"), py::arg("window") = 0.25);

  py::class_<PlateauProbe>(m, "PlateauProbe")
      .def_readonly("name", &PlateauProbe::name)
      .def_readonly("x", &PlateauProbe::x)
      .def_readonly("expected", &PlateauProbe::expected)
      .def_readonly("actual", &PlateauProbe::actual);
  py::class_<PlateauReport>(m, "PlateauReport")
      .def_readonly("probes", &PlateauReport::probes)
      .def_readonly("mid_skipped", &PlateauReport::mid_skipped)
      .def_readonly("max_error", &PlateauReport::max_error);
  m.def("plateau_check", &plateau_check, py::arg("data"), py::arg("eps"),
        py::arg("t"));

  py::class_<InvariantResult>(m, "InvariantResult")
      .def_readonly("name", &InvariantResult::name)
      .def_readonly("passed", &InvariantResult::passed)
      .def_readonly("worst", &InvariantResult::worst)
      .def_readonly("tolerance", &InvariantResult::tolerance)
      .def_readonly("detail", &InvariantResult::detail);
  m.def("invariant_suite", &invariant_suite, py::arg("solution"));
}
