#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zpgd/harness.hpp"
#include "zpgd/limit.hpp"
#include "zpgd/oracle.hpp"
#include "zpgd/types.hpp"
#include "zpgd/viscous.hpp"

namespace {

using zpgd::Curve;
using zpgd::DeltaRiemannData;
using zpgd::LimitSolution;
using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Composed run parameters: defaults, then config file, then flags.
struct Options {
  DeltaRiemannData data;
  std::vector<double> eps;
  std::vector<double> times;
  double xmin = 0.0;
  double xmax = 0.0;
  int nx = 101;
  double margin = 0.1;
  double sum_tolerance = 0.0;
  std::string format;
  std::string out;
  std::string corrupt_curve;
  bool have_eps = false;
  bool have_times = false;
  bool have_xmin = false;
  bool have_xmax = false;
};

// Raw flag storage plus the CLI11 handles needed to test presence.
struct FlagSet {
  double a = 0, c = 0, b = 0, d = 0, ua = 0, ub = 0, rhoc = 0, rhod = 0;
  std::vector<double> eps, times;
  double xmin = 0, xmax = 0, margin = 0, sum_tolerance = 0;
  int nx = 0;
  std::string config, format, out;
  CLI::Option *o_a = nullptr, *o_c = nullptr, *o_b = nullptr, *o_d = nullptr,
              *o_ua = nullptr, *o_ub = nullptr, *o_rhoc = nullptr,
              *o_rhod = nullptr, *o_eps = nullptr, *o_t = nullptr,
              *o_xmin = nullptr, *o_xmax = nullptr, *o_nx = nullptr,
              *o_margin = nullptr, *o_sumtol = nullptr, *o_format = nullptr,
              *o_out = nullptr;
};

void add_common_flags(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  f.o_a = cmd->add_option("--a", f.a, "left velocity impulse position");
  f.o_c = cmd->add_option("--c", f.c, "first mass carrier position");
  f.o_b = cmd->add_option("--b", f.b, "right velocity impulse position");
  f.o_d = cmd->add_option("--d", f.d, "second mass carrier position");
  f.o_ua = cmd->add_option("--ua", f.ua, "left velocity impulse weight");
  f.o_ub = cmd->add_option("--ub", f.ub, "right velocity impulse weight");
  f.o_rhoc = cmd->add_option("--rhoc", f.rhoc, "mass at c");
  f.o_rhod = cmd->add_option("--rhod", f.rhod, "mass at d");
  f.o_eps = cmd->add_option("--eps", f.eps, "viscosity values")
                ->delimiter(',');
  f.o_t = cmd->add_option("--t", f.times, "times")->delimiter(',');
  f.o_xmin = cmd->add_option("--xmin", f.xmin, "grid left edge");
  f.o_xmax = cmd->add_option("--xmax", f.xmax, "grid right edge");
  f.o_nx = cmd->add_option("--nx", f.nx, "grid points");
  f.o_margin = cmd->add_option("--margin", f.margin,
                               "exclusion distance around curves");
  f.o_sumtol = cmd->add_option("--sum-tolerance", f.sum_tolerance,
                               "treat |ua+ub| below this as zero");
  f.o_format = cmd->add_option("--format", f.format, "output format")
                   ->check(CLI::IsMember({"csv", "json"}));
  f.o_out = cmd->add_option("--out", f.out, "output file (default stdout)");
}

const std::vector<std::string> kConfigKeys = {
    "a",    "c",    "b",      "d",           "ua",  "ub",
    "rhoc", "rhod", "eps",    "t",           "xmin", "xmax",
    "nx",   "margin", "format", "out", "sum-tolerance", "corrupt-curve"};

void apply_config(const std::string& path, Options& opt) {
  std::ifstream in(path);
  if (!in) throw zpgd::ConfigurationError("cannot open config: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw zpgd::ConfigurationError(std::string("config parse: ") + e.what());
  }
  if (!cfg.is_object())
    throw zpgd::ConfigurationError("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) ==
        kConfigKeys.end())
      throw zpgd::ConfigurationError("unknown config key: " + key);
    (void)value;
  }
  const auto num = [&](const char* k, double& slot) {
    if (cfg.contains(k)) slot = cfg.at(k).get<double>();
  };
  num("a", opt.data.a);
  num("c", opt.data.c);
  num("b", opt.data.b);
  num("d", opt.data.d);
  num("ua", opt.data.ua);
  num("ub", opt.data.ub);
  num("rhoc", opt.data.rhoc);
  num("rhod", opt.data.rhod);
  num("xmin", opt.xmin);
  num("xmax", opt.xmax);
  num("margin", opt.margin);
  num("sum-tolerance", opt.sum_tolerance);
  if (cfg.contains("xmin")) opt.have_xmin = true;
  if (cfg.contains("xmax")) opt.have_xmax = true;
  if (cfg.contains("nx")) opt.nx = cfg.at("nx").get<int>();
  if (cfg.contains("eps")) {
    opt.eps = cfg.at("eps").get<std::vector<double>>();
    opt.have_eps = true;
  }
  if (cfg.contains("t")) {
    opt.times = cfg.at("t").get<std::vector<double>>();
    opt.have_times = true;
  }
  if (cfg.contains("format")) {
    opt.format = cfg.at("format").get<std::string>();
    if (opt.format != "csv" && opt.format != "json")
      throw zpgd::ConfigurationError("format must be csv or json");
  }
  if (cfg.contains("out")) opt.out = cfg.at("out").get<std::string>();
  if (cfg.contains("corrupt-curve"))
    opt.corrupt_curve = cfg.at("corrupt-curve").get<std::string>();
}

Options compose(const FlagSet& f) {
  Options opt;
  if (!f.config.empty()) apply_config(f.config, opt);
  const auto take = [](const CLI::Option* o, auto src, auto& dst) {
    if (o && o->count() > 0) dst = src;
  };
  take(f.o_a, f.a, opt.data.a);
  take(f.o_c, f.c, opt.data.c);
  take(f.o_b, f.b, opt.data.b);
  take(f.o_d, f.d, opt.data.d);
  take(f.o_ua, f.ua, opt.data.ua);
  take(f.o_ub, f.ub, opt.data.ub);
  take(f.o_rhoc, f.rhoc, opt.data.rhoc);
  take(f.o_rhod, f.rhod, opt.data.rhod);
  take(f.o_xmin, f.xmin, opt.xmin);
  take(f.o_xmax, f.xmax, opt.xmax);
  take(f.o_nx, f.nx, opt.nx);
  take(f.o_margin, f.margin, opt.margin);
  take(f.o_sumtol, f.sum_tolerance, opt.sum_tolerance);
  take(f.o_format, f.format, opt.format);
  take(f.o_out, f.out, opt.out);
  if (f.o_eps && f.o_eps->count() > 0) {
    opt.eps = f.eps;
    opt.have_eps = true;
  }
  if (f.o_t && f.o_t->count() > 0) {
    opt.times = f.times;
    opt.have_times = true;
  }
  if (f.o_xmin && f.o_xmin->count() > 0) opt.have_xmin = true;
  if (f.o_xmax && f.o_xmax->count() > 0) opt.have_xmax = true;
  return opt;
}

// Output sink: file when --out is set, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw std::runtime_error("write failed");
    if (!file_.is_open() && !std::cout) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream file_;
};

const char* kind_name(zpgd::SegmentKind k) {
  switch (k) {
    case zpgd::SegmentKind::Constant: return "constant";
    case zpgd::SegmentKind::SqrtRight: return "sqrt_right";
    case zpgd::SegmentKind::SqrtLeft: return "sqrt_left";
    case zpgd::SegmentKind::Line: return "line";
  }
  return "?";
}

json report_skeleton(const LimitSolution& sol) {
  json rep;
  rep["case"] = zpgd::to_string(sol.tag.major);
  rep["subcase"] = zpgd::to_string(sol.tag.subcase);
  json bps = json::array();
  for (const auto& c : sol.curves)
    for (const auto& j : c.junctions)
      bps.push_back(
          {{"curve", c.name}, {"label", j.label}, {"t", j.used},
           {"printed", j.printed}});
  rep["breakpoints"] = bps;
  json dis = json::array();
  for (const auto& d : zpgd::discrepancies(sol))
    dis.push_back({{"curve", d.curve}, {"label", d.label},
                   {"printed", d.printed}, {"used", d.used}});
  rep["discrepancies"] = dis;
  rep["checks"] = json::array();
  return rep;
}

int cmd_classify(const Options& opt) {
  const LimitSolution sol =
      zpgd::build_solution(opt.data, opt.sum_tolerance);
  Sink sink(opt.out);
  std::ostream& os = sink.stream();
  if (opt.format == "json") {
    os << report_skeleton(sol).dump(2) << "\n";
    sink.finish();
    return 0;
  }
  if (sol.tag.major == zpgd::MajorCase::Case5) {
    os << "Case5, wall (a+b)/2 = "
       << fmt17(0.5 * (opt.data.a + opt.data.b)) << "\n";
  } else {
    os << zpgd::to_string(sol.tag.major) << "\n";
  }
  if (sol.tag.subcase != zpgd::Subcase::None)
    os << "subcase: " << zpgd::to_string(sol.tag.subcase) << "\n";
  if (sol.star)
    os << "x* = " << fmt17(sol.star->x) << ", t* = " << fmt17(sol.star->t)
       << "\n";
  os << "breakpoints:\n";
  for (const auto& c : sol.curves)
    for (const auto& j : c.junctions) {
      os << "  " << c.name << " " << j.label << " = " << fmt17(j.used);
      if (j.printed != j.used) os << " (printed " << fmt17(j.printed) << ")";
      os << "\n";
    }
  os << "discrepancies: " << zpgd::discrepancies(sol).size() << "\n";
  sink.finish();
  return 0;
}

int cmd_curves(const Options& opt) {
  const LimitSolution sol =
      zpgd::build_solution(opt.data, opt.sum_tolerance);
  std::vector<double> grid;
  if (opt.have_times) {
    grid = opt.times;
  } else {
    for (int i = 0; i <= 40; ++i) grid.push_back(0.25 * i);
  }
  for (const auto& c : sol.curves)
    for (const auto& j : c.junctions) grid.push_back(j.used);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double t : grid)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw zpgd::ConfigurationError("times must be finite and nonnegative");

  const auto is_breakpoint = [](const Curve& c, double t) {
    for (const auto& j : c.junctions)
      if (std::abs(t - j.used) <= 1e-12 * std::max(1.0, std::abs(j.used)))
        return true;
    return false;
  };

  Sink sink(opt.out);
  std::ostream& os = sink.stream();
  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& c : sol.curves)
      for (double t : grid) {
        const auto& seg = zpgd::segment_at(c, t, zpgd::Side::Right);
        rows.push_back({{"curve_name", c.name},
                        {"t", t},
                        {"x", zpgd::curve_position(c, t)},
                        {"segment_kind", kind_name(seg.kind)},
                        {"is_breakpoint", is_breakpoint(c, t)}});
      }
    os << rows.dump(2) << "\n";
  } else {
    os << "curve_name,t,x,segment_kind,is_breakpoint\n";
    for (const auto& c : sol.curves)
      for (double t : grid) {
        const auto& seg = zpgd::segment_at(c, t, zpgd::Side::Right);
        os << c.name << "," << fmt17(t) << ","
           << fmt17(zpgd::curve_position(c, t)) << "," << kind_name(seg.kind)
           << "," << (is_breakpoint(c, t) ? "true" : "false") << "\n";
      }
  }
  sink.finish();
  return 0;
}

int cmd_eval(const Options& opt) {
  const LimitSolution sol =
      zpgd::build_solution(opt.data, opt.sum_tolerance);
  std::vector<double> eps = opt.have_eps ? opt.eps : std::vector<double>{1e-3};
  if (eps.size() != 1)
    throw zpgd::ConfigurationError("eval needs exactly one eps");
  const std::vector<double> times =
      opt.have_times ? opt.times : std::vector<double>{1.0};
  if (opt.nx < 2) throw zpgd::ConfigurationError("nx must be at least 2");

  double xmin = opt.xmin;
  double xmax = opt.xmax;
  if (!opt.have_xmin || !opt.have_xmax) {
    double lo = opt.data.a;
    double hi = opt.data.d;
    for (double t : times) {
      for (const auto& c : sol.curves) {
        lo = std::min(lo, zpgd::curve_position(c, t));
        hi = std::max(hi, zpgd::curve_position(c, t));
      }
      for (const auto& f : sol.fans) {
        lo = std::min(lo, zpgd::curve_position(f.left, t));
        hi = std::max(hi, zpgd::curve_position(f.right, t));
      }
    }
    if (!opt.have_xmin) xmin = lo - 1.0;
    if (!opt.have_xmax) xmax = hi + 1.0;
  }
  if (!(xmin < xmax))
    throw zpgd::ConfigurationError("xmin must be below xmax");

  Sink sink(opt.out);
  std::ostream& os = sink.stream();
  json rows = json::array();
  const bool as_json = opt.format == "json";
  if (!as_json) os << "x,t,u_eps,R_eps,u_limit,R_plateau,on_curve\n";
  for (double t : times) {
    for (int i = 0; i < opt.nx; ++i) {
      const double x = xmin + (xmax - xmin) * i / (opt.nx - 1);
      const double ue = zpgd::viscous_u(opt.data, eps[0], x, t);
      const double re = zpgd::viscous_R(opt.data, eps[0], x, t);
      const auto ul = zpgd::eval_u(sol, x, t);
      const double rp = zpgd::plateau_R(sol, x, t);
      if (as_json) {
        rows.push_back({{"x", x}, {"t", t}, {"u_eps", ue}, {"R_eps", re},
                        {"u_limit", ul.value}, {"R_plateau", rp},
                        {"on_curve", ul.on_discontinuity}});
      } else {
        os << fmt17(x) << "," << fmt17(t) << "," << fmt17(ue) << ","
           << fmt17(re) << "," << fmt17(ul.value) << "," << fmt17(rp) << ","
           << (ul.on_discontinuity ? "true" : "false") << "\n";
      }
    }
  }
  if (as_json) os << rows.dump(2) << "\n";
  sink.finish();
  return 0;
}

int cmd_verify(const Options& opt) {
  if (opt.format == "csv")
    throw zpgd::ConfigurationError("verify reports are json only");
  std::vector<double> schedule =
      opt.have_eps ? opt.eps
                   : std::vector<double>{0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
  if (schedule.empty())
    throw zpgd::ConfigurationError("eps schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0) || !std::isfinite(schedule[i]))
      throw zpgd::ConfigurationError("eps values must be positive");
    if (i > 0 && schedule[i] >= schedule[i - 1])
      throw zpgd::ConfigurationError("eps schedule must decrease");
  }
  const std::vector<double> times =
      opt.have_times ? opt.times : std::vector<double>{0.5, 1.0, 2.0};

  LimitSolution sol = zpgd::build_solution(opt.data, opt.sum_tolerance);
  if (!opt.corrupt_curve.empty()) {
    bool found = false;
    for (auto& c : sol.curves)
      if (c.name == opt.corrupt_curve) {
        c.segments.back().anchor += 0.01;
        found = true;
      }
    if (!found)
      throw zpgd::ConfigurationError("corrupt-curve: no curve named " +
                                     opt.corrupt_curve);
  }

  json rep = report_skeleton(sol);
  json checks = json::array();
  bool all_passed = true;
  const auto push = [&](const std::string& name, double worst, double tol,
                        const std::string& detail) {
    const bool ok = worst <= tol;
    all_passed = all_passed && ok;
    checks.push_back({{"name", name}, {"passed", ok}, {"worst", worst},
                      {"tolerance", tol}, {"detail", ok ? "" : detail}});
  };

  for (const auto& r : zpgd::invariant_suite(sol)) {
    all_passed = all_passed && r.passed;
    checks.push_back({{"name", r.name}, {"passed", r.passed},
                      {"worst", r.worst}, {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  }

  {  // closed form vs quadrature, and the two internal velocity routes
    double lo = opt.data.a, hi = opt.data.d;
    for (const auto& c : sol.curves) {
      lo = std::min(lo, zpgd::curve_position(c, 1.0));
      hi = std::max(hi, zpgd::curve_position(c, 1.0));
    }
    lo -= 1.0;
    hi += 1.0;
    double worst_u = 0.0, worst_r = 0.0, worst_id = 0.0;
    for (double eps : {0.5, 0.1}) {
      for (double t : {0.3, 1.0}) {
        for (int i = 0; i < 12; ++i) {
          const double x = lo + (hi - lo) * i / 11.0;
          const double ou = zpgd::oracle_u(opt.data, eps, x, t);
          const double orr = zpgd::oracle_R(opt.data, eps, x, t);
          const double vu = zpgd::viscous_u(opt.data, eps, x, t);
          const double vr = zpgd::viscous_R(opt.data, eps, x, t);
          worst_u = std::max(worst_u, std::abs(vu - ou) / (1.0 + std::abs(ou)));
          worst_r =
              std::max(worst_r, std::abs(vr - orr) / (1.0 + std::abs(orr)));
          const double u2 = zpgd::viscous_u_from_V(opt.data, eps, x, t);
          worst_id =
              std::max(worst_id, std::abs(vu - u2) / (1.0 + std::abs(vu)));
        }
      }
    }
    push("oracle_agreement_u", worst_u, 1e-6, "closed form vs quadrature");
    push("oracle_agreement_R", worst_r, 1e-6, "closed form vs quadrature");
    push("velocity_route_identity", worst_id, 1e-10,
         "log-derivative route disagrees");
  }

  {  // vanishing-viscosity scan
    zpgd::ScanSpec spec;
    spec.eps_schedule = schedule;
    spec.times = times;
    spec.margin = opt.margin;
    spec.sum_tolerance = opt.sum_tolerance;
    const zpgd::ScanReport scan = zpgd::converge_scan(opt.data, spec);
    const std::size_t nt = times.size();
    const std::size_t last = schedule.size() - 1;
    double final_u = 0.0;
    for (std::size_t j = 0; j < nt; ++j)
      final_u = std::max(final_u, scan.cells[last * nt + j].sup_error_u);
    push("convergence_u", final_u, 0.05, "velocity sup error at final eps");
    double rise_u = 0.0, rise_r = 0.0;
    for (std::size_t j = 0; j < nt; ++j)
      for (std::size_t k = 1; k <= last; ++k) {
        const auto& prev = scan.cells[(k - 1) * nt + j];
        const auto& cur = scan.cells[k * nt + j];
        rise_u = std::max(rise_u, cur.sup_error_u - prev.sup_error_u);
        if (k >= 2)  // coarsest step tolerated for the mass profile
          rise_r = std::max(rise_r, cur.sup_error_R - prev.sup_error_R);
      }
    push("convergence_monotone_u", rise_u, 1e-12, "sup error increased");
    push("convergence_monotone_R_tail", rise_r, 1e-12, "sup error increased");
  }

  {  // plateau levels and carrier localization at the finest eps
    const double eps_min = schedule.back();
    double worst_p = 0.0, worst_l = 0.0;
    for (double t : times) {
      worst_p = std::max(worst_p,
                         zpgd::plateau_check(opt.data, eps_min, t).max_error);
      const zpgd::LocateReport loc =
          zpgd::locate_delta(opt.data, eps_min, t);
      if (loc.carrier_c)
        worst_l = std::max(
            worst_l, std::abs(loc.carrier_c->located - loc.carrier_c->predicted));
      if (loc.carrier_d)
        worst_l = std::max(
            worst_l, std::abs(loc.carrier_d->located - loc.carrier_d->predicted));
    }
    push("plateau_levels", worst_p, 1e-3, "flat levels off");
    push("delta_localization", worst_l, 0.05, "carrier peak misplaced");
  }

  rep["checks"] = checks;
  Sink sink(opt.out);
  sink.stream() << rep.dump(2) << "\n";
  sink.finish();
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"explicit vanishing-viscosity limits for two-impulse data"};
  app.require_subcommand(1);

  FlagSet fc, fk, fe, fv;
  CLI::App* classify = app.add_subcommand("classify", "case tag and breakpoints");
  CLI::App* curves = app.add_subcommand("curves", "sample discontinuity curves");
  CLI::App* eval = app.add_subcommand("eval", "viscous and limit profiles on a grid");
  CLI::App* verify = app.add_subcommand("verify", "run the full check suite");
  add_common_flags(classify, fc);
  add_common_flags(curves, fk);
  add_common_flags(eval, fe);
  add_common_flags(verify, fv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(compose(fc));
    if (curves->parsed()) return cmd_curves(compose(fk));
    if (eval->parsed()) return cmd_eval(compose(fe));
    if (verify->parsed()) return cmd_verify(compose(fv));
  } catch (const zpgd::UncoveredCaseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
