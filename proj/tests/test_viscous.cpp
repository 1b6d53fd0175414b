#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "zpgd/viscous.hpp"

namespace {

zpgd::DeltaRiemannData case1_data() {
  return {0.0, 0.5, 1.0, 2.0, -1.0, 1.0, 1.0, 2.0};
}

}  // namespace

TEST_CASE("matches frozen closed-form references") {
  // 17-digit references from a 60-digit evaluation of the kernel averages
  // (independent high-precision differentiation for the velocity).
  const auto q = case1_data();
  struct Ref {
    double x, t, eps, u, R;
  };
  const std::vector<Ref> refs = {
      {0.25, 1.0, 0.5, -0.16035275239767444, 0.42465345463931079},
      {-0.5, 1.0, 0.5, -0.50079862297340476, 0.19528595478815671},
      {1.3, 0.7, 0.1, 0.61713985883289397, 0.99028764351466384},
      {2.2, 1.5, 0.5, 0.33795153941235562, 1.6922874161030246},
      {0.8, 0.3, 0.1, 0.13499796700495107, 0.95247121435646541},
  };
  for (const auto& r : refs) {
    const double u = zpgd::viscous_u(q, r.eps, r.x, r.t);
    const double R = zpgd::viscous_R(q, r.eps, r.x, r.t);
    CHECK(std::abs(u - r.u) <= 1e-12 * std::max(1.0, std::abs(r.u)));
    CHECK(std::abs(R - r.R) <= 1e-12 * std::max(1.0, std::abs(r.R)));
  }
}

TEST_CASE("small viscosity lands on the fan value") {
  const auto q = case1_data();
  const double u = zpgd::viscous_u(q, 1e-3, -0.5, 1.0);
  CHECK(std::abs(u - (-0.5)) <= 0.02);
  CHECK(std::abs(u - (-0.50198431087360834)) <= 1e-10);
}

TEST_CASE("zero velocity weights give zero velocity and unit average") {
  zpgd::DeltaRiemannData q = case1_data();
  q.ua = 0.0;
  q.ub = 0.0;
  for (double x : {-2.0, 0.25, 1.7, 5.0}) {
    CHECK(zpgd::viscous_u(q, 0.3, x, 0.8) == 0.0);
    const auto vs = zpgd::viscous_V_S(q, 0.3, x, 0.8);
    CHECK(vs.V.size() == 1);
    CHECK(vs.V.collapse().value() == 1.0);
  }
}

TEST_CASE("node evaluation averages sides that already agree") {
  const auto q = case1_data();
  const double h = 1e-9;
  for (double p : {q.a, q.c, q.b, q.d}) {
    for (double eps : {0.5, 0.05}) {
      const double um = zpgd::viscous_u(q, eps, p - h, 1.0);
      const double u0 = zpgd::viscous_u(q, eps, p, 1.0);
      const double up = zpgd::viscous_u(q, eps, p + h, 1.0);
      CHECK(std::abs(up - um) <= 1e-6);
      CHECK(std::abs(u0 - 0.5 * (um + up)) <= 1e-6);
      const double Rm = zpgd::viscous_R(q, eps, p - h, 1.0);
      const double R0 = zpgd::viscous_R(q, eps, p, 1.0);
      const double Rp = zpgd::viscous_R(q, eps, p + h, 1.0);
      CHECK(std::abs(Rp - Rm) <= 1e-6);
      CHECK(std::abs(R0 - 0.5 * (Rm + Rp)) <= 1e-6);
    }
  }
}

TEST_CASE("term-wise differentiation route reproduces the velocity") {
  const auto q = case1_data();
  for (double eps : {0.5, 0.1, 0.01}) {
    for (int i = 0; i <= 40; ++i) {
      const double x = -2.0 + 6.0 * i / 40.0;
      for (double t : {0.25, 1.0, 2.5}) {
        const double u1 = zpgd::viscous_u(q, eps, x, t);
        const double u2 = zpgd::viscous_u_from_V(q, eps, x, t);
        CHECK(std::abs(u1 - u2) <= 1e-12 * (1.0 + std::abs(u1)));
      }
    }
  }
}

TEST_CASE("density average stays inside its plateau band") {
  auto run = [](zpgd::DeltaRiemannData q) {
    const double lo = std::min({0.0, q.rhoc, q.rhoc + q.rhod});
    const double hi = std::max({0.0, q.rhoc, q.rhoc + q.rhod});
    for (double eps : {0.5, 0.01}) {
      for (int i = 0; i <= 64; ++i) {
        const double x = -3.0 + 8.0 * i / 64.0;
        for (double t : {0.3, 1.0, 3.0}) {
          const double R = zpgd::viscous_R(q, eps, x, t);
          CHECK(R >= lo - 1e-9 * std::max(1.0, std::abs(lo)));
          CHECK(R <= hi + 1e-9 * std::max(1.0, std::abs(hi)));
        }
      }
    }
  };
  run(case1_data());
  zpgd::DeltaRiemannData signed_mass = case1_data();
  signed_mass.rhoc = -1.0;
  signed_mass.rhod = 0.5;
  run(signed_mass);
}

TEST_CASE("far-field densities sit on the outer plateaus") {
  const auto q = case1_data();
  CHECK(std::abs(zpgd::viscous_R(q, 0.5, -10.0, 1.0) - 0.0) <= 1e-9);
  CHECK(std::abs(zpgd::viscous_R(q, 0.5, 12.0, 1.0) - 3.0) <= 1e-9);
}

TEST_CASE("transformed pair reproduces density and velocity") {
  const auto q = case1_data();
  for (double eps : {0.5, 0.1}) {
    for (int i = 0; i <= 32; ++i) {
      const double x = -1.5 + 5.0 * i / 32.0;
      const auto vs = zpgd::viscous_V_S(q, eps, x, 1.2);
      const auto v = vs.V.collapse();
      const auto s = vs.S.collapse();
      CHECK(v.sign == 1);
      const double R = s.sign == 0 ? 0.0 : s.sign * std::exp(s.log_abs - v.log_abs);
      CHECK(std::abs(R - zpgd::viscous_R(q, eps, x, 1.2)) <=
            1e-10 * (1.0 + std::abs(R)));
    }
  }
}

TEST_CASE("density derivative matches a central difference") {
  const auto q = case1_data();
  const double h = 1e-6;
  for (double x : {0.3, 0.5, 0.9, 1.4, 2.0, 2.6}) {
    for (double eps : {0.5, 0.1}) {
      const double fd =
          (zpgd::viscous_R(q, eps, x + h, 1.0) - zpgd::viscous_R(q, eps, x - h, 1.0)) /
          (2.0 * h);
      const double an = zpgd::viscous_R_x(q, eps, x, 1.0);
      CHECK(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(an)));
    }
  }
}

TEST_CASE("stays finite across the advertised window") {
  const auto q = case1_data();
  for (double eps : {1e-6, 1e-3, 1.0}) {
    for (double x : {-1000.0, -3.7, 0.0, 2.0, 1000.0}) {
      for (double t : {1e-3, 1.0, 1e3}) {
        CHECK(std::isfinite(zpgd::viscous_u(q, eps, x, t)));
        CHECK(std::isfinite(zpgd::viscous_R(q, eps, x, t)));
      }
    }
  }
}

TEST_CASE("scaled distances are nonnegative") {
  const auto q = case1_data();
  const auto sv = zpgd::scaled_variables(q, 0.7, 1.0, 0.1);
  CHECK(sv.A >= 0.0);
  CHECK(sv.B >= 0.0);
  CHECK(sv.C >= 0.0);
  CHECK(sv.D >= 0.0);
  CHECK(sv.A == doctest::Approx(0.7 / std::sqrt(0.2)).epsilon(1e-14));
}

TEST_CASE("region lookup and initial profiles") {
  const auto q = case1_data();
  CHECK(zpgd::region_of(q, -1.0) == 1);
  CHECK(zpgd::region_of(q, 0.2) == 2);
  CHECK(zpgd::region_of(q, 0.7) == 3);
  CHECK(zpgd::region_of(q, 1.5) == 4);
  CHECK(zpgd::region_of(q, 2.5) == 5);
  for (double p : {q.a, q.c, q.b, q.d}) {
    CHECK_THROWS_AS(zpgd::region_of(q, p), zpgd::JumpEvaluationError);
    CHECK_THROWS_AS(zpgd::initial_profiles(q, p), zpgd::JumpEvaluationError);
  }
  CHECK(zpgd::initial_profiles(q, -1.0).U0 == 0.0);
  CHECK(zpgd::initial_profiles(q, 0.2).U0 == q.ua);
  CHECK(zpgd::initial_profiles(q, 1.5).U0 == q.ua + q.ub);
  CHECK(zpgd::initial_profiles(q, 0.2).R0 == 0.0);
  CHECK(zpgd::initial_profiles(q, 0.7).R0 == q.rhoc);
  CHECK(zpgd::initial_profiles(q, 2.5).R0 == q.rhoc + q.rhod);
}

TEST_CASE("argument guards") {
  const auto q = case1_data();
  CHECK_THROWS_AS(zpgd::viscous_u(q, 0.0, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(zpgd::viscous_u(q, 0.1, 0.5, -1.0), std::domain_error);
  zpgd::DeltaRiemannData bad = q;
  bad.c = 1.5;  // violates c < b
  CHECK_THROWS_AS(zpgd::viscous_u(bad, 0.1, 0.5, 1.0), std::domain_error);
}
