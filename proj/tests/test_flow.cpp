#include <doctest.h>

#include <cmath>

#include "fracdyn/error.hpp"
#include "fracdyn/flow.hpp"
#include "gen.hpp"

using namespace fracdyn;

namespace {

// Error at t = 1 of y' = -y with the step pinned to h.
double fixed_step_error(double h) {
  DopriOptions opt;
  opt.rtol = opt.atol = 1e6;
  opt.h0 = opt.hmax = h;
  double t_end;
  auto rhs = [](double, const Vec<1>& y) { return Vec<1>{-y[0]}; };
  const Vec<1> y = dopri5<1>(rhs, 0.0, Vec<1>{1.0}, 1.0, opt, [](const DenseStep<1>&, const Vec<1>&) { return false; },
                             t_end);
  return std::fabs(y[0] - std::exp(-1.0));
}

PlanarSystem linear_focus(double a) {
  PlanarSystem s;
  s.f = Polynomial2({{a, 1, 0}, {-1.0, 0, 1}});
  s.g = Polynomial2({{1.0, 1, 0}, {a, 0, 1}});
  s.approach_sign = a < 0 ? 1.0 : -1.0;
  return s;
}

}  // namespace

TEST_CASE("dopri5 is fifth order") {
  const double e1 = fixed_step_error(0.1), e2 = fixed_step_error(0.05);
  const double order = std::log2(e1 / e2);
  CHECK(order > 4.6);
  CHECK(order < 5.6);
}

TEST_CASE("dense output matches the exact solution inside steps") {
  DopriOptions opt;
  opt.rtol = opt.atol = 1e-10;
  double worst = 0.0, t_end;
  auto rhs = [](double, const Vec<2>& y) { return Vec<2>{-y[1], y[0]}; };
  dopri5<2>(rhs, 0.0, Vec<2>{1.0, 0.0}, 20.0, opt,
            [&](const DenseStep<2>& st, const Vec<2>&) {
              for (double s : {0.25, 0.5, 0.75}) {
                const double t = st.t0 + s * st.h;
                const Vec<2> y = st.at(t);
                worst = std::max(worst, std::hypot(y[0] - std::cos(t), y[1] - std::sin(t)));
              }
              return false;
            },
            t_end);
  CHECK(worst < 1e-8);
}

TEST_CASE("integrate follows a linear focus and its stop conditions") {
  const PlanarSystem sys = linear_focus(-0.1);
  StopCondition st;
  st.max_time = 5.0;
  const Trajectory tr = integrate(sys, {1.0, 0.0}, st, 1e-11);
  const TrajPoint& e = tr.points.back();
  CHECK(e.t == doctest::Approx(5.0).epsilon(1e-12));
  const double r = std::exp(-0.5);
  CHECK(e.x == doctest::Approx(r * std::cos(5.0)).epsilon(1e-8));
  CHECK(e.y == doctest::Approx(r * std::sin(5.0)).epsilon(1e-8));

  StopCondition rb;
  rb.radius_below = 0.2;
  const IntegrateResult ir = integrate_ex(sys, {1.0, 0.0}, rb, 1e-11);
  CHECK(ir.reason == StopReason::RadiusBelow);
  CHECK(ir.traj.points.back().t == doctest::Approx(10.0 * std::log(5.0)).epsilon(1e-9));

  StopCondition turns;
  turns.max_turns = 3.0;
  CHECK(integrate(sys, {1.0, 0.0}, turns, 1e-11).points.back().t == doctest::Approx(6 * M_PI).epsilon(1e-9));
}

TEST_CASE("integrate refuses slow-fast systems and unbounded requests") {
  PlanarSystem sf = slow_fast("y - x^2", "-x");
  StopCondition st;
  st.max_time = 1.0;
  CHECK_THROWS_AS(integrate(sf, {0.1, 0.1}, st, 1e-10), Error);
  CHECK_THROWS_AS(integrate(linear_focus(-0.1), {1, 0}, StopCondition{}, 1e-10), Error);
}

TEST_CASE("section crossings of a linear focus are geometric") {
  gen::Rng rng(21);
  for (int c = 0; c < 5; ++c) {
    const double a = -rng.uniform(0.02, 0.2);
    StopCondition st;
    st.max_turns = 12;
    const Trajectory tr = integrate(linear_focus(a), {1.0, 0.0}, st, 1e-11);
    Section sec;
    sec.orientation = +1;
    sec.direction = {1.0, 0.0};
    // Crossing the positive x-axis from below: normal (0,1) goes - to +.
    const CrossingSequence cs = section_crossings(tr, sec);
    REQUIRE(cs.coords.size() >= 10);
    const double rho = std::exp(2 * M_PI * a);
    for (std::size_t k = 1; k < cs.coords.size(); ++k)
      CHECK(cs.coords[k] / cs.coords[k - 1] == doctest::Approx(rho).epsilon(1e-6));
    for (double r : cs.residuals) CHECK(r < 1e-10);
  }
}

TEST_CASE("radial_map matches the closed form for m = n = 1") {
  const GenTrigTable t = gen_trig(1, 1, 2048);
  CHECK(degfocus_turn_weight(t) == doctest::Approx(2 * M_PI).epsilon(1e-11));
  for (int k : {1, 2, 3}) {
    const MonotoneSequence s = radial_map({1, 1, k, Sign::Minus}, t, 0.9, 50);
    REQUIRE(s.size() == 51);
    for (int j = 0; j <= 50; ++j) {
      const double u = std::pow(0.9, -2.0 * k) + 2.0 * k * 2 * M_PI * j;
      CHECK(s.values[j] == doctest::Approx(std::pow(u, -1.0 / (2 * k))).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(radial_map({1, 1, 1, Sign::Plus}, t, 0.9, 50), Error);
}

TEST_CASE("radial_map agrees with the integrated degenerate focus") {
  for (auto [m, n, k] : std::vector<std::tuple<int, int, int>>{{3, 3, 1}, {3, 1, 1}, {5, 3, 1}}) {
    const DegFocusParams p{m, n, k, Sign::Minus};
    const GenTrigTable t = gen_trig(m, n, 4096);
    const int turns = 6;
    const MonotoneSequence s = radial_map(p, t, 0.8, turns);
    StopCondition st;
    st.max_turns = turns + 0.5;
    const Trajectory tr = integrate(degenerate_focus(p), {std::pow(0.8, n), 0.0}, st, 1e-12);
    Section sec;
    const CrossingSequence cs = section_crossings(tr, sec);
    REQUIRE(cs.coords.size() >= static_cast<std::size_t>(turns));
    // On the ray phi = 0, H = x^{2m} = r^{2mn}.
    for (int j = 1; j <= turns; ++j) {
      const double r = std::pow(cs.coords[j - 1], 1.0 / n);
      CHECK(r == doctest::Approx(s.values[j]).epsilon(1e-7));
    }
  }
}

TEST_CASE("spiral_sample resamples by angle and respects the spacing cap") {
  HopfTakensParams hp{1, {0.0}};
  SpiralOptions so;
  so.max_spacing = 1e-3;
  const Trajectory tr = spiral_sample(hopf_takens(hp), {0.5, 0.0}, 0.05, 100000, so);
  CHECK(tr.max_spacing() <= 1e-3 * (1 + 1e-9));
  double r_end = std::hypot(tr.points.back().x, tr.points.back().y);
  CHECK(r_end == doctest::Approx(0.05).epsilon(1e-6));
  // r' = r^3 backward: turns = (1/r_min^2 - 1/r0^2) / (4 pi).
  CHECK(tr.turns == doctest::Approx((400.0 - 4.0) / (4 * M_PI)).epsilon(2e-3));
  CHECK_THROWS_AS(spiral_sample(hopf_takens(hp), {0.5, 0.0}, 0.05, 5), Error);
}
