#include <doctest.h>

#include <cmath>

#include "fracdyn/error.hpp"
#include "fracdyn/models.hpp"
#include "gen.hpp"

using namespace fracdyn;

namespace {

double eval_terms(const gen::PolyCase& c, double x, double y) {
  double s = 0.0;
  for (const auto& [a, i, j] : c.terms) s += a * std::pow(x, i) * std::pow(y, j);
  return s;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::DomainError;
}

}  // namespace

TEST_CASE("polynomial parse agrees with direct evaluation") {
  gen::Rng rng(11);
  for (int c = 0; c < 60; ++c) {
    const gen::PolyCase pc = gen::poly(rng);
    const Polynomial2 p = parse_poly(pc.text);
    for (int i = 0; i < 120; ++i) {
      const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
      const double want = eval_terms(pc, x, y);
      CHECK(p(x, y) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("polynomial str round-trips through the parser") {
  gen::Rng rng(12);
  for (int c = 0; c < 200; ++c) {
    const Polynomial2 p = parse_poly(gen::poly(rng, 7, 6).text);
    CHECK(parse_poly(p.str()) == p);
  }
}

TEST_CASE("polynomial derivatives match finite differences") {
  gen::Rng rng(13);
  for (int c = 0; c < 30; ++c) {
    const Polynomial2 p = parse_poly(gen::poly(rng).text);
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1), h = 1e-5;
    CHECK(p.dx()(x, y) == doctest::Approx((p(x + h, y) - p(x - h, y)) / (2 * h)).epsilon(1e-6).scale(1.0));
    CHECK(p.dy()(x, y) == doctest::Approx((p(x, y + h) - p(x, y - h)) / (2 * h)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("parser rejects malformed text with the right code") {
  for (const char* bad : {"", "x +", "2**x", "x^", "x^-1", "(x)", "1e", "x y"})
    CHECK(code_of([&] { parse_poly(bad); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_poly("x + z"); }) == Errc::UnknownVariable);
  try {
    parse_poly("x + 3 $");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 6);
  }
}

TEST_CASE("hopf-takens vector field") {
  gen::Rng rng(14);
  for (int c = 0; c < 20; ++c) {
    HopfTakensParams p;
    p.l = rng.integer(1, 4);
    for (int i = 0; i < p.l; ++i) p.a.push_back(rng.uniform(-1, 1));
    const PlanarSystem sys = hopf_takens(p);
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(-1.5, 1.5), y = rng.uniform(-1.5, 1.5), s = x * x + y * y;
      double P = std::pow(s, p.l);
      for (int k = 0; k < p.l; ++k) P += p.a[k] * std::pow(s, k);
      const Vec<2> v = sys(x, y);
      CHECK(v[0] == doctest::Approx(-y + x * P).epsilon(1e-12).scale(1.0));
      CHECK(v[1] == doctest::Approx(x + y * P).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK(code_of([] { hopf_takens({2, {0.1}}); }) == Errc::DomainError);
  CHECK(code_of([] { hopf_takens({0, {}}); }) == Errc::DomainError);
}

TEST_CASE("degenerate focus vector field") {
  gen::Rng rng(15);
  const std::vector<int> odd = {1, 3, 5, 7};
  for (int c = 0; c < 20; ++c) {
    const DegFocusParams p{rng.pick(odd), rng.pick(odd), rng.integer(0, 3), rng.coin() ? Sign::Plus : Sign::Minus};
    const PlanarSystem sys = degenerate_focus(p);
    const double sg = p.sign == Sign::Plus ? 1.0 : -1.0;
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
      const double H = std::pow(std::pow(x, 2 * p.m) + std::pow(y, 2 * p.n), p.k);
      const double f = -p.n * std::pow(y, 2 * p.n - 1) + sg * p.n * std::pow(x, p.m) * std::pow(y, p.n - 1) * H;
      const double g = p.m * std::pow(x, 2 * p.m - 1) + sg * p.m * std::pow(x, p.m - 1) * std::pow(y, p.n) * H;
      const Vec<2> v = sys(x, y);
      CHECK(v[0] == doctest::Approx(f).epsilon(1e-12).scale(1.0));
      CHECK(v[1] == doctest::Approx(g).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK(code_of([] { degenerate_focus({2, 3, 1, Sign::Minus}); }) == Errc::DomainError);
  CHECK(code_of([] { degenerate_focus({3, 3, -1, Sign::Minus}); }) == Errc::DomainError);
}

TEST_CASE("gen_trig invariants") {
  gen::Rng rng(16);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {1, 3}, {3, 3}, {5, 3}, {11, 3}, {21, 11}}) {
    const GenTrigTable t = gen_trig(m, n, 4096);
    // Period from the Beta function: 4 * B(1/2n, 1/2m) / (2mn).
    const double beta = std::beta(1.0 / (2 * n), 1.0 / (2 * m));
    CHECK(t.period == doctest::Approx(2.0 * beta / (m * n)).epsilon(1e-12));
    CHECK(std::fabs(t.return_period - t.period) <= 1e-9 * t.period);
    CHECK(t.max_conservation_defect() <= 1e-9);
    CHECK(t.max_symmetry_defect() <= 1e-9);
    CHECK(t.periodicity_defect() <= 1e-9);
    for (int i = 0; i < 200; ++i) {
      const double phi = rng.uniform(-3 * t.period, 3 * t.period);
      const double c = t.cs(phi), s = t.sn(phi);
      CHECK(std::fabs(std::pow(c, 2 * m) + std::pow(s, 2 * n) - 1.0) <= 1e-9);
      CHECK(t.cs(phi + t.period) == doctest::Approx(c).scale(1.0).epsilon(1e-9));
      CHECK(t.cs(-phi) == doctest::Approx(c).scale(1.0).epsilon(1e-9));
      CHECK(t.sn(-phi) == doctest::Approx(-s).scale(1.0).epsilon(1e-9));
    }
  }
  const GenTrigTable circ = gen_trig(1, 1, 2048);
  for (double phi : {0.1, 1.0, 2.5, 4.0}) {
    CHECK(circ.cs(phi) == doctest::Approx(std::cos(phi)).epsilon(1e-11));
    CHECK(circ.sn(phi) == doctest::Approx(std::sin(phi)).epsilon(1e-11));
  }
}

TEST_CASE("closed spirals") {
  CHECK(closed_spiral_radius(PowerSpiral{0.5}, 4.0) == doctest::Approx(0.5));
  CHECK(closed_spiral_radius(ExpSpiral{0.1}, 10.0) == doctest::Approx(std::exp(-1.0)));
  const Trajectory tr = closed_spiral(PowerSpiral{1.0}, 1.0, 200.0, 64, 1e-3);
  CHECK(tr.max_spacing() <= 1e-3 * (1 + 1e-12));
  CHECK(tr.winding() == doctest::Approx(199.0 / (2 * M_PI)).epsilon(1e-3));
  CHECK(code_of([] { closed_spiral(PowerSpiral{0.0}, 1.0, 10.0, 64); }) == Errc::DomainError);
}
