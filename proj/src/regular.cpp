#include "fracdyn/regular.hpp"

#include <algorithm>
#include <cmath>

#include "fracdyn/error.hpp"

namespace fracdyn {

std::string certainty_name(Certainty c) { return c == Certainty::Theorem ? "Theorem" : "Conjecture"; }

double DimPrediction::value() const {
  if (regime == Regime::Exponential) return 1.0;
  return shape == Accumulation::Point ? 2.0 / (1.0 + alpha) : 1.0 + 1.0 / (1.0 + alpha);
}

std::optional<Rational> DimPrediction::exact() const {
  if (regime == Regime::Exponential) return Rational(1);
  if (!alpha_exact) return std::nullopt;
  const Rational one(1);
  return shape == Accumulation::Point ? Rational(2) / (one + *alpha_exact) : one + one / (one + *alpha_exact);
}

namespace {

DimPrediction power(Rational alpha, Accumulation shape, Certainty c, std::string source) {
  DimPrediction d;
  d.regime = Regime::Power;
  d.shape = shape;
  d.alpha = alpha.to_double();
  d.alpha_exact = alpha;
  d.certainty = c;
  d.source = std::move(source);
  return d;
}

DimPrediction exponential(Accumulation shape, std::string source) {
  DimPrediction d;
  d.regime = Regime::Exponential;
  d.shape = shape;
  d.source = std::move(source);
  return d;
}

}  // namespace

DimPrediction predict_power_spiral_dim(Rational alpha) {
  if (!(Rational(0) < alpha && alpha <= Rational(1))) fail(Errc::DomainError, "alpha must lie in (0,1]");
  return power(alpha, Accumulation::Point, Certainty::Theorem, "power spiral");
}

DimPrediction predict_exp_spiral_dim(double beta) {
  if (beta == 0.0 || !std::isfinite(beta)) fail(Errc::DomainError, "beta must be finite and nonzero");
  return exponential(Accumulation::Point, "exponential spiral");
}

DimPrediction predict_hopf_takens_dim(const HopfTakensParams& p) {
  validate(p);
  if (p.a[0] != 0.0) return exponential(Accumulation::Point, "hyperbolic focus");
  int k = p.l;
  for (int i = 1; i < p.l; ++i)
    if (p.a[i] != 0.0) {
      k = i;
      break;
    }
  // Comparable with r = phi^{-1/(2k)}, dimension 4k/(2k+1).
  return power(Rational(1, 2 * k), Accumulation::Point, Certainty::Theorem, "weak focus of codimension " + std::to_string(k));
}

DimPrediction predict_limit_cycle_dim(int multiplicity) {
  if (multiplicity < 1) fail(Errc::DomainError, "multiplicity must be >= 1");
  if (multiplicity == 1) return exponential(Accumulation::Cycle, "hyperbolic limit cycle");
  return power(Rational(1, multiplicity - 1), Accumulation::Cycle, Certainty::Theorem,
               "limit cycle of multiplicity " + std::to_string(multiplicity));
}

DimPrediction predict_degfocus_dim(const DegFocusParams& p) {
  validate(p);
  if (p.k == 0) return exponential(Accumulation::Point, "degenerate focus, k = 0");
  const Rational one(1);
  if (p.m == p.n) {
    // 2 - 2/(1+2kn) = 2/(1+alpha) with alpha = 1/(2kn).
    return power(Rational(1, 2 * p.k * p.n), Accumulation::Point, Certainty::Theorem, "degenerate focus, m = n");
  }
  // Conjectured 2 - (1 + n/m)/(1 + 2kn), written through alpha = 2/d - 1.
  // The formula is used with m the larger exponent; the system is symmetric
  // under swapping (x, m) with (y, n).
  const int M = std::max(p.m, p.n), N = std::min(p.m, p.n);
  const Rational d = Rational(2) - (one + Rational(N, M)) / (one + Rational(2 * p.k * N));
  return power(Rational(2) / d - one, Accumulation::Point, Certainty::Conjecture, "degenerate focus, m != n");
}

DimPrediction predict_3d_spiral_dim(double a1, double b2) {
  if (b2 == 0.0) fail(Errc::DomainError, "b2 must be nonzero");
  const double ratio = a1 / b2;
  if (ratio < 0.0) fail(Errc::NotAccumulating, "a1/b2 < 0: the origin is not an accumulation point");
  if (ratio > 1.0) return exponential(Accumulation::Point, "Hoelderian spiral");
  if (ratio == 0.0) fail(Errc::NotAccumulating, "a1 = 0: the radius is constant");
  DimPrediction d;
  d.regime = Regime::Power;
  d.shape = Accumulation::Point;
  d.alpha = ratio;
  // Keep an exact value when both inputs are integers.
  if (a1 == std::floor(a1) && b2 == std::floor(b2) && std::fabs(a1) < 1e9 && std::fabs(b2) < 1e9)
    d.alpha_exact = Rational(static_cast<std::int64_t>(a1), static_cast<std::int64_t>(b2));
  d.source = "Lipschitzian spiral";
  return d;
}

Rational hopf_codim_from_dim(Rational d) {
  if (!(Rational(1) < d) || !(d < Rational(2))) fail(Errc::DomainError, "weak-focus dimension must lie in (1,2)");
  return d / (Rational(2) * (Rational(2) - d));
}

double polycycle_spiral_dim(std::span<const double> seq_dims) {
  if (seq_dims.empty()) fail(Errc::DomainError, "need at least one sequence dimension");
  double mx = 0.0;
  for (double d : seq_dims) {
    if (!(d >= 0.0 && d < 1.0)) fail(Errc::DomainError, "sequence dimensions must lie in [0,1)");
    mx = std::max(mx, d);
  }
  return 1.0 + mx;
}

Rational saddle_loop_dim(int codim) {
  if (codim < 1) fail(Errc::DomainError, "codimension must be >= 1");
  return codim % 2 == 0 ? Rational(2) - Rational(2, codim) : Rational(2) - Rational(2, codim + 1);
}

long two_saddle_cyclicity_bound(Rational d1, Rational d2) {
  const Rational zero(0), one(1);
  if (!(zero < d1 && d1 < one && zero < d2 && d2 < one))
    fail(Errc::DomainError, "two-saddle bound needs d1, d2 in (0,1); use the rectifiable branch for d = 1");
  const Rational rho = (d2 * (one - d1)) / (d1 * (one - d2));
  const Rational r = rho < one / rho ? rho : one / rho;
  const Rational d = one + (d1 < d2 ? d2 : d1);
  return (Rational(3) + (one + r) * (d - one) / (Rational(2) - d)).floor();
}

long two_saddle_cyclicity_bound(double d1, double d2) {
  if (!(d1 > 0.0 && d1 < 1.0 && d2 > 0.0 && d2 < 1.0))
    fail(Errc::DomainError, "two-saddle bound needs d1, d2 in (0,1); use the rectifiable branch for d = 1");
  const double rho = d2 * (1.0 - d1) / (d1 * (1.0 - d2));
  const double r = std::min(rho, 1.0 / rho);
  const double d = 1.0 + std::max(d1, d2);
  const double b = 3.0 + (1.0 + r) * (d - 1.0) / (2.0 - d);
  // Values that are integers in exact arithmetic must not round down.
  return static_cast<long>(std::floor(b + 1e-9 * std::max(1.0, b)));
}

}  // namespace fracdyn
