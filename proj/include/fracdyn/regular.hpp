#pragma once

#include <optional>
#include <span>
#include <string>

#include "fracdyn/models.hpp"
#include "fracdyn/numeric.hpp"

namespace fracdyn {

enum class Regime { Exponential, Power };
enum class Certainty { Theorem, Conjecture };
/// What the spiral accumulates on: a point (dim = 2/(1+alpha)) or a closed
/// curve (dim = 1 + 1/(1+alpha)).
enum class Accumulation { Point, Cycle };

std::string certainty_name(Certainty c);

/// Predicted box dimension of a spiral. Exponential regimes have dimension 1;
/// power regimes carry the comparison exponent alpha and the value is derived
/// from it on every access.
struct DimPrediction {
  Regime regime = Regime::Exponential;
  Accumulation shape = Accumulation::Point;
  double alpha = 0.0;
  std::optional<Rational> alpha_exact;
  Certainty certainty = Certainty::Theorem;
  std::string source;

  double value() const;
  /// Exact value when alpha is rational (or the regime is exponential).
  std::optional<Rational> exact() const;
};

/// r = phi^{-alpha}, alpha in (0,1].
DimPrediction predict_power_spiral_dim(Rational alpha);
/// r = e^{-beta phi}, beta != 0.
DimPrediction predict_exp_spiral_dim(double beta);
DimPrediction predict_hopf_takens_dim(const HopfTakensParams& p);
DimPrediction predict_limit_cycle_dim(int multiplicity);
DimPrediction predict_degfocus_dim(const DegFocusParams& p);
/// Throws Errc::NotAccumulating for a1/b2 < 0.
DimPrediction predict_3d_spiral_dim(double a1, double b2);

/// Codimension k of a weak focus from a spiral dimension 4k/(2k+1).
Rational hopf_codim_from_dim(Rational d);

double polycycle_spiral_dim(std::span<const double> seq_dims);
Rational saddle_loop_dim(int codim);

/// floor(3 + (1+r)(d-1)/(2-d)) with d = 1 + max(d1,d2) and
/// r = min(d2(1-d1)/(d1(1-d2)), its inverse). Inputs must lie in (0,1).
long two_saddle_cyclicity_bound(Rational d1, Rational d2);
long two_saddle_cyclicity_bound(double d1, double d2);
/// The rectifiable branch (spiral dimension 1).
constexpr long two_saddle_rectifiable_bound() { return 3; }

}  // namespace fracdyn
