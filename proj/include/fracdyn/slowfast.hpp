#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracdyn/fracdim.hpp"
#include "fracdyn/models.hpp"
#include "fracdyn/sequence.hpp"

namespace fracdyn {

// Everything here works on the eps = 0 slice of x' = f, y' = eps g.

enum class Stability { Attracting, Repelling };
std::string stability_name(Stability s);

struct Window {
  double x_lo = -1.0, x_hi = 1.0;
  double y_lo = -1.0, y_hi = 1.0;
};

/// Normally hyperbolic piece of {f = 0}, stored as a graph x -> y(x).
struct CriticalBranch {
  std::vector<double> xs;
  std::vector<double> ys;
  Stability stability = Stability::Attracting;
  double residual = 0.0;  // max |f| over the samples
};

/// Traces {f = 0} through the window by solving for y on an x grid and splits
/// it where f_x changes sign. Throws NoBranch / FoldResolution.
std::vector<CriticalBranch> critical_branches(const PlanarSystem& sys, const Window& w, int columns = 801);

enum class Concavity { Up, Down };

struct HopfPoint {
  double x = 0.0, y = 0.0;
  double f = 0.0, fx = 0.0, fy = 0.0, fxx = 0.0, g = 0.0, gx = 0.0;
  Concavity concavity = Concavity::Up;
};

/// Newton on (f, f_x) = 0 from `guess`, then checks f_y != 0 (NotContact),
/// g = 0, f_xx != 0 and g_x f_y < 0 (NotHopf, naming the failed condition).
HopfPoint find_slow_fast_hopf(const PlanarSystem& sys, Vec<2> guess);

/// y on the critical curve above x, continued from the Hopf point.
double critical_y(const PlanarSystem& sys, const HopfPoint& hp, double x);

/// x-component of the slow vector field, -g f_y / f_x on the critical curve,
/// with its limit -(g_x f_y)/f_xx at the contact point.
double slow_vf_x(const PlanarSystem& sys, const HopfPoint& hp, double x);

struct FiberEnds {
  double alpha_x = 0.0;  // repelling side
  double omega_x = 0.0;  // attracting side
};

/// Roots of f(., y) = 0 nearest the contact point on either side.
FiberEnds fast_fiber_endpoints(const PlanarSystem& sys, double y, const HopfPoint& hp);

struct SDIValue {
  double value = 0.0;
  double y_entry = 0.0;  // y~
  double y_exit = 0.0;   // y-bar
  double quadrature_error = 0.0;
};

/// Integral of -(f_x)^2/(g f_y) along the critical curve, in x, from the
/// attracting end at height y_entry to the repelling end at height y_exit.
SDIValue sdi(const PlanarSystem& sys, double y_entry, double y_exit, const HopfPoint& hp);

/// Same integrand between two arbitrary abscissae (used for additivity checks).
SDIValue sdi_segment(const PlanarSystem& sys, double x_from, double x_to, const HopfPoint& hp);

double tilde_I(const PlanarSystem& sys, double y, const HopfPoint& hp);

enum class Verdict { ConstantNeg, ConstantPos, Violated };
std::string verdict_name(Verdict v);

struct Assumption2 {
  Verdict verdict = Verdict::Violated;
  std::optional<double> y_where;  // first sample where the sign changed or vanished
  int samples = 0;
};

/// Samples tilde_I on a grid log-spaced in the distance from `base` (the
/// contact height, or the balanced level) over [lo, hi]. A sampled verdict,
/// not a proof.
Assumption2 check_assumption2(const PlanarSystem& sys, const HopfPoint& hp, double lo, double hi, int samples = 64,
                              std::optional<double> base = std::nullopt);

/// The unique zero of tilde_I in (lo, hi), to 1e-12.
double balanced_canard_level(const PlanarSystem& sys, const HopfPoint& hp, double lo, double hi, int samples = 64);

enum class SeqMode { Hopf, Canard };
enum class SdiSign { Neg, Pos };

/// Next term toward `limit`: solves I(y', y) = 0 (Neg) or I(y, y') = 0 (Pos)
/// for y' strictly between limit and y.
double entry_exit_next(const PlanarSystem& sys, const HopfPoint& hp, double y, double limit, SdiSign sign,
                       double* residual = nullptr);

struct EntryExitSequence {
  double y0 = 0.0;
  MonotoneSequence values;
  std::vector<double> residuals;  // |I| at each solved pair (none for y0)
  SeqMode mode = SeqMode::Hopf;
  SdiSign sdi_sign = SdiSign::Neg;
  /// Stopped early because consecutive terms came closer than the gap floor.
  bool truncated = false;
};

struct EntryExitOptions {
  double gap_floor = 1e-13;
  int check_samples = 64;
};

/// N iterations of entry_exit_next from y0. Hopf mode accumulates at y_c;
/// Canard mode at `balanced` (required). Throws AssumptionViolated when the
/// sampled sign of tilde_I is not constant on the range, TruncatedSequence
/// when the floor leaves fewer than 16 terms.
EntryExitSequence entry_exit_sequence(const PlanarSystem& sys, const HopfPoint& hp, double y0, int N, SeqMode mode,
                                      std::optional<double> balanced = std::nullopt,
                                      const EntryExitOptions& opt = {});

Classification classify_hopf(double d, double gate = 0.04);
Classification classify_hopf(const DimensionEstimate& d, double gate = 0.04);
Classification classify_canard(double d, double gate = 0.04);
Classification classify_canard(const DimensionEstimate& d, double gate = 0.04);

/// (d+1)/(2(1-d)) and (2-d)/(1-d) at an exact lattice value; nullopt at 1.
std::optional<Rational> hopf_bound_value(Rational d);
std::optional<Rational> canard_bound_value(Rational d);

}  // namespace fracdyn
