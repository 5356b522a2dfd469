#pragma once

#include <optional>
#include <vector>

#include "fracdyn/models.hpp"
#include "fracdyn/sequence.hpp"
#include "fracdyn/trajectory.hpp"

namespace fracdyn {

/// Any set field triggers a stop; the first to fire wins. Times and turns are
/// measured from the start, in the direction of integration.
struct StopCondition {
  std::optional<double> max_time;
  std::optional<double> max_turns;
  std::optional<double> radius_below;
  std::optional<double> radius_above;
  /// +1 forward in time, -1 backward.
  double direction = 1.0;
};

struct IntegrateOptions {
  long max_steps = 20'000'000;
  /// Upper bound on |h|; keeps a step from sweeping more than a fraction of a turn.
  double hmax = 0.25;
};

enum class StopReason { MaxTime, MaxTurns, RadiusBelow, RadiusAbove };

struct IntegrateResult {
  Trajectory traj;
  StopReason reason = StopReason::MaxTime;
  long steps = 0;
};

/// Dormand-Prince 5(4) with dense output; events located on the interpolant
/// to 1e-12 in time. Regular systems only.
IntegrateResult integrate_ex(const PlanarSystem& sys, Vec<2> init, const StopCondition& stop, double tol,
                             const IntegrateOptions& opt = {});

inline Trajectory integrate(const PlanarSystem& sys, Vec<2> init, const StopCondition& stop, double tol,
                            const IntegrateOptions& opt = {}) {
  return integrate_ex(sys, init, stop, tol, opt).traj;
}

struct SpiralOptions {
  double tol = 1e-10;
  int points_per_turn = 64;
  /// Largest allowed distance between consecutive output points.
  double max_spacing = 1e300;
  long max_steps = 20'000'000;
  /// Time direction; defaults to sys.approach_sign (toward the focus). Limit
  /// cycles are reached by whichever direction they attract in.
  std::optional<double> direction;
};

/// Follows the orbit toward sys.center (time direction from approach_sign)
/// until radius < r_min or max_turns, then resamples by angle.
Trajectory spiral_sample(const PlanarSystem& sys, Vec<2> init, double r_min, int max_turns,
                         const SpiralOptions& opt = {});

struct Section {
  Vec<2> base{0.0, 0.0};
  Vec<2> direction{1.0, 0.0};
  int orientation = +1;  // +1: normal component goes from negative to positive
};

struct CrossingSequence {
  std::vector<double> coords;  // distance along the section from base
  std::vector<double> times;   // trajectory parameter
  std::vector<double> residuals;  // |normal distance| at the reported point
};

CrossingSequence section_crossings(const Trajectory& traj, const Section& sec);

/// Integral over one period of Sn^{n-1} Cs^{m-1}: the per-turn increment of
/// r^{-2mnk}/(2mnk) under the reduced radial equation.
double degfocus_turn_weight(const GenTrigTable& table);

/// Radius on the characteristic ray phi = 0 after each full turn of the
/// reduced equation dr/dphi = +- Sn^{n-1} Cs^{m-1} r^{2mnk+1}.
MonotoneSequence radial_map(const DegFocusParams& p, const GenTrigTable& table, double r0, int turns);

}  // namespace fracdyn
