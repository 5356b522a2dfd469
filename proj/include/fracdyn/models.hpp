#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fracdyn/dopri.hpp"
#include "fracdyn/polynomial.hpp"
#include "fracdyn/trajectory.hpp"

namespace fracdyn {

enum class SystemKind { Regular, SlowFast };

/// x' = f, y' = g (Regular) or x' = f, y' = eps*g (SlowFast, used at eps = 0).
struct PlanarSystem {
  Polynomial2 f;
  Polynomial2 g;
  SystemKind kind = SystemKind::Regular;
  /// Declared focus used for turn counting and radius stops.
  Vec<2> center{0.0, 0.0};
  /// +1 if forward time spirals into `center`, -1 if backward time does.
  double approach_sign = 1.0;
  std::string label;

  Vec<2> operator()(double x, double y) const { return {f(x, y), g(x, y)}; }
};

struct HopfTakensParams {
  int l = 1;
  std::vector<double> a;  // a_0 .. a_{l-1}
};

enum class Sign { Plus = 1, Minus = -1 };

struct DegFocusParams {
  int m = 1;
  int n = 1;
  int k = 0;
  Sign sign = Sign::Minus;
};

void validate(const HopfTakensParams& p);
void validate(const DegFocusParams& p);

/// x' = -y + x P(x^2+y^2), y' = x + y P(x^2+y^2), P(s) = s^l + sum a_i s^i.
PlanarSystem hopf_takens(const HopfTakensParams& p);

/// x' = -n y^{2n-1} +- n x^m y^{n-1} H^k, y' = m x^{2m-1} +- m x^{m-1} y^n H^k,
/// H = x^{2m} + y^{2n}.
PlanarSystem degenerate_focus(const DegFocusParams& p);

/// Builds a slow-fast system from polynomial text.
PlanarSystem slow_fast(std::string_view f, std::string_view g);

/// Period of the (m,n)-trigonometric functions from the Gamma-function formula.
double gen_trig_period(int m, int n);

/// Cs, Sn solving Cs' = -n Sn^{2n-1}, Sn' = m Cs^{2m-1}, (Cs,Sn)(0) = (1,0),
/// tabulated on a uniform grid over one period (endpoints included).
class GenTrigTable {
 public:
  int m = 1;
  int n = 1;
  double period = 0.0;         // Gamma formula
  double return_period = 0.0;  // first return of the integrated orbit to (1,0)
  std::vector<double> phi, cs_s, sn_s;

  /// Quintic Hermite interpolation, reduced modulo the period.
  double cs(double phi) const;
  double sn(double phi) const;
  /// Sn^{n-1} Cs^{m-1}, the angular weight of the reduced radial equation.
  double weight(double phi) const;

  double max_conservation_defect() const;
  double max_symmetry_defect() const;
  double periodicity_defect() const;

 private:
  void eval(double phi, double& c, double& s) const;
};

GenTrigTable gen_trig(int m, int n, int grid_size, double tol = 1e-13);

struct PowerSpiral { double alpha; };
struct ExpSpiral { double beta; };
struct ThreeDSpiral { double a1; double b2; };
using ClosedSpiralKind = std::variant<PowerSpiral, ExpSpiral, ThreeDSpiral>;

/// Radius as a function of the spiral parameter (the angle for Power/Exp).
double closed_spiral_radius(const ClosedSpiralKind& kind, double phi);

/// Analytic samples over phi in [phi_lo, phi_hi] with at least samples_per_turn
/// points per turn and consecutive points no farther apart than max_spacing.
/// ThreeD uses time t = -sign(b2) phi, so r = (|b2| phi + 1)^{-a1/b2} and
/// angle = t + 1: the planar projection with unit integration constants,
/// traversed toward the origin. Points are ordered by increasing phi.
Trajectory closed_spiral(const ClosedSpiralKind& kind, double phi_lo, double phi_hi,
                         int samples_per_turn, double max_spacing = 1e300);

}  // namespace fracdyn
