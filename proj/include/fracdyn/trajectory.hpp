#pragma once

#include <memory>
#include <ostream>
#include <vector>

#include "fracdyn/dopri.hpp"

namespace fracdyn {

struct TrajPoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Continuous extension of a sampled orbit, parametrized like Trajectory::t.
class DenseOutput {
 public:
  virtual ~DenseOutput() = default;
  virtual Vec<2> at(double t) const = 0;
};

/// Polyline sample of an orbit. `t` increases along the polyline; for orbits
/// integrated backward in time `time_sign` is -1 and the physical time is
/// time_sign * t.
struct Trajectory {
  std::vector<TrajPoint> points;
  double tol = 0.0;
  double turns = 0.0;
  Vec<2> center{0.0, 0.0};
  double time_sign = 1.0;
  std::shared_ptr<const DenseOutput> dense;

  double max_spacing() const;
  double length() const;
  /// Axis-aligned bounding box of the points.
  void bounds(double& xlo, double& xhi, double& ylo, double& yhi) const;
  /// Recount turns around `center` from the stored polyline.
  double winding() const;
  /// Three-column "t x y" text.
  void write(std::ostream& os) const;
};

}  // namespace fracdyn
