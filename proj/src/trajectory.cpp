#include "fracdyn/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace fracdyn {

double Trajectory::max_spacing() const {
  double m = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    m = std::max(m, std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y));
  return m;
}

double Trajectory::length() const {
  double s = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    s += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
  return s;
}

void Trajectory::bounds(double& xlo, double& xhi, double& ylo, double& yhi) const {
  xlo = ylo = std::numeric_limits<double>::infinity();
  xhi = yhi = -std::numeric_limits<double>::infinity();
  for (const TrajPoint& p : points) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
}

double Trajectory::winding() const {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double a0 = std::atan2(points[i - 1].y - center[1], points[i - 1].x - center[0]);
    const double a1 = std::atan2(points[i].y - center[1], points[i].x - center[0]);
    double d = a1 - a0;
    if (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    if (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    total += d;
  }
  return std::fabs(total) / (2 * std::numbers::pi);
}

void Trajectory::write(std::ostream& os) const {
  char buf[96];
  for (const TrajPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", time_sign * p.t, p.x, p.y);
    os << buf;
  }
}

}  // namespace fracdyn
