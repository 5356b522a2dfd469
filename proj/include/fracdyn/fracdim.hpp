#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracdyn/models.hpp"
#include "fracdyn/numeric.hpp"
#include "fracdyn/sequence.hpp"
#include "fracdyn/trajectory.hpp"

namespace fracdyn {

/// Geometric scales delta_j = delta_max * ratio^j down to delta_min.
struct ScaleGrid {
  double delta_max = 1e-1;
  double delta_min = 1e-4;
  double ratio = 0.7;

  void validate() const;
  std::vector<double> deltas() const;
  /// Grid with `count` scales spanning [delta_min, delta_max].
  static ScaleGrid spanning(double delta_max, double delta_min, int count);
};

enum class Method { BoxCount, Sausage, GapStructure, NucleusTail };
std::string method_name(Method m);

struct ContentBounds {
  double lower = 0.0;
  double upper = 0.0;
  double at_dim = 0.0;
};

/// One scale of a dimension fit: `measure` is N(delta) for box counts and
/// |U_delta| for area/length based methods.
struct ScaleSample {
  double delta = 0.0;
  double measure = 0.0;
  bool in_window = false;
};

struct DimensionEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  double delta_lo = 0.0;
  double delta_hi = 0.0;
  double r2 = 0.0;
  Method method = Method::BoxCount;
  std::optional<ContentBounds> content;
  std::vector<ScaleSample> scales;
};

struct WindowPolicy {
  int drop_coarse = 2;
  /// Box counts below this are discarded (BoxCount only).
  double min_count = 10.0;
  int min_scales = 6;
};

/// Fits log(measure) against log(delta) over the policy's window and returns
/// ambient - slope: pass 0 for box counts (N ~ delta^-d) and the space
/// dimension for neighbourhood measures (|U_delta| ~ delta^(ambient-d)).
DimensionEstimate fit_dimension(std::vector<ScaleSample> samples, Method method, double ambient,
                                const WindowPolicy& policy = {});

// ---- monotone sequences ------------------------------------------------------

/// Exact 1D measure of the delta-neighbourhood of {values} U {limit}, where the
/// unobserved tail between the last resolved term and the limit is taken as
/// filled once consecutive gaps drop below 2 delta.
double seq_neighbourhood(const MonotoneSequence& s, double delta);

/// Minimal number of closed intervals of length delta covering the same set.
long seq_cover_count(const MonotoneSequence& s, double delta);

DimensionEstimate seq_box_dim(const MonotoneSequence& s, const ScaleGrid& g, const WindowPolicy& p = {});
DimensionEstimate seq_gap_dim(const MonotoneSequence& s, const ScaleGrid& g, const WindowPolicy& p = {});
/// Scale grid from the sequence itself: from its diameter down to the
/// smallest gap.
ScaleGrid default_sequence_grid(const MonotoneSequence& s, int count = 24);
DimensionEstimate seq_gap_dim(const MonotoneSequence& s);

// ---- planar curves -----------------------------------------------------------

struct CurveOptions {
  /// Cap on row-interval evaluations per scale for the sausage raster.
  double raster_budget = 4e9;
  /// Raster row height as a fraction of delta.
  double row_fraction = 1.0 / 8.0;
  int threads = 1;
  WindowPolicy window;
};

/// Number of grid cells of side delta (origin at the bounding-box corner)
/// touched by any polyline segment.
long curve_box_count(const Trajectory& tr, double delta);
/// Area of the closed delta-neighbourhood of the polyline.
double curve_sausage_area(const Trajectory& tr, double delta, const CurveOptions& opt = {});

DimensionEstimate curve_box_dim(const Trajectory& tr, const ScaleGrid& g, const CurveOptions& opt = {});
DimensionEstimate curve_sausage_dim(const Trajectory& tr, const ScaleGrid& g, const CurveOptions& opt = {});

// ---- degenerate foci via the reduced radial equation ---------------------------

/// |S_delta| of a degenerate-focus spiral starting on the characteristic ray
/// at radius r0, assembled turn by turn: turns whose spacing exceeds the tube
/// width contribute tube area, the remaining turns (the nucleus) contribute the
/// area they enclose.
double degfocus_sausage_area(const DegFocusParams& p, const GenTrigTable& table, double r0, double delta,
                             int angular_samples = 512);

DimensionEstimate nucleus_tail_dim(const DegFocusParams& p, const GenTrigTable& table, double r0,
                                   const ScaleGrid& g, const WindowPolicy& w = {});

// ---- lattices ------------------------------------------------------------------

enum class LatticeFamily { Hopf, Canard, Unrestricted };

struct Lattice {
  LatticeFamily family = LatticeFamily::Hopf;
  /// Lattice value at index j.
  Rational point(int j) const;
  static constexpr int kMaxIndex = 10;
};

struct Classification {
  Rational snapped;
  std::optional<int> index_j;  // absent for the accumulation value 1
  double residual = 0.0;
  std::optional<long> cyclicity_bound;  // absent = unbounded
};

/// Nearest lattice point within `gate`; throws Errc::Ambiguous if none or more
/// than one lattice point lies within the gate, or the index exceeds 10.
Classification snap_to_lattice(double estimate, const Lattice& lat, double gate = 0.04);
inline Classification snap_to_lattice(const DimensionEstimate& d, const Lattice& lat, double gate = 0.04) {
  return snap_to_lattice(d.value, lat, gate);
}

/// Cyclicity implied by an exact lattice value (j+1 on the Hopf lattice, j+2 on
/// the canard lattice, absent at 1).
std::optional<long> lattice_bound(LatticeFamily fam, Rational d);

}  // namespace fracdyn
