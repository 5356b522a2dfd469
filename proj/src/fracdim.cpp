#include "fracdyn/fracdim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "fracdyn/error.hpp"
#include "fracdyn/flow.hpp"

namespace fracdyn {

// ---- scale grid / fitting ------------------------------------------------------

void ScaleGrid::validate() const {
  if (!(delta_min > 0.0 && delta_min < delta_max)) fail(Errc::DomainError, "scale grid needs 0 < delta_min < delta_max");
  if (!(ratio > 0.0 && ratio < 1.0)) fail(Errc::DomainError, "scale grid ratio must lie in (0,1)");
  if (deltas().size() < 12) fail(Errc::DomainError, "scale grid needs at least 12 scales");
}

std::vector<double> ScaleGrid::deltas() const {
  std::vector<double> d;
  for (int j = 0;; ++j) {
    const double v = delta_max * std::pow(ratio, j);
    if (v < delta_min * (1.0 - 1e-12)) break;
    d.push_back(v);
    if (j > 10000) break;
  }
  return d;
}

ScaleGrid ScaleGrid::spanning(double delta_max, double delta_min, int count) {
  if (count < 2) fail(Errc::DomainError, "need at least two scales");
  ScaleGrid g;
  g.delta_max = delta_max;
  g.delta_min = delta_min;
  g.ratio = std::pow(delta_min / delta_max, 1.0 / (count - 1));
  return g;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::BoxCount: return "BoxCount";
    case Method::Sausage: return "Sausage";
    case Method::GapStructure: return "GapStructure";
    case Method::NucleusTail: return "NucleusTail";
  }
  return "?";
}

DimensionEstimate fit_dimension(std::vector<ScaleSample> samples, Method method, double ambient,
                                const WindowPolicy& policy) {
  std::sort(samples.begin(), samples.end(), [](const ScaleSample& a, const ScaleSample& b) { return a.delta > b.delta; });
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].in_window = false;
    if (static_cast<int>(i) < policy.drop_coarse) continue;
    if (!(samples[i].measure > 0.0) || !std::isfinite(samples[i].measure)) continue;
    if (method == Method::BoxCount && samples[i].measure < policy.min_count) continue;
    keep.push_back(i);
  }
  const int K = static_cast<int>(keep.size());
  if (K < policy.min_scales)
    fail(Errc::InsufficientScales, std::to_string(K) + " usable scales, need " + std::to_string(policy.min_scales));

  std::vector<double> lx(K), ly(K);
  for (int i = 0; i < K; ++i) {
    lx[i] = std::log(samples[keep[i]].delta);
    ly[i] = std::log(samples[keep[i]].measure);
  }
  int best_lo = 0, best_len = 0;
  LineFit best;
  best.r2 = -1.0;
  for (int len = policy.min_scales; len <= K; ++len) {
    for (int lo = 0; lo + len <= K; ++lo) {
      const LineFit f = fit_line(std::span<const double>(lx).subspan(lo, len), std::span<const double>(ly).subspan(lo, len));
      // Longer windows win ties.
      if (f.r2 > best.r2 + 1e-12 || (std::fabs(f.r2 - best.r2) <= 1e-12 && len > best_len)) {
        best = f;
        best_lo = lo;
        best_len = len;
      }
    }
  }

  DimensionEstimate est;
  est.method = method;
  est.value = std::clamp(ambient - best.slope, 0.0, 2.0);
  est.stderr_ = best.slope_stderr;
  est.r2 = best.r2;
  for (int i = best_lo; i < best_lo + best_len; ++i) samples[keep[i]].in_window = true;
  est.delta_hi = samples[keep[best_lo]].delta;
  est.delta_lo = samples[keep[best_lo + best_len - 1]].delta;
  if (method != Method::BoxCount) {
    ContentBounds cb;
    cb.at_dim = est.value;
    cb.lower = std::numeric_limits<double>::infinity();
    cb.upper = 0.0;
    for (int i = best_lo; i < best_lo + best_len; ++i) {
      const ScaleSample& s = samples[keep[i]];
      const double c = s.measure / std::pow(s.delta, ambient - est.value);
      cb.lower = std::min(cb.lower, c);
      cb.upper = std::max(cb.upper, c);
    }
    est.content = cb;
  }
  est.scales = std::move(samples);
  return est;
}

// ---- sequences -----------------------------------------------------------------

namespace {

// Distances of the terms from the limit, in the order they approach it.
std::vector<double> offsets(const MonotoneSequence& s) {
  std::vector<double> d(s.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::fabs(s.values[i] - s.limit);
  return d;
}

// First index K such that every later gap is below 2 delta (the tail hull
// applies from y_K on); returns size() when even the last gap is resolved.
std::size_t tail_start(const std::vector<double>& d, double two_delta) {
  if (d.size() < 2) return d.size();
  std::size_t K = d.size() - 1;
  while (K > 0 && d[K - 1] - d[K] < two_delta) --K;
  // No unresolved gap at the end: the tail is not represented.
  if (K == d.size() - 1 && d[K - 1] - d[K] >= two_delta) return d.size();
  return K;
}

}  // namespace

double seq_neighbourhood(const MonotoneSequence& s, double delta) {
  const std::vector<double> d = offsets(s);
  if (d.empty()) return 0.0;
  const double two = 2.0 * delta;
  const std::size_t K = tail_start(d, two);
  double m = 0.0;
  if (K == d.size()) {
    // Every gap resolved: literal finite set including the limit.
    for (std::size_t i = 0; i + 1 < d.size(); ++i) m += std::min(d[i] - d[i + 1], two);
    m += std::min(d.back(), two) + two;
    return m;
  }
  for (std::size_t i = 0; i < K; ++i) m += std::min(d[i] - d[i + 1], two);
  return m + d[K] + two;
}

long seq_cover_count(const MonotoneSequence& s, double delta) {
  const std::vector<double> d = offsets(s);
  if (d.empty()) return 0;
  const std::size_t K = tail_start(d, 2.0 * delta);
  // Points of the cover problem, largest offset first; the tail hull is the
  // segment [0, d[K]].
  std::vector<double> pts;
  const std::size_t last = K == d.size() ? d.size() : K;
  pts.assign(d.begin(), d.begin() + static_cast<long>(last));
  long count = 0;
  double hull_top = K == d.size() ? 0.0 : d[K];
  std::size_t i = 0;
  while (i < pts.size()) {
    const double top = pts[i];
    const double bottom = top - delta;
    if (bottom <= hull_top) {
      // This interval reaches the hull (or the limit); the rest is the hull.
      break;
    }
    ++count;
    while (i < pts.size() && pts[i] >= bottom) ++i;
  }
  double start = i < pts.size() ? pts[i] : hull_top;
  start = std::max(start, hull_top);
  // Cover [0, start] with intervals of length delta; a point set needs one.
  count += std::max<long>(1, static_cast<long>(std::ceil(start / delta - 1e-12)));
  return count;
}

ScaleGrid default_sequence_grid(const MonotoneSequence& s, int count) {
  const std::vector<double> d = offsets(s);
  double gmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) gmin = std::min(gmin, d[i] - d[i + 1]);
  gmin = std::min(gmin, d.back());
  const double dmax = d.front();
  if (!(gmin > 0.0) || !(dmax > gmin)) fail(Errc::DegenerateSequence, "sequence has no resolvable gaps");
  return ScaleGrid::spanning(0.5 * dmax, gmin, count);
}

namespace {

void check_sequence(const MonotoneSequence& s, const ScaleGrid& g) {
  s.validate(16);
  g.validate();
  const std::vector<double> d = offsets(s);
  double gmax = 0.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) gmax = std::max(gmax, d[i] - d[i + 1]);
  if (gmax < g.delta_min) fail(Errc::DegenerateSequence, "all gaps are below delta_min");
}

}  // namespace

DimensionEstimate seq_box_dim(const MonotoneSequence& s, const ScaleGrid& g, const WindowPolicy& p) {
  check_sequence(s, g);
  std::vector<ScaleSample> samples;
  for (double delta : g.deltas()) samples.push_back({delta, static_cast<double>(seq_cover_count(s, delta)), false});
  return fit_dimension(std::move(samples), Method::BoxCount, 0.0, p);
}

DimensionEstimate seq_gap_dim(const MonotoneSequence& s, const ScaleGrid& g, const WindowPolicy& p) {
  check_sequence(s, g);
  std::vector<ScaleSample> samples;
  for (double delta : g.deltas()) samples.push_back({delta, seq_neighbourhood(s, delta), false});
  WindowPolicy q = p;
  q.min_count = 0.0;
  return fit_dimension(std::move(samples), Method::GapStructure, 1.0, q);
}

DimensionEstimate seq_gap_dim(const MonotoneSequence& s) {
  s.validate(16);
  return seq_gap_dim(s, default_sequence_grid(s));
}

// ---- curves ----------------------------------------------------------------------

namespace {

void check_resolution(const Trajectory& tr, const ScaleGrid& g) {
  if (tr.points.size() < 2) fail(Errc::UnderResolved, "trajectory has fewer than two points");
  g.validate();
  const double sp = tr.max_spacing();
  if (sp > g.delta_min / 3.0)
    fail(Errc::UnderResolved, "sample spacing " + std::to_string(sp) + " exceeds delta_min/3");
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Keeps points at least `spacing` apart (always keeps both ends).
std::vector<Vec<2>> decimate(const Trajectory& tr, double spacing) {
  std::vector<Vec<2>> out;
  out.reserve(tr.points.size());
  out.push_back({tr.points.front().x, tr.points.front().y});
  for (std::size_t i = 1; i + 1 < tr.points.size(); ++i) {
    const Vec<2>& last = out.back();
    if (std::hypot(tr.points[i].x - last[0], tr.points[i].y - last[1]) >= spacing)
      out.push_back({tr.points[i].x, tr.points[i].y});
  }
  out.push_back({tr.points.back().x, tr.points.back().y});
  return out;
}

}  // namespace

long curve_box_count(const Trajectory& tr, double delta) {
  double xlo, xhi, ylo, yhi;
  tr.bounds(xlo, xhi, ylo, yhi);
  // Chords of length delta/4 stay within delta/(128 R) * delta of the curve.
  const std::vector<Vec<2>> pts = decimate(tr, 0.25 * delta);
  struct XY {
    double x, y;
  };
  std::vector<XY> P(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) P[i] = {pts[i][0], pts[i][1]};
  std::vector<std::uint64_t> cells;
  cells.reserve(P.size() * 2);
  auto key = [](std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint64_t>(iy);
  };
  for (std::size_t s = 0; s + 1 < P.size(); ++s) {
    // Grid traversal (Amanatides-Woo) from A to B in cell units.
    const double ax = (P[s].x - xlo) / delta, ay = (P[s].y - ylo) / delta;
    const double bx = (P[s + 1].x - xlo) / delta, by = (P[s + 1].y - ylo) / delta;
    std::int64_t ix = static_cast<std::int64_t>(std::floor(ax)), iy = static_cast<std::int64_t>(std::floor(ay));
    const std::int64_t jx = static_cast<std::int64_t>(std::floor(bx)), jy = static_cast<std::int64_t>(std::floor(by));
    cells.push_back(key(ix, iy));
    const double dx = bx - ax, dy = by - ay;
    const int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
    const double inf = std::numeric_limits<double>::infinity();
    double tmx = dx != 0 ? ((sx > 0 ? (ix + 1) - ax : ax - ix) / std::fabs(dx)) : inf;
    double tmy = dy != 0 ? ((sy > 0 ? (iy + 1) - ay : ay - iy) / std::fabs(dy)) : inf;
    const double tdx = dx != 0 ? 1.0 / std::fabs(dx) : inf, tdy = dy != 0 ? 1.0 / std::fabs(dy) : inf;
    long guard = std::labs(jx - ix) + std::labs(jy - iy);
    while ((ix != jx || iy != jy) && guard-- > 0) {
      if (tmx < tmy) {
        ix += sx;
        tmx += tdx;
      } else {
        iy += sy;
        tmy += tdy;
      }
      cells.push_back(key(ix, iy));
    }
    if (ix != jx || iy != jy) cells.push_back(key(jx, jy));
  }
  std::sort(cells.begin(), cells.end());
  return static_cast<long>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

double curve_sausage_area(const Trajectory& tr, double delta, const CurveOptions& opt) {
  const std::vector<Vec<2>> P = decimate(tr, 0.75 * delta);
  double xlo, xhi, ylo, yhi;
  tr.bounds(xlo, xhi, ylo, yhi);
  const double h = delta * opt.row_fraction;
  const double y0 = ylo - delta;
  const long nrows = static_cast<long>(std::ceil((yhi - ylo + 2.0 * delta) / h));

  struct Seg {
    long r0, r1;
    std::size_t i;
  };
  std::vector<Seg> segs;
  const std::size_t nseg = P.size() > 1 ? P.size() - 1 : 1;
  segs.reserve(nseg);
  double work = 0.0;
  for (std::size_t i = 0; i < nseg; ++i) {
    const Vec<2>& A = P[i];
    const Vec<2>& B = P.size() > 1 ? P[i + 1] : P[i];
    const double lo = std::min(A[1], B[1]) - delta, hi = std::max(A[1], B[1]) + delta;
    // Row r samples y = y0 + (r + 0.5) h.
    const long r0 = std::max<long>(0, static_cast<long>(std::ceil((lo - y0) / h - 0.5)));
    const long r1 = std::min<long>(nrows - 1, static_cast<long>(std::floor((hi - y0) / h - 0.5)));
    if (r1 < r0) continue;
    segs.push_back({r0, r1, i});
    work += static_cast<double>(r1 - r0 + 1);
  }
  if (work > opt.raster_budget)
    fail(Errc::RasterBudget, "sausage raster needs " + std::to_string(work) + " row evaluations");
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.r0 < b.r0 || (a.r0 == b.r0 && a.i < b.i); });

  const double d2 = delta * delta;
  auto interval = [&](std::size_t i, double yr, double& lo, double& hi) {
    const Vec<2>& A = P[i];
    const Vec<2>& B = P.size() > 1 ? P[i + 1] : P[i];
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (const Vec<2>* C : {&A, &B}) {
      const double dy = yr - (*C)[1];
      if (dy * dy <= d2) {
        const double w = std::sqrt(d2 - dy * dy);
        lo = std::min(lo, (*C)[0] - w);
        hi = std::max(hi, (*C)[0] + w);
      }
    }
    const double ex = B[0] - A[0], ey = B[1] - A[1];
    const double L = std::hypot(ex, ey);
    if (L > 0.0) {
      const double ux = ex / L, uy = ey / L;
      const double nx = -uy, ny = ux;
      double a = -std::numeric_limits<double>::infinity(), b = -a;
      // c0 <= coef * (x - Ax) + off <= c1
      auto clip = [&](double coef, double off, double c0, double c1) {
        if (coef == 0.0) {
          if (off < c0 || off > c1) {
            a = 1.0;
            b = 0.0;
          }
          return;
        }
        double p = (c0 - off) / coef, q = (c1 - off) / coef;
        if (p > q) std::swap(p, q);
        a = std::max(a, A[0] + p);
        b = std::min(b, A[0] + q);
      };
      clip(ux, (yr - A[1]) * uy, 0.0, L);
      clip(nx, (yr - A[1]) * ny, -delta, delta);
      if (a <= b) {
        lo = std::min(lo, a);
        hi = std::max(hi, b);
      }
    }
  };

  std::vector<std::size_t> active;
  std::vector<std::pair<double, double>> iv;
  std::size_t next = 0;
  double area = 0.0;
  for (long r = 0; r < nrows; ++r) {
    while (next < segs.size() && segs[next].r0 <= r) active.push_back(next++);
    if (active.empty()) continue;
    const double yr = y0 + (r + 0.5) * h;
    iv.clear();
    std::size_t w = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Seg& s = segs[active[k]];
      if (s.r1 < r) continue;
      active[w++] = active[k];
      double lo, hi;
      interval(s.i, yr, lo, hi);
      if (lo < hi) iv.emplace_back(lo, hi);
    }
    active.resize(w);
    if (iv.empty()) continue;
    std::sort(iv.begin(), iv.end());
    double len = 0.0, cl = iv[0].first, ch = iv[0].second;
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (iv[k].first > ch) {
        len += ch - cl;
        cl = iv[k].first;
        ch = iv[k].second;
      } else {
        ch = std::max(ch, iv[k].second);
      }
    }
    len += ch - cl;
    area += len * h;
  }
  return area;
}

DimensionEstimate curve_box_dim(const Trajectory& tr, const ScaleGrid& g, const CurveOptions& opt) {
  check_resolution(tr, g);
  const std::vector<double> ds = g.deltas();
  std::vector<ScaleSample> samples(ds.size());
  parallel_for(ds.size(), opt.threads, [&](std::size_t i) {
    samples[i] = {ds[i], static_cast<double>(curve_box_count(tr, ds[i])), false};
  });
  return fit_dimension(std::move(samples), Method::BoxCount, 0.0, opt.window);
}

DimensionEstimate curve_sausage_dim(const Trajectory& tr, const ScaleGrid& g, const CurveOptions& opt) {
  check_resolution(tr, g);
  const std::vector<double> ds = g.deltas();
  std::vector<ScaleSample> samples(ds.size());
  parallel_for(ds.size(), opt.threads, [&](std::size_t i) {
    samples[i] = {ds[i], curve_sausage_area(tr, ds[i], opt), false};
  });
  WindowPolicy w = opt.window;
  w.min_count = 0.0;
  return fit_dimension(std::move(samples), Method::Sausage, 2.0, w);
}

// ---- degenerate focus: nucleus and tail -------------------------------------------

namespace {

inline double ipow(double b, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline double logaddexp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

double degfocus_sausage_area(const DegFocusParams& p, const GenTrigTable& table, double r0, double delta,
                             int angular_samples) {
  validate(p);
  if (p.k < 1) fail(Errc::DomainError, "nucleus/tail model needs k >= 1");
  if (p.sign != Sign::Minus) fail(Errc::DomainError, "nucleus/tail model needs the stable focus (sign -)");
  const int m = p.m, n = p.n;
  const double P = 2.0 * m * n * p.k;
  const double W = degfocus_turn_weight(table);
  const double T = table.period;
  const double q_exp = static_cast<double>(m + n);
  const double kappa = static_cast<double>(m) * n / (m + n);
  const double logPW = std::log(P * W);
  const double logu0 = -P * std::log(r0);

  // Cumulative weight C(theta) on the sample grid (midpoint samples).
  const int M = angular_samples;
  const double dth = T / M;
  double total = 0.0;
  double C = 0.0;
  double prev_theta = 0.0;
  auto w = [&](double t) { return table.weight(t); };

  for (int s = 0; s < M; ++s) {
    const double theta = (s + 0.5) * dth;
    C += integrate_gk(w, prev_theta, theta, 1e-17, 1e-13, 100).value;
    prev_theta = theta;
    const double cs = table.cs(theta), sn = table.sn(theta);
    const double Sfac = n * n * ipow(sn, 2 * (2 * n - 1)), Cfac = m * m * ipow(cs, 2 * (2 * m - 1));

    // log u_j = logb + log1p(j q)
    const double logb = C > 0.0 ? logaddexp(logu0, std::log(P * C)) : logu0;
    const double q = std::exp(logPW - logb);
    auto log_rho = [&](double j) { return -(logb + std::log1p(j * q)) / P; };
    auto ell = [&](double j) {
      const double lr = log_rho(j);
      return std::sqrt(Sfac * std::exp(2.0 * n * lr) + Cfac * std::exp(2.0 * m * lr));
    };
    // Area between turn j and j+1 per unit angle.
    auto gap_area = [&](double j) {
      const double lr = log_rho(j);
      const double frac = -std::expm1(-(q_exp / P) * std::log1p(q / (1.0 + j * q)));
      return kappa * std::exp(q_exp * lr) * frac;
    };
    auto resolved = [&](double j) { return gap_area(j) > 2.0 * delta * ell(j); };

    // J* = first unresolved gap.
    double J;
    if (!resolved(0.0)) {
      J = 0.0;
    } else {
      double lo = 0.0, hi = 1.0;
      while (resolved(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) fail(Errc::AccuracyError, "nucleus boundary not found");
      }
      while (hi - lo > 1.0) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (resolved(mid)) lo = mid; else hi = mid;
      }
      J = hi;
    }

    // Sum of ell_j over resolved turns j < J.
    double sum = 0.0;
    const double direct = std::min(J, 4096.0);
    for (double j = 0.0; j < direct; j += 1.0) sum += ell(j);
    if (J > direct) {
      // Midpoint-consistent integral over j in [direct - 1/2, J - 1/2], in v = log1p(j q).
      const double v0 = std::log1p((direct - 0.5) * q), v1 = std::log1p((J - 0.5) * q);
      auto integrand = [&](double v) {
        const double j = std::expm1(v) / q;
        return std::exp(std::log(ell(j)) + v - std::log(q));
      };
      sum += integrate_gk(integrand, v0, v1, 0.0, 1e-12, 400).value;
    }

    const double nucleus = kappa * std::exp(q_exp * log_rho(J));
    total += (delta * ell(0.0) + 2.0 * delta * sum + nucleus) * dth;
  }
  return total;
}

DimensionEstimate nucleus_tail_dim(const DegFocusParams& p, const GenTrigTable& table, double r0,
                                   const ScaleGrid& g, const WindowPolicy& wp) {
  g.validate();
  std::vector<ScaleSample> samples;
  for (double d : g.deltas()) samples.push_back({d, degfocus_sausage_area(p, table, r0, d), false});
  WindowPolicy q = wp;
  q.min_count = 0.0;
  return fit_dimension(std::move(samples), Method::NucleusTail, 2.0, q);
}

// ---- lattices ----------------------------------------------------------------------

Rational Lattice::point(int j) const {
  switch (family) {
    case LatticeFamily::Hopf: return Rational(2 * j + 1, 2 * j + 3);
    case LatticeFamily::Canard: return Rational(j, j + 1);
    case LatticeFamily::Unrestricted: break;
  }
  fail(Errc::DomainError, "unrestricted lattice has no indexed points");
}

std::optional<long> lattice_bound(LatticeFamily fam, Rational d) {
  if (d == Rational(1)) return std::nullopt;
  Rational b;
  if (fam == LatticeFamily::Hopf)
    b = (d + Rational(1)) / (Rational(2) * (Rational(1) - d));
  else if (fam == LatticeFamily::Canard)
    b = (Rational(2) - d) / (Rational(1) - d);
  else
    return std::nullopt;
  // Off-lattice values give the integer part of the bound.
  return b.floor();
}

Classification snap_to_lattice(double estimate, const Lattice& lat, double gate) {
  if (!(gate > 0.0 && gate <= 0.06)) fail(Errc::DomainError, "gate must lie in (0, 0.06]");
  if (!std::isfinite(estimate)) fail(Errc::DomainError, "estimate is not finite");
  Classification c;
  if (lat.family == LatticeFamily::Unrestricted) {
    // Best rational approximation with a small denominator.
    Rational best(0);
    double err = std::fabs(estimate);
    for (int q = 1; q <= 100; ++q) {
      const long pnum = std::lround(estimate * q);
      const double e = std::fabs(estimate - static_cast<double>(pnum) / q);
      if (e < err - 1e-15) {
        err = e;
        best = Rational(pnum, q);
      }
    }
    c.snapped = best;
    c.residual = err;
    return c;
  }

  // Lattice points within the gate; the points accumulate at 1 so any estimate
  // close to 1 sees many of them.
  std::vector<int> hits;
  for (int j = 0; j < 100000; ++j) {
    const double v = lat.point(j).to_double();
    if (std::fabs(estimate - v) <= gate) hits.push_back(j);
    if (v > estimate + gate) break;
  }
  const bool near_one = std::fabs(estimate - 1.0) <= gate;
  const std::size_t count = hits.size() + (near_one ? 1 : 0);
  if (count == 0)
    fail(Errc::Ambiguous, "no lattice point within " + std::to_string(gate) + " of " + std::to_string(estimate));
  if (count > 1)
    fail(Errc::Ambiguous, std::to_string(count) + " lattice points within the gate of " + std::to_string(estimate));
  const int j = hits.front();
  if (j > Lattice::kMaxIndex)
    fail(Errc::Ambiguous, "nearest lattice index " + std::to_string(j) + " exceeds 10");
  c.snapped = lat.point(j);
  c.index_j = j;
  c.residual = std::fabs(estimate - c.snapped.to_double());
  c.cyclicity_bound = lattice_bound(lat.family, c.snapped);
  return c;
}

}  // namespace fracdyn
