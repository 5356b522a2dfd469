#include "fracdyn/slowfast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdyn/error.hpp"
#include "fracdyn/numeric.hpp"

namespace fracdyn {

std::string stability_name(Stability s) { return s == Stability::Attracting ? "Attracting" : "Repelling"; }

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConstantNeg: return "ConstantNeg";
    case Verdict::ConstantPos: return "ConstantPos";
    case Verdict::Violated: return "Violated";
  }
  return "?";
}

namespace {

struct Derivs {
  Polynomial2 f, g, fx, fy, fxx, fxy, gx, gy;
  explicit Derivs(const PlanarSystem& s)
      : f(s.f), g(s.g), fx(s.f.dx()), fy(s.f.dy()), fxx(fx.dx()), fxy(fx.dy()), gx(s.g.dx()), gy(s.g.dy()) {}
};

void require_slow_fast(const PlanarSystem& sys) {
  if (sys.kind != SystemKind::SlowFast) fail(Errc::DomainError, "slow-fast analysis needs a SlowFast system");
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Newton in y for f(x, y) = 0 from y_start.
std::optional<double> newton_y(const Derivs& d, double x, double y_start) {
  double y = y_start;
  for (int it = 0; it < 60; ++it) {
    const double fv = d.f(x, y);
    if (fv == 0.0) return y;
    const double fy = d.fy(x, y);
    if (fy == 0.0 || !std::isfinite(fy)) return std::nullopt;
    const double dy = fv / fy;
    y -= dy;
    if (!std::isfinite(y)) return std::nullopt;
    if (std::fabs(dy) <= 1e-15 * (1.0 + std::fabs(y))) return y;
  }
  return std::nullopt;
}

double branch_y(const Derivs& d, const HopfPoint& hp, double x) {
  if (auto y = newton_y(d, x, hp.y)) return *y;
  // Continue from the contact point in small steps.
  double y = hp.y;
  const int steps = 256;
  for (int s = 1; s <= steps; ++s) {
    const double xs = hp.x + (x - hp.x) * s / steps;
    auto ys = newton_y(d, xs, y);
    if (!ys) fail(Errc::NoBranch, "critical curve lost at x = " + std::to_string(xs));
    y = *ys;
  }
  return y;
}

// Roots of y -> f(x, y) on [lo, hi] from a sampled sign scan.
std::vector<double> roots_in_y(const Derivs& d, double x, double lo, double hi, int samples) {
  std::vector<double> out;
  auto fy = [&](double y) { return d.f(x, y); };
  double ya = lo, fa = fy(lo);
  if (fa == 0.0) out.push_back(lo);
  for (int i = 1; i <= samples; ++i) {
    const double yb = lo + (hi - lo) * i / samples;
    const double fb = fy(yb);
    if (fb == 0.0) {
      out.push_back(yb);
    } else if (fa != 0.0 && sgn(fa) != sgn(fb)) {
      out.push_back(brent(fy, ya, fa, yb, fb, 1e-15 * (1.0 + std::fabs(yb))));
    }
    ya = yb;
    fa = fb;
  }
  return out;
}

// q = -(f_x)^2 / (g f_y) on the critical curve, q ~ slope*(x - x_c) near x_c.
struct Integrand {
  const Derivs& d;
  const HopfPoint& hp;
  double slope;
  double operator()(double x) const {
    const double y = branch_y(d, hp, x);
    const double fx = d.fx(x, y);
    return -(fx * fx) / (d.g(x, y) * d.fy(x, y));
  }
};

constexpr double kPatch = 1e-6;

// g on the curve must not vanish away from the contact point.
void check_regular_slow(const Derivs& d, const HopfPoint& hp, double a, double b) {
  if (b - a <= 0.0) return;
  const int S = 256;
  double prev = 0.0;
  for (int i = 0; i <= S; ++i) {
    const double x = a + (b - a) * i / S;
    const double y = branch_y(d, hp, x);
    const double v = d.g(x, y) * d.fy(x, y);
    if (v == 0.0 || (i > 0 && sgn(v) != sgn(prev)))
      fail(Errc::SlowSingularity, "g f_y vanishes on the critical curve near x = " + std::to_string(x));
    prev = v;
  }
}

QuadResult integrate_q(const Derivs& d, const HopfPoint& hp, double x_from, double x_to) {
  const double sign = x_to >= x_from ? 1.0 : -1.0;
  const double a = std::min(x_from, x_to), b = std::max(x_from, x_to);
  Integrand q{d, hp, -(hp.fxx * hp.fxx) / (hp.gx * hp.fy)};
  const double pl = hp.x - 0.5 * kPatch, ph = hp.x + 0.5 * kPatch;

  QuadResult total;
  auto piece = [&](double lo, double hi) {
    if (hi <= lo) return;
    check_regular_slow(d, hp, lo, hi);
    const QuadResult r = integrate_gk(q, lo, hi, 1e-15, 1e-13, 4000);
    total.value += r.value;
    total.error += r.error;
    total.intervals += r.intervals;
  };
  piece(a, std::min(b, pl));
  // Inside the patch the integrand is replaced by its linear expansion.
  const double lo = std::max(a, pl), hi = std::min(b, ph);
  if (hi > lo) total.value += 0.5 * q.slope * ((hi - hp.x) * (hi - hp.x) - (lo - hp.x) * (lo - hp.x));
  piece(std::max(a, ph), b);

  total.value *= sign;
  if (!std::isfinite(total.value)) fail(Errc::SlowSingularity, "divergent slow divergence integral");
  if (total.error > 1e-10 * std::max(1.0, std::fabs(total.value)))
    fail(Errc::QuadratureFailure, "quadrature error " + std::to_string(total.error) + " above target");
  return total;
}

FiberEnds fiber(const Derivs& d, double y, const HopfPoint& hp) {
  auto f = [&](double x) { return d.f(x, y); };
  const double f0 = f(hp.x);
  if (f0 == 0.0 || std::fabs(y - hp.y) <= 1e-15 * (1.0 + std::fabs(hp.y)))
    fail(Errc::NoFiber, "degenerate fiber at the contact height");
  std::optional<double> root[2];
  for (int side = 0; side < 2; ++side) {
    const double s = side == 0 ? -1.0 : 1.0;
    double ta = 0.0, fa = f0;
    for (double t = 1e-12; t <= 100.0; t *= 1.02) {
      const double fb = f(hp.x + s * t);
      if (fb == 0.0 || sgn(fb) != sgn(fa)) {
        root[side] = fb == 0.0 ? hp.x + s * t
                               : brent(f, hp.x + s * ta, fa, hp.x + s * t, fb, 1e-15 * (1.0 + std::fabs(hp.x) + t));
        break;
      }
      ta = t;
      fa = fb;
    }
  }
  if (!root[0] || !root[1]) fail(Errc::NoFiber, "f(., y) has no roots on both sides of the contact point");
  const double fx0 = d.fx(*root[0], y), fx1 = d.fx(*root[1], y);
  FiberEnds e;
  if (fx0 > 0.0 && fx1 < 0.0) {
    e.alpha_x = *root[0];
    e.omega_x = *root[1];
  } else if (fx0 < 0.0 && fx1 > 0.0) {
    e.alpha_x = *root[1];
    e.omega_x = *root[0];
  } else {
    fail(Errc::NoFiber, "fiber ends are not on opposite branches");
  }
  return e;
}

// tilde_I split as A - B with A over the repelling side, B over the attracting side.
struct Halves {
  double A = 0.0, B = 0.0, err = 0.0;
  double value() const { return A - B; }
  bool vanishes(double v) const { return std::fabs(v) <= std::max(1e-10 * std::max(std::fabs(A), std::fabs(B)), 10.0 * err); }
};

double half_alpha(const Derivs& d, const HopfPoint& hp, double y, double* err = nullptr) {
  const QuadResult r = integrate_q(d, hp, hp.x, fiber(d, y, hp).alpha_x);
  if (err) *err += r.error;
  return r.value;
}

double half_omega(const Derivs& d, const HopfPoint& hp, double y, double* err = nullptr) {
  const QuadResult r = integrate_q(d, hp, hp.x, fiber(d, y, hp).omega_x);
  if (err) *err += r.error;
  return r.value;
}

Halves tilde_halves(const Derivs& d, const HopfPoint& hp, double y) {
  Halves h;
  h.A = half_alpha(d, hp, y, &h.err);
  h.B = half_omega(d, hp, y, &h.err);
  return h;
}

}  // namespace

std::vector<CriticalBranch> critical_branches(const PlanarSystem& sys, const Window& w, int columns) {
  require_slow_fast(sys);
  if (!(w.x_lo < w.x_hi && w.y_lo < w.y_hi)) fail(Errc::DomainError, "empty window");
  if (columns < 8) fail(Errc::DomainError, "need at least 8 columns");
  const Derivs d(sys);

  // Link roots column by column into tracks.
  struct Track {
    std::vector<double> xs, ys;
  };
  std::vector<Track> done, open;
  const double link = (w.y_hi - w.y_lo) / 16.0;
  for (int i = 0; i < columns; ++i) {
    const double x = w.x_lo + (w.x_hi - w.x_lo) * i / (columns - 1);
    const std::vector<double> ys = roots_in_y(d, x, w.y_lo, w.y_hi, 512);
    std::vector<Track> next;
    std::vector<bool> used(open.size(), false);
    for (double y : ys) {
      int best = -1;
      double bd = link;
      for (std::size_t t = 0; t < open.size(); ++t)
        if (!used[t] && std::fabs(open[t].ys.back() - y) < bd) {
          bd = std::fabs(open[t].ys.back() - y);
          best = static_cast<int>(t);
        }
      Track tr;
      if (best >= 0) {
        used[best] = true;
        tr = std::move(open[best]);
      }
      tr.xs.push_back(x);
      tr.ys.push_back(y);
      next.push_back(std::move(tr));
    }
    for (std::size_t t = 0; t < open.size(); ++t)
      if (!used[t]) done.push_back(std::move(open[t]));
    open = std::move(next);
  }
  for (auto& t : open) done.push_back(std::move(t));
  if (done.empty()) fail(Errc::NoBranch, "f = 0 has no solution in the window");

  // Split tracks where f_x changes sign.
  std::vector<CriticalBranch> out;
  for (const Track& t : done) {
    CriticalBranch cur;
    int cur_sign = 0;
    auto flush = [&] {
      if (cur.xs.size() >= 2) out.push_back(cur);
      cur = CriticalBranch{};
    };
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
      const double fx = d.fx(t.xs[i], t.ys[i]);
      const double scale = 1.0 + std::fabs(d.fy(t.xs[i], t.ys[i]));
      const int s = std::fabs(fx) <= 1e-12 * scale ? 0 : sgn(fx);
      if (s == 0) {
        flush();
        cur_sign = 0;
        continue;
      }
      if (cur_sign != 0 && s != cur_sign) {
        // Fold between samples i-1 and i: it must be isolated by f_x along the curve.
        auto fxc = [&](double x) {
          auto y = newton_y(d, x, t.ys[i]);
          if (!y) fail(Errc::FoldResolution, "continuation lost near a fold");
          return d.fx(x, *y);
        };
        try {
          (void)brent(fxc, t.xs[i - 1], t.xs[i], 1e-13);
        } catch (const Error&) {
          fail(Errc::FoldResolution, "cannot isolate the fold near x = " + std::to_string(t.xs[i]));
        }
        flush();
      }
      cur_sign = s;
      cur.stability = s < 0 ? Stability::Attracting : Stability::Repelling;
      cur.xs.push_back(t.xs[i]);
      cur.ys.push_back(t.ys[i]);
      cur.residual = std::max(cur.residual, std::fabs(d.f(t.xs[i], t.ys[i])));
    }
    flush();
  }
  if (out.empty()) fail(Errc::NoBranch, "no normally hyperbolic branch in the window");
  return out;
}

HopfPoint find_slow_fast_hopf(const PlanarSystem& sys, Vec<2> guess) {
  require_slow_fast(sys);
  const Derivs d(sys);
  double x = guess[0], y = guess[1];
  bool converged = false;
  for (int it = 0; it < 100 && !converged; ++it) {
    const double F1 = d.f(x, y), F2 = d.fx(x, y);
    const double a = d.fx(x, y), b = d.fy(x, y), c = d.fxx(x, y), e = d.fxy(x, y);
    const double det = a * e - b * c;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = (F1 * e - b * F2) / det;
    const double dy = (a * F2 - c * F1) / det;
    x -= dx;
    y -= dy;
    if (std::fabs(dx) + std::fabs(dy) <= 1e-15 * (1.0 + std::fabs(x) + std::fabs(y))) converged = true;
  }
  HopfPoint h;
  h.x = x;
  h.y = y;
  h.f = d.f(x, y);
  h.fx = d.fx(x, y);
  h.fy = d.fy(x, y);
  h.fxx = d.fxx(x, y);
  h.g = d.g(x, y);
  h.gx = d.gx(x, y);
  if (!std::isfinite(x) || !std::isfinite(y) || std::fabs(h.f) > 1e-10 || std::fabs(h.fx) > 1e-10) {
    if (std::fabs(h.fy) <= 1e-10) fail(Errc::NotContact, "contact point is not nilpotent (f_y = 0)");
    fail(Errc::NotContact, "no contact point (f = f_x = 0) found near the guess");
  }
  if (std::fabs(h.fy) <= 1e-10) fail(Errc::NotContact, "contact point is not nilpotent (f_y = 0)");
  if (std::fabs(h.g) > 1e-10) fail(Errc::NotHopf, "g(p_c) != 0");
  if (std::fabs(h.fxx) <= 1e-10) fail(Errc::NotHopf, "f_xx(p_c) = 0");
  if (!(h.gx * h.fy < 0.0)) fail(Errc::NotHopf, "g_x f_y >= 0 at p_c");
  h.concavity = (h.fy > 0.0) != (h.fxx > 0.0) ? Concavity::Up : Concavity::Down;
  return h;
}

double critical_y(const PlanarSystem& sys, const HopfPoint& hp, double x) { return branch_y(Derivs(sys), hp, x); }

double slow_vf_x(const PlanarSystem& sys, const HopfPoint& hp, double x) {
  require_slow_fast(sys);
  const Derivs d(sys);
  if (std::fabs(x - hp.x) <= 1e-12 * (1.0 + std::fabs(hp.x))) return -(hp.gx * hp.fy) / hp.fxx;
  const double y = branch_y(d, hp, x);
  const double g = d.g(x, y);
  if (g == 0.0) fail(Errc::SlowSingularity, "g vanishes on the critical curve at x = " + std::to_string(x));
  return -g * d.fy(x, y) / d.fx(x, y);
}

FiberEnds fast_fiber_endpoints(const PlanarSystem& sys, double y, const HopfPoint& hp) {
  require_slow_fast(sys);
  return fiber(Derivs(sys), y, hp);
}

SDIValue sdi(const PlanarSystem& sys, double y_entry, double y_exit, const HopfPoint& hp) {
  require_slow_fast(sys);
  const Derivs d(sys);
  const double from = fiber(d, y_entry, hp).omega_x;
  const double to = fiber(d, y_exit, hp).alpha_x;
  // Split at the contact point so each side starts from the removable zero.
  const QuadResult a = integrate_q(d, hp, hp.x, to);
  const QuadResult b = integrate_q(d, hp, hp.x, from);
  SDIValue v;
  v.value = a.value - b.value;
  v.y_entry = y_entry;
  v.y_exit = y_exit;
  v.quadrature_error = a.error + b.error;
  return v;
}

SDIValue sdi_segment(const PlanarSystem& sys, double x_from, double x_to, const HopfPoint& hp) {
  require_slow_fast(sys);
  const QuadResult r = integrate_q(Derivs(sys), hp, x_from, x_to);
  SDIValue v;
  v.value = r.value;
  v.quadrature_error = r.error;
  v.y_entry = v.y_exit = std::numeric_limits<double>::quiet_NaN();
  return v;
}

double tilde_I(const PlanarSystem& sys, double y, const HopfPoint& hp) {
  require_slow_fast(sys);
  return tilde_halves(Derivs(sys), hp, y).value();
}

Assumption2 check_assumption2(const PlanarSystem& sys, const HopfPoint& hp, double lo, double hi, int samples,
                              std::optional<double> base) {
  require_slow_fast(sys);
  if (samples < 2) fail(Errc::DomainError, "need at least 2 samples");
  if (!(lo < hi)) fail(Errc::DomainError, "empty interval");
  const double b = base.value_or(hp.y);
  if (lo < b && b < hi) fail(Errc::DomainError, "interval straddles its base level");
  const double side = hi > b ? 1.0 : -1.0;
  double d_near = std::min(std::fabs(lo - b), std::fabs(hi - b));
  const double d_far = std::max(std::fabs(lo - b), std::fabs(hi - b));
  if (d_near == 0.0) d_near = 1e-6 * d_far;

  const Derivs d(sys);
  Assumption2 res;
  res.samples = samples;
  int first = 0;
  for (int i = 0; i < samples; ++i) {
    const double dist = std::exp(std::log(d_near) + (std::log(d_far) - std::log(d_near)) * i / (samples - 1));
    const double y = b + side * dist;
    const Halves h = tilde_halves(d, hp, y);
    const double v = h.value();
    const int s = h.vanishes(v) ? 0 : sgn(v);
    if (s == 0 || (first != 0 && s != first)) {
      res.verdict = Verdict::Violated;
      res.y_where = y;
      return res;
    }
    first = s;
  }
  res.verdict = first < 0 ? Verdict::ConstantNeg : Verdict::ConstantPos;
  return res;
}

double balanced_canard_level(const PlanarSystem& sys, const HopfPoint& hp, double lo, double hi, int samples) {
  require_slow_fast(sys);
  if (!(lo < hi)) fail(Errc::DomainError, "empty window");
  if (samples < 3) fail(Errc::DomainError, "need at least 3 samples");
  const Derivs d(sys);
  std::vector<double> ys(samples), vs(samples);
  int zeros = 0;
  for (int i = 0; i < samples; ++i) {
    ys[i] = lo + (hi - lo) * i / (samples - 1);
    const Halves h = tilde_halves(d, hp, ys[i]);
    vs[i] = h.value();
    if (h.vanishes(vs[i])) {
      vs[i] = 0.0;
      ++zeros;
    }
  }
  if (zeros == samples) fail(Errc::MultipleRoots, "tilde_I vanishes identically on the window");
  std::vector<std::pair<int, int>> changes;
  for (int i = 1; i < samples; ++i)
    if (vs[i] == 0.0 || sgn(vs[i]) * sgn(vs[i - 1]) < 0) changes.push_back({i - 1, i});
  if (changes.empty()) fail(Errc::NoBalancedLevel, "tilde_I keeps one sign on the window");
  if (changes.size() > 1 || zeros > 1) fail(Errc::MultipleRoots, "tilde_I changes sign more than once");
  const auto [a, b] = changes.front();
  if (vs[b] == 0.0) return ys[b];
  auto f = [&](double y) { return tilde_halves(d, hp, y).value(); };
  return brent(f, ys[a], vs[a], ys[b], vs[b], 1e-13);
}

namespace {

double next_term(const Derivs& d, const HopfPoint& hp, double y, double limit, SdiSign sign, double* residual) {
  const double span = y - limit;
  if (span == 0.0) fail(Errc::DomainError, "term already at the limit");
  // Offsets s from the limit keep the bracket resolved near a nonzero limit.
  std::function<double(double)> G;
  if (sign == SdiSign::Neg) {
    const double A = half_alpha(d, hp, y);
    G = [&, A](double s) { return A - half_omega(d, hp, limit + s); };  // I(y', y)
  } else {
    const double B = half_omega(d, hp, y);
    G = [&, B](double s) { return half_alpha(d, hp, limit + s) - B; };  // I(y, y')
  }
  const double s_hi = span;
  const double g_hi = G(s_hi);
  double s_lo = span * 1e-10;
  double g_lo = G(s_lo);
  if (g_hi == 0.0 || sgn(g_lo) == sgn(g_hi))
    fail(Errc::BracketFailure, "no sign change for the next term: I at the ends = " + std::to_string(g_lo) + ", " +
                                   std::to_string(g_hi) + " (tilde_I(y) = " +
                                   std::to_string(tilde_halves(d, hp, y).value()) + ")");
  const double s = brent(G, s_lo, g_lo, s_hi, g_hi, 1e-16 * std::fabs(span));
  const double y_next = limit + s;
  if (residual) {
    const double from = fiber(d, sign == SdiSign::Neg ? y_next : y, hp).omega_x;
    const double to = fiber(d, sign == SdiSign::Neg ? y : y_next, hp).alpha_x;
    *residual = std::fabs(integrate_q(d, hp, from, to).value);
  }
  return y_next;
}

}  // namespace

double entry_exit_next(const PlanarSystem& sys, const HopfPoint& hp, double y, double limit, SdiSign sign,
                       double* residual) {
  require_slow_fast(sys);
  const Derivs d(sys);
  const Halves h = tilde_halves(d, hp, y);
  const double v = h.value();
  if (h.vanishes(v)) fail(Errc::AssumptionViolated, "tilde_I vanishes at y = " + std::to_string(y));
  return next_term(d, hp, y, limit, sign, residual);
}

EntryExitSequence entry_exit_sequence(const PlanarSystem& sys, const HopfPoint& hp, double y0, int N, SeqMode mode,
                                      std::optional<double> balanced, const EntryExitOptions& opt) {
  require_slow_fast(sys);
  if (N < 0) fail(Errc::DomainError, "N must be >= 0");
  double limit;
  if (mode == SeqMode::Hopf) {
    limit = hp.y;
    const bool above = y0 > hp.y;
    if (above != (hp.concavity == Concavity::Up))
      fail(Errc::DomainError, "y0 lies on the wrong side of the contact height for this concavity");
  } else {
    if (!balanced) fail(Errc::DomainError, "canard mode needs the balanced level");
    limit = *balanced;
    if (y0 == limit) fail(Errc::DomainError, "y0 equals the balanced level");
  }

  EntryExitSequence out;
  out.y0 = y0;
  out.mode = mode;
  out.values.limit = limit;
  out.values.values.push_back(y0);
  if (N == 0) return out;

  const Assumption2 a2 = check_assumption2(sys, hp, std::min(limit, y0), std::max(limit, y0), opt.check_samples, limit);
  if (a2.verdict == Verdict::Violated)
    fail(Errc::AssumptionViolated,
         "tilde_I changes sign or vanishes near y = " + std::to_string(a2.y_where.value_or(y0)));
  out.sdi_sign = a2.verdict == Verdict::ConstantNeg ? SdiSign::Neg : SdiSign::Pos;

  // The recursion that moves toward the limit: in Hopf mode it follows the sign
  // of tilde_I; around a balanced level the entry side is the one on which the
  // iteration contracts.
  SdiSign solve = out.sdi_sign;
  if (mode == SeqMode::Canard) {
    const bool contracting_forward = (out.sdi_sign == SdiSign::Neg) == (y0 > limit);
    solve = contracting_forward ? SdiSign::Neg : SdiSign::Pos;
  }

  const Derivs d(sys);
  double y = y0;
  for (int k = 0; k < N; ++k) {
    double res = 0.0;
    const double yn = next_term(d, hp, y, limit, solve, &res);
    if (std::fabs(y - yn) < opt.gap_floor) {
      out.truncated = true;
      break;
    }
    out.values.values.push_back(yn);
    out.residuals.push_back(res);
    y = yn;
  }
  if (out.truncated && out.values.size() < 16)
    fail(Errc::TruncatedSequence, "gap floor reached after " + std::to_string(out.values.size()) + " terms");
  return out;
}

Classification classify_hopf(double d, double gate) { return snap_to_lattice(d, Lattice{LatticeFamily::Hopf}, gate); }
Classification classify_hopf(const DimensionEstimate& d, double gate) { return classify_hopf(d.value, gate); }
Classification classify_canard(double d, double gate) {
  return snap_to_lattice(d, Lattice{LatticeFamily::Canard}, gate);
}
Classification classify_canard(const DimensionEstimate& d, double gate) { return classify_canard(d.value, gate); }

std::optional<Rational> hopf_bound_value(Rational d) {
  if (d == Rational(1)) return std::nullopt;
  return (d + Rational(1)) / (Rational(2) * (Rational(1) - d));
}

std::optional<Rational> canard_bound_value(Rational d) {
  if (d == Rational(1)) return std::nullopt;
  return (Rational(2) - d) / (Rational(1) - d);
}

}  // namespace fracdyn
