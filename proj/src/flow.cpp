#include "fracdyn/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracdyn/error.hpp"
#include "fracdyn/numeric.hpp"

namespace fracdyn {

void MonotoneSequence::validate(std::size_t min_len) const {
  if (values.size() < min_len)
    fail(Errc::DomainError, "sequence has " + std::to_string(values.size()) + " terms, need " +
                                std::to_string(min_len));
  if (values.size() < 2) return;
  const bool dec = values[1] < values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (dec ? !(values[i] < values[i - 1]) : !(values[i] > values[i - 1]))
      fail(Errc::DomainError, "sequence is not strictly monotone at index " + std::to_string(i));
  }
  if (!(std::fabs(values.back() - limit) < std::fabs(values.front() - limit)))
    fail(Errc::DomainError, "sequence does not approach its declared limit");
  if (dec ? values.back() < limit : values.back() > limit)
    fail(Errc::DomainError, "sequence overshoots its declared limit");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double d) {
  while (d > std::numbers::pi) d -= kTwoPi;
  while (d < -std::numbers::pi) d += kTwoPi;
  return d;
}

class DopriDense : public DenseOutput {
 public:
  DopriDense(std::vector<DenseStep<2>> steps, double sign) : steps_(std::move(steps)), sign_(sign) {}

  Vec<2> at(double t) const override {
    const double tp = sign_ * t;  // physical time
    // Steps are ordered by parameter t = sign * physical time.
    auto it = std::lower_bound(steps_.begin(), steps_.end(), t, [this](const DenseStep<2>& s, double v) {
      return sign_ * s.t1() < v;
    });
    if (it == steps_.end()) --it;
    return it->at(tp);
  }

 private:
  std::vector<DenseStep<2>> steps_;
  double sign_;
};

}  // namespace

IntegrateResult integrate_ex(const PlanarSystem& sys, Vec<2> init, const StopCondition& stop, double tol,
                             const IntegrateOptions& iopt) {
  if (sys.kind != SystemKind::Regular)
    fail(Errc::DomainError, "integrate handles regular systems only (slow-fast systems are analysed at eps = 0)");
  if (!(tol >= 1e-13 && tol <= 1e-6)) fail(Errc::DomainError, "tol must lie in [1e-13, 1e-6]");
  if (!stop.max_time && !stop.max_turns && !stop.radius_below && !stop.radius_above)
    fail(Errc::DomainError, "no stop condition given");
  const double dir = stop.direction >= 0 ? 1.0 : -1.0;
  const Vec<2> c = sys.center;

  IntegrateResult res;
  Trajectory& tr = res.traj;
  tr.tol = tol;
  tr.center = c;
  tr.time_sign = dir;
  tr.points.push_back({0.0, init[0], init[1]});

  std::vector<DenseStep<2>> steps;
  DopriOptions opt;
  opt.rtol = tol;
  opt.atol = tol;
  opt.hmax = iopt.hmax;
  opt.max_steps = iopt.max_steps;

  double turns_acc = 0.0;  // signed accumulated angle in radians
  double prev_angle = std::atan2(init[1] - c[1], init[0] - c[0]);
  const double t_horizon = stop.max_time ? dir * *stop.max_time : dir * 1e300;
  const double r_lo = stop.radius_below.value_or(-1.0);
  const double r_hi = stop.radius_above.value_or(1e300);
  const double turn_goal = stop.max_turns ? *stop.max_turns * kTwoPi : 1e300;
  res.reason = StopReason::MaxTime;

  auto radius = [&](const Vec<2>& p) { return std::hypot(p[0] - c[0], p[1] - c[1]); };
  auto rhs = [&sys](double, const Vec<2>& u) { return sys(u[0], u[1]); };

  auto observer = [&](const DenseStep<2>& st, const Vec<2>& y1) {
    steps.push_back(st);
    // Angle bookkeeping at the midpoint keeps the unwrap safe for steps up to 2 pi.
    const Vec<2> ym = st.at(st.t0 + 0.5 * st.h);
    const double am = std::atan2(ym[1] - c[1], ym[0] - c[0]);
    const double a1 = std::atan2(y1[1] - c[1], y1[0] - c[0]);
    const double d0 = wrap(am - prev_angle), d1 = wrap(a1 - am);
    const double acc_before = turns_acc;
    const double angle_start = prev_angle;
    turns_acc += d0 + d1;
    prev_angle = a1;

    // Collect candidate events in this step; keep the earliest.
    double t_event = std::numeric_limits<double>::infinity();  // in units of |t - t0|
    StopReason why = StopReason::MaxTime;
    auto frac_time = [&](double t) { return (t - st.t0) / st.h; };
    auto consider = [&](double t, StopReason r) {
      const double ft = frac_time(t);
      if (ft < t_event) {
        t_event = ft;
        why = r;
      }
    };
    const double rad1 = radius(y1);
    if (rad1 < r_lo) {
      consider(brent([&](double t) { return radius(st.at(t)) - r_lo; }, st.t0, st.t1(), 1e-13), StopReason::RadiusBelow);
    }
    if (rad1 > r_hi) {
      consider(brent([&](double t) { return radius(st.at(t)) - r_hi; }, st.t0, st.t1(), 1e-13), StopReason::RadiusAbove);
    }
    if (std::fabs(turns_acc) >= turn_goal) {
      const double sgn = turns_acc >= 0 ? 1.0 : -1.0;
      auto unwrapped = [&](double t) {
        const Vec<2> p = st.at(t);
        const double a = std::atan2(p[1] - c[1], p[0] - c[0]);
        // Assume monotone sweep inside one step.
        double d = wrap(a - angle_start);
        const double tm = st.t0 + 0.5 * st.h;
        if ((t - tm) * (st.h > 0 ? 1 : -1) > 0) d = d0 + wrap(a - am);
        return sgn * (acc_before + d) - turn_goal;
      };
      consider(brent(unwrapped, st.t0, st.t1(), 1e-13), StopReason::MaxTurns);
    }
    if (stop.max_time && std::fabs(st.t1()) >= std::fabs(t_horizon) - 1e-15) consider(st.t1(), StopReason::MaxTime);

    if (std::isfinite(t_event)) {
      const double te = st.t0 + t_event * st.h;
      const Vec<2> ye = st.at(te);
      tr.points.push_back({dir * te, ye[0], ye[1]});
      res.reason = why;
      return true;
    }
    tr.points.push_back({dir * st.t1(), y1[0], y1[1]});
    return false;
  };

  double t_reached;
  DopriStats stats;
  dopri5<2>(rhs, 0.0, init, t_horizon, opt, observer, t_reached, &stats);
  res.steps = stats.accepted;
  tr.dense = std::make_shared<DopriDense>(std::move(steps), dir);
  tr.turns = tr.winding();
  return res;
}

Trajectory spiral_sample(const PlanarSystem& sys, Vec<2> init, double r_min, int max_turns,
                         const SpiralOptions& so) {
  if (!(r_min > 0.0)) fail(Errc::DomainError, "r_min must be positive");
  if (max_turns < 10) fail(Errc::DomainError, "max_turns must be >= 10");
  if (so.points_per_turn < 64) fail(Errc::DomainError, "need at least 64 points per turn");

  StopCondition stop;
  stop.radius_below = r_min;
  stop.max_turns = max_turns;
  stop.direction = so.direction.value_or(sys.approach_sign);
  IntegrateOptions io;
  io.max_steps = so.max_steps;
  IntegrateResult ir = integrate_ex(sys, init, stop, so.tol, io);
  const Trajectory& raw = ir.traj;

  // Stall check: fewer than a quarter turn over any 1e5 consecutive steps.
  {
    const std::size_t W = 100000;
    const Vec<2> c = sys.center;
    if (raw.points.size() > W) {
      std::vector<double> ang(raw.points.size());
      double acc = 0.0, prev = std::atan2(raw.points[0].y - c[1], raw.points[0].x - c[0]);
      for (std::size_t i = 0; i < raw.points.size(); ++i) {
        const double a = std::atan2(raw.points[i].y - c[1], raw.points[i].x - c[0]);
        acc += wrap(a - prev);
        prev = a;
        ang[i] = acc;
      }
      for (std::size_t i = W; i < ang.size(); i += W / 4)
        if (std::fabs(ang[i] - ang[i - W]) < 0.25 * kTwoPi)
          fail(Errc::NotSpiraling, "winding stalled near step " + std::to_string(i));
    }
  }

  Trajectory out;
  out.tol = raw.tol;
  out.center = raw.center;
  out.time_sign = raw.time_sign;
  out.dense = raw.dense;
  const double dtheta = kTwoPi / so.points_per_turn;
  const Vec<2> c = sys.center;
  out.points.push_back(raw.points.front());
  for (std::size_t i = 1; i < raw.points.size(); ++i) {
    const TrajPoint& a = raw.points[i - 1];
    const TrajPoint& b = raw.points[i];
    const double da = std::fabs(wrap(std::atan2(b.y - c[1], b.x - c[0]) - std::atan2(a.y - c[1], a.x - c[0])));
    int nsub = std::max(1, static_cast<int>(std::ceil(da / dtheta)));
    // Refine until consecutive points honour the spacing cap.
    while (true) {
      bool ok = true;
      std::vector<TrajPoint> seg;
      seg.reserve(nsub);
      Vec<2> prev{a.x, a.y};
      for (int s = 1; s <= nsub; ++s) {
        const double t = a.t + (b.t - a.t) * s / nsub;
        const Vec<2> p = s == nsub ? Vec<2>{b.x, b.y} : out.dense->at(t);
        if (std::hypot(p[0] - prev[0], p[1] - prev[1]) > so.max_spacing) ok = false;
        seg.push_back({t, p[0], p[1]});
        prev = p;
      }
      if (ok || nsub > (1 << 20)) {
        out.points.insert(out.points.end(), seg.begin(), seg.end());
        break;
      }
      nsub *= 2;
    }
  }
  out.turns = out.winding();
  return out;
}

CrossingSequence section_crossings(const Trajectory& traj, const Section& sec) {
  const double dn = std::hypot(sec.direction[0], sec.direction[1]);
  if (!(dn > 0.0)) fail(Errc::DomainError, "section direction must be nonzero");
  const Vec<2> d{sec.direction[0] / dn, sec.direction[1] / dn};
  const Vec<2> nrm{-d[1], d[0]};
  auto normal = [&](double x, double y) { return nrm[0] * (x - sec.base[0]) + nrm[1] * (y - sec.base[1]); };
  auto along = [&](double x, double y) { return d[0] * (x - sec.base[0]) + d[1] * (y - sec.base[1]); };

  CrossingSequence cs;
  const auto& P = traj.points;
  for (std::size_t i = 1; i < P.size(); ++i) {
    const double s0 = normal(P[i - 1].x, P[i - 1].y), s1 = normal(P[i].x, P[i].y);
    const bool up = s0 < 0.0 && s1 >= 0.0, down = s0 > 0.0 && s1 <= 0.0;
    if (!(sec.orientation > 0 ? up : down)) continue;
    double t, x, y;
    if (traj.dense) {
      auto fn = [&](double tt) {
        const Vec<2> p = traj.dense->at(tt);
        return normal(p[0], p[1]);
      };
      t = brent(fn, P[i - 1].t, s0, P[i].t, s1, 1e-13);
      const Vec<2> p = traj.dense->at(t);
      x = p[0];
      y = p[1];
    } else {
      const double w = s0 / (s0 - s1);
      t = P[i - 1].t + w * (P[i].t - P[i - 1].t);
      x = P[i - 1].x + w * (P[i].x - P[i - 1].x);
      y = P[i - 1].y + w * (P[i].y - P[i - 1].y);
    }
    const double a = along(x, y);
    if (a <= 0.0) continue;
    cs.coords.push_back(a);
    cs.times.push_back(t);
    cs.residuals.push_back(std::fabs(normal(x, y)));
  }
  if (cs.coords.empty()) fail(Errc::NoCrossings, "trajectory never crosses the section");
  return cs;
}

double degfocus_turn_weight(const GenTrigTable& table) {
  // dW/dphi = w(phi) over one period, cross-checked by Gauss-Kronrod.
  auto rhs = [&](double phi, const Vec<1>&) -> Vec<1> { return {table.weight(phi)}; };
  DopriOptions opt;
  opt.rtol = 1e-13;
  opt.atol = 1e-15;
  opt.hmax = table.period / 256.0;
  double t_end;
  const Vec<1> W = dopri5<1>(rhs, 0.0, Vec<1>{0.0}, table.period, opt,
                             [](const DenseStep<1>&, const Vec<1>&) { return false; }, t_end);
  auto w = [&](double p) { return table.weight(p); };
  double gk = 0.0;
  const std::size_t N = table.phi.size();
  const std::size_t stride = std::max<std::size_t>(1, N / 256);
  for (std::size_t i = 0; i + 1 < N; i += stride)
    gk += integrate_gk(w, table.phi[i], table.phi[std::min(i + stride, N - 1)], 1e-17, 1e-14, 200).value;
  if (!(std::fabs(W[0] - gk) <= 1e-9 * std::fabs(gk)))
    fail(Errc::AccuracyError, "turn weight: ODE and quadrature disagree");
  return W[0];
}

MonotoneSequence radial_map(const DegFocusParams& p, const GenTrigTable& table, double r0, int turns) {
  validate(p);
  if (p.k < 1) fail(Errc::DomainError, "radial_map needs k >= 1");
  if (table.m != p.m || table.n != p.n) fail(Errc::DomainError, "table does not match (m, n)");
  if (!(r0 > 0.0)) fail(Errc::DomainError, "r0 must be positive");
  if (turns < 0) fail(Errc::DomainError, "turns must be >= 0");

  // With u = r^{-P}, P = 2mnk, the reduced equation becomes du/dphi = -+ P w(phi),
  // so one turn adds P * W to u exactly, W the period integral of w.
  const double P = 2.0 * p.m * p.n * p.k;
  const double W = degfocus_turn_weight(table);
  const double logu0 = -P * std::log(r0);
  const double logstep = std::log(P * W);
  MonotoneSequence seq;
  seq.limit = p.sign == Sign::Minus ? 0.0 : std::numeric_limits<double>::infinity();
  seq.values.push_back(r0);
  for (int j = 1; j <= turns; ++j) {
    double logu;
    if (p.sign == Sign::Minus) {
      const double a = std::max(logu0, logstep + std::log(j)), b = std::min(logu0, logstep + std::log(j));
      logu = a + std::log1p(std::exp(b - a));
    } else {
      // u_j = u_0 - j P W must stay positive.
      const double diff = logstep + std::log(j) - logu0;
      if (diff >= 0.0) fail(Errc::BlowUp, "radius escapes to infinity during turn " + std::to_string(j));
      logu = logu0 + std::log1p(-std::exp(diff));
    }
    seq.values.push_back(std::exp(-logu / P));
  }
  return seq;
}

}  // namespace fracdyn
