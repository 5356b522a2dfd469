#pragma once

// Dormand-Prince 5(4) with Hairer's 4th-order dense output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "fracdyn/error.hpp"

namespace fracdyn {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Interpolant for one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  Vec<N> r1{}, r2{}, r3{}, r4{}, r5{};

  double t1() const { return t0 + h; }

  Vec<N> at(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i)
      y[i] = r1[i] + s * (r2[i] + s1 * (r3[i] + s * (r4[i] + s1 * r5[i])));
    return y;
  }
};

struct DopriOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h0 = 0.0;  // 0 = automatic
  double hmax = std::numeric_limits<double>::infinity();
  double hmin = 1e-15;
  long max_steps = 20'000'000;
};

struct DopriStats {
  long accepted = 0;
  long rejected = 0;
  long evals = 0;
};

/// Integrates y' = f(t, y) from t0 toward t_end (either direction). After every
/// accepted step the observer is called as obs(step, y_new) and may return
/// true to stop early. Returns the final state; `t_out` receives the time
/// reached. Throws IntegrationError on step underflow or step budget.
template <std::size_t N, class F, class Obs>
Vec<N> dopri5(F&& f, double t0, Vec<N> y, double t_end, const DopriOptions& opt, Obs&& obs,
              double& t_out, DopriStats* stats = nullptr) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                   a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  DopriStats local;
  DopriStats& st = stats ? *stats : local;
  double t = t0;
  t_out = t;
  if (t_end == t0) return y;
  const double dir = t_end > t0 ? 1.0 : -1.0;

  auto add = [](const Vec<N>& base, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
    Vec<N> out = base;
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (const auto& [c, k] : terms) s += c * (*k)[i];
      out[i] += h * s;
    }
    return out;
  };
  auto norm = [&](const Vec<N>& e, const Vec<N>& y0, const Vec<N>& y1) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
      s += (e[i] / sc) * (e[i] / sc);
    }
    return std::sqrt(s / N);
  };

  Vec<N> k1 = f(t, y);
  ++st.evals;

  double h = opt.h0;
  if (h <= 0.0) {
    // Hairer's starting-step heuristic.
    double sy = 0.0, sf = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::fabs(y[i]);
      sy += (y[i] / sc) * (y[i] / sc);
      sf += (k1[i] / sc) * (k1[i] / sc);
    }
    sy = std::sqrt(sy / N);
    sf = std::sqrt(sf / N);
    double h0 = (sy < 1e-5 || sf < 1e-5) ? 1e-6 : 0.01 * sy / sf;
    h0 = std::min(h0, std::fabs(t_end - t0));
    Vec<N> y1 = add(y, dir * h0, {{1.0, &k1}});
    Vec<N> f1 = f(t + dir * h0, y1);
    ++st.evals;
    double s2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::fabs(y[i]);
      s2 += ((f1[i] - k1[i]) / sc) * ((f1[i] - k1[i]) / sc);
    }
    const double d2 = std::sqrt(s2 / N) / h0;
    const double mx = std::max(sf, d2);
    const double h1 = mx <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / mx, 0.2);
    h = std::min(100 * h0, h1);
  }
  h = std::min(h, opt.hmax);

  bool last_rejected = false;
  while (true) {
    if (st.accepted + st.rejected >= opt.max_steps)
      throw IntegrationError(Errc::BudgetExceeded, "step budget exhausted", t, y[0], N > 1 ? y[N - 1] : 0.0);
    bool final_step = false;
    if (std::fabs(t_end - t) <= h * (1.0 + 1e-12)) {
      h = std::fabs(t_end - t);
      final_step = true;
    }
    if (h < opt.hmin && !final_step)
      throw IntegrationError(Errc::StepUnderflow, "step size below minimum", t, y[0], N > 1 ? y[N - 1] : 0.0);
    const double hs = dir * h;

    Vec<N> k2 = f(t + c2 * hs, add(y, hs, {{a21, &k1}}));
    Vec<N> k3 = f(t + c3 * hs, add(y, hs, {{a31, &k1}, {a32, &k2}}));
    Vec<N> k4 = f(t + c4 * hs, add(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    Vec<N> k5 = f(t + c5 * hs, add(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    Vec<N> k6 = f(t + hs, add(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    Vec<N> y1 = add(y, hs, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    Vec<N> k7 = f(t + hs, y1);
    st.evals += 6;

    Vec<N> err;
    for (std::size_t i = 0; i < N; ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    double en = norm(err, y, y1);
    bool finite = std::isfinite(en);
    for (std::size_t i = 0; i < N && finite; ++i) finite = std::isfinite(y1[i]);
    if (!finite) en = 1e10;

    if (en <= 1.0) {
      DenseStep<N> ds;
      ds.t0 = t;
      ds.h = hs;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = y1[i] - y[i];
        const double bspl = hs * k1[i] - dy;
        ds.r1[i] = y[i];
        ds.r2[i] = dy;
        ds.r3[i] = bspl;
        ds.r4[i] = dy - hs * k7[i] - bspl;
        ds.r5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t = final_step ? t_end : t + hs;
      y = y1;
      k1 = k7;
      ++st.accepted;
      t_out = t;
      if (obs(static_cast<const DenseStep<N>&>(ds), static_cast<const Vec<N>&>(y))) return y;
      if (final_step) return y;
      double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      h = std::min(h * fac, opt.hmax);
      last_rejected = false;
    } else {
      ++st.rejected;
      const double fac = std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
      h *= fac;
      last_rejected = true;
    }
  }
}

}  // namespace fracdyn
