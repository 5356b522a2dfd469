#include "fracdyn/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracdyn/error.hpp"
#include "fracdyn/numeric.hpp"

namespace fracdyn {

void validate(const HopfTakensParams& p) {
  if (p.l < 1) fail(Errc::DomainError, "Hopf-Takens codimension l must be >= 1");
  if (static_cast<int>(p.a.size()) != p.l)
    fail(Errc::DomainError, "Hopf-Takens needs exactly l coefficients a_0..a_{l-1}");
}

void validate(const DegFocusParams& p) {
  if (p.m < 1 || p.n < 1 || p.m % 2 == 0 || p.n % 2 == 0)
    fail(Errc::DomainError, "degenerate focus needs odd positive m, n");
  if (p.k < 0) fail(Errc::DomainError, "k must be >= 0");
}

PlanarSystem hopf_takens(const HopfTakensParams& p) {
  validate(p);
  const Polynomial2 x = Polynomial2::x(), y = Polynomial2::y();
  const Polynomial2 s = x * x + y * y;
  Polynomial2 P = s.pow(static_cast<unsigned>(p.l));
  for (int i = 0; i < p.l; ++i)
    if (p.a[i] != 0.0) P = P + p.a[i] * s.pow(static_cast<unsigned>(i));
  PlanarSystem sys;
  sys.f = -1.0 * y + x * P;
  sys.g = x + y * P;
  sys.kind = SystemKind::Regular;
  // Near r = 0 the radial speed has the sign of the lowest nonzero coefficient.
  double lead = 1.0;
  for (int i = 0; i < p.l; ++i)
    if (p.a[i] != 0.0) {
      lead = p.a[i];
      break;
    }
  sys.approach_sign = lead < 0 ? 1.0 : -1.0;
  sys.label = "hopf-takens l=" + std::to_string(p.l);
  return sys;
}

PlanarSystem degenerate_focus(const DegFocusParams& p) {
  validate(p);
  const int m = p.m, n = p.n;
  const double sg = p.sign == Sign::Plus ? 1.0 : -1.0;
  const Polynomial2 H = Polynomial2({{1.0, 2 * m, 0}, {1.0, 0, 2 * n}}).pow(static_cast<unsigned>(p.k));
  PlanarSystem sys;
  sys.f = Polynomial2::monomial(-n, 0, 2 * n - 1) + Polynomial2::monomial(sg * n, m, n - 1) * H;
  sys.g = Polynomial2::monomial(m, 2 * m - 1, 0) + Polynomial2::monomial(sg * m, m - 1, n) * H;
  sys.kind = SystemKind::Regular;
  sys.approach_sign = p.sign == Sign::Minus ? 1.0 : -1.0;
  sys.label = "degfocus m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(p.k);
  return sys;
}

PlanarSystem slow_fast(std::string_view f, std::string_view g) {
  PlanarSystem sys;
  sys.f = parse_poly(f);
  sys.g = parse_poly(g);
  sys.kind = SystemKind::SlowFast;
  sys.label = "slow-fast";
  return sys;
}

double gen_trig_period(int m, int n) {
  const double a = 1.0 / (2.0 * m), b = 1.0 / (2.0 * n);
  return 2.0 / (m * n) * std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// ---- generalized trigonometric table ---------------------------------------

namespace {

inline double ip(double b, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

void GenTrigTable::eval(double p, double& c, double& s) const {
  double q = std::fmod(p, period);
  if (q < 0) q += period;
  const std::size_t N = phi.size();
  const double h = period / static_cast<double>(N - 1);
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(q / h), N - 2);
  const double t = (q - phi[i]) / h;

  // Values and first two derivatives at both ends, from the defining ODE.
  auto derivs = [&](std::size_t j, double& c0, double& c1, double& c2, double& s0, double& s1, double& s2) {
    c0 = cs_s[j];
    s0 = sn_s[j];
    c1 = -n * ip(s0, 2 * n - 1);
    s1 = m * ip(c0, 2 * m - 1);
    c2 = -n * (2 * n - 1) * ip(s0, 2 * n - 2) * s1;
    s2 = m * (2 * m - 1) * ip(c0, 2 * m - 2) * c1;
  };
  double ca0, ca1, ca2, sa0, sa1, sa2, cb0, cb1, cb2, sb0, sb1, sb2;
  derivs(i, ca0, ca1, ca2, sa0, sa1, sa2);
  derivs(i + 1, cb0, cb1, cb2, sb0, sb1, sb2);

  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double H0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double H1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double H2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double H3 = 10 * t3 - 15 * t4 + 6 * t5;
  const double H4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double H5 = 0.5 * (t3 - 2 * t4 + t5);
  c = H0 * ca0 + H1 * h * ca1 + H2 * h * h * ca2 + H3 * cb0 + H4 * h * cb1 + H5 * h * h * cb2;
  s = H0 * sa0 + H1 * h * sa1 + H2 * h * h * sa2 + H3 * sb0 + H4 * h * sb1 + H5 * h * h * sb2;
}

double GenTrigTable::cs(double p) const {
  double c, s;
  eval(p, c, s);
  return c;
}

double GenTrigTable::sn(double p) const {
  double c, s;
  eval(p, c, s);
  return s;
}

double GenTrigTable::weight(double p) const {
  double c, s;
  eval(p, c, s);
  return ip(s, n - 1) * ip(c, m - 1);
}

double GenTrigTable::max_conservation_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    d = std::max(d, std::fabs(ip(cs_s[i], 2 * m) + ip(sn_s[i], 2 * n) - 1.0));
  return d;
}

double GenTrigTable::max_symmetry_defect() const {
  // Over one period, phi and T - phi play the role of phi and -phi.
  double d = 0.0;
  const std::size_t N = phi.size();
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t j = N - 1 - i;
    d = std::max(d, std::fabs(cs_s[i] - cs_s[j]));
    d = std::max(d, std::fabs(sn_s[i] + sn_s[j]));
  }
  return d;
}

double GenTrigTable::periodicity_defect() const {
  return std::max(std::fabs(cs_s.back() - cs_s.front()), std::fabs(sn_s.back() - sn_s.front()));
}

GenTrigTable gen_trig(int m, int n, int grid_size, double tol) {
  if (m < 1 || n < 1 || m % 2 == 0 || n % 2 == 0)
    fail(Errc::DomainError, "gen_trig needs odd positive m, n");
  if (grid_size < 1000) fail(Errc::DomainError, "gen_trig grid_size must be >= 1000");

  GenTrigTable tab;
  tab.m = m;
  tab.n = n;
  tab.period = gen_trig_period(m, n);
  const double T = tab.period;

  auto rhs = [m, n](double, const Vec<2>& u) -> Vec<2> {
    return {-n * ip(u[1], 2 * n - 1), m * ip(u[0], 2 * m - 1)};
  };
  std::vector<DenseStep<2>> steps;
  DopriOptions opt;
  opt.rtol = tol;
  opt.atol = tol;
  opt.hmax = T / 64.0;
  double t_end;
  dopri5<2>(rhs, 0.0, Vec<2>{1.0, 0.0}, 1.1 * T, opt,
            [&](const DenseStep<2>& st, const Vec<2>&) {
              steps.push_back(st);
              return false;
            },
            t_end);

  auto at = [&](double t) {
    auto it = std::lower_bound(steps.begin(), steps.end(), t,
                               [](const DenseStep<2>& s, double v) { return s.t1() < v; });
    if (it == steps.end()) --it;
    return it->at(t);
  };

  // First return: Sn crosses zero upward with Cs > 0 near phi = T.
  tab.return_period = 0.0;
  for (const DenseStep<2>& st : steps) {
    if (st.t0 < 0.75 * T) continue;
    const double s0 = st.r1[1], s1 = st.at(st.t1())[1];
    if (s0 < 0.0 && s1 >= 0.0) {
      tab.return_period = brent([&](double t) { return st.at(t)[1]; }, st.t0, st.t1(), 1e-15);
      break;
    }
  }

  tab.phi.resize(grid_size);
  tab.cs_s.resize(grid_size);
  tab.sn_s.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double p = T * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const Vec<2> u = at(p);
    tab.phi[i] = p;
    tab.cs_s[i] = u[0];
    tab.sn_s[i] = u[1];
  }

  const double defect = std::max({tab.max_conservation_defect(), tab.max_symmetry_defect(),
                                  tab.periodicity_defect()});
  if (!(defect <= 1e-9))
    fail(Errc::AccuracyError, "generalized trig table defect " + std::to_string(defect) + " exceeds 1e-9");
  if (!(std::fabs(tab.return_period - T) <= 1e-6 * T))
    fail(Errc::AccuracyError, "first-return period disagrees with the Gamma formula");
  return tab;
}

// ---- closed-form spirals ---------------------------------------------------

namespace {

double angle_of(const ClosedSpiralKind& kind, double phi) {
  if (const auto* t = std::get_if<ThreeDSpiral>(&kind)) return (t->b2 > 0 ? -phi : phi) + 1.0;
  return phi;
}

class AnalyticSpiral : public DenseOutput {
 public:
  explicit AnalyticSpiral(ClosedSpiralKind k) : kind_(k) {}
  Vec<2> at(double t) const override {
    const double r = closed_spiral_radius(kind_, t), a = angle_of(kind_, t);
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  ClosedSpiralKind kind_;
};

}  // namespace

double closed_spiral_radius(const ClosedSpiralKind& kind, double phi) {
  if (const auto* p = std::get_if<PowerSpiral>(&kind)) return std::pow(phi, -p->alpha);
  if (const auto* e = std::get_if<ExpSpiral>(&kind)) return std::exp(-e->beta * phi);
  const auto& t = std::get<ThreeDSpiral>(kind);
  return std::pow(std::fabs(t.b2) * phi + 1.0, -t.a1 / t.b2);
}

Trajectory closed_spiral(const ClosedSpiralKind& kind, double phi_lo, double phi_hi,
                         int samples_per_turn, double max_spacing) {
  if (!(phi_hi > phi_lo)) fail(Errc::DomainError, "empty phi range");
  if (samples_per_turn < 1) fail(Errc::DomainError, "samples_per_turn must be positive");
  if (const auto* p = std::get_if<PowerSpiral>(&kind)) {
    if (!(p->alpha > 0.0 && p->alpha <= 1.0)) fail(Errc::DomainError, "power spiral needs alpha in (0,1]");
    if (phi_lo < 1.0) fail(Errc::DomainError, "power spiral needs phi >= 1");
  } else if (const auto* e = std::get_if<ExpSpiral>(&kind)) {
    if (e->beta == 0.0) fail(Errc::DomainError, "exponential spiral needs beta != 0");
  } else {
    const auto& t = std::get<ThreeDSpiral>(kind);
    if (t.b2 == 0.0) fail(Errc::DomainError, "3D spiral needs b2 != 0");
    if (t.a1 / t.b2 < 0.0) fail(Errc::NotAccumulating, "a1/b2 < 0: the origin is not an accumulation point");
    if (phi_lo < 0.0) fail(Errc::DomainError, "3D spiral parameter must be >= 0");
  }

  Trajectory tr;
  tr.dense = std::make_shared<AnalyticSpiral>(kind);
  const double dphi_max = 2.0 * std::numbers::pi / samples_per_turn;
  double phi = phi_lo;
  while (true) {
    const Vec<2> p = tr.dense->at(phi);
    tr.points.push_back({phi, p[0], p[1]});
    if (phi >= phi_hi) break;
    // Arc speed |d(x,y)/dphi| = sqrt(r^2 + r'^2); r' by central difference.
    const double r = closed_spiral_radius(kind, phi);
    const double e = 1e-6 * std::max(1.0, std::fabs(phi));
    const double rp = (closed_spiral_radius(kind, phi + e) - closed_spiral_radius(kind, std::max(phi_lo, phi - e))) /
                      (phi + e - std::max(phi_lo, phi - e));
    const double speed = std::hypot(r, rp);
    double step = dphi_max;
    if (speed > 0.0) step = std::min(step, 0.999 * max_spacing / speed);
    phi = std::min(phi + step, phi_hi);
  }
  tr.turns = (phi_hi - phi_lo) / (2.0 * std::numbers::pi);
  tr.tol = 0.0;
  return tr;
}

}  // namespace fracdyn
