#include <cmath>
#include <fstream>

#include "common.hpp"
#include "fracdyn/flow.hpp"
#include "fracdyn/models.hpp"

namespace fdcli {

using namespace fracdyn;

namespace {

struct SpiralArgs {
  Common common;
  std::string system = "power-spiral";
  std::string alpha = "1/2";
  double beta = 0.1;
  double a1 = 1.0, b2 = 2.0;
  int l = 1;
  std::vector<double> a{0.0};
  std::string target = "focus";
  int cycle_multiplicity = 1;
  int m = 3, n = 3, k = 1;
  std::string sign = "-";
  std::string f, g;
  double center_x = 0.0, center_y = 0.0;
  std::string direction = "auto";
  std::optional<double> phi_max, r0, r_min, delta_max, delta_min;
  std::optional<int> turns, scales;
  double tol = 1e-10;
  int points_per_turn = 64;
  int grid = 4096;
  std::string trajectory_out, scales_out, plot_script;
  CLI::App* sub = nullptr;
};

// Per-system defaults for the scale grid and the sampled extent.
struct Defaults {
  double phi_max, r0, r_min, delta_max, delta_min;
  int turns, scales;
};

Defaults defaults_for(const std::string& sys, bool cycle) {
  if (sys == "degfocus") return {0, 1.0, 0, 1e-3, 1e-14, 0, 20};
  if (sys == "exp-spiral") return {200.0, 0, 0, 0.1, 2e-4, 0, 14};
  if (sys == "hopf-takens" || sys == "user")
    return cycle ? Defaults{0, 0.5, 1e-12, 0.1, 2e-4, 20, 14} : Defaults{0, 0.5, 0.005, 0.1, 2e-4, 100000, 14};
  return {20000.0, 0, 0, 0.1, 2e-4, 0, 14};
}

int run(SpiralArgs& A) {
  Stopwatch sw;
  const bool cycle = A.target == "cycle";
  const Defaults D = defaults_for(A.system, cycle);
  const double delta_max = A.delta_max.value_or(D.delta_max);
  const double delta_min = A.delta_min.value_or(D.delta_min);
  const int scales = A.scales.value_or(D.scales);

  ResultRow base;
  base.id = A.common.id;
  base.digest = inputs_digest(A.sub);
  std::vector<ResultRow> rows;
  std::vector<DimensionEstimate> ests;

  const int code = guarded(base, [&] {
    const ScaleGrid grid = ScaleGrid::spanning(delta_max, delta_min, scales);
    grid.validate();
    CurveOptions co;
    co.threads = env_threads();

    std::optional<DimPrediction> pred;
    std::optional<Trajectory> tr;
    if (A.system == "power-spiral") {
      const Rational al = parse_rational(A.alpha);
      pred = predict_power_spiral_dim(al);
      tr = closed_spiral(PowerSpiral{al.to_double()}, 1.0, A.phi_max.value_or(D.phi_max), A.points_per_turn,
                         delta_min / 3.2);
    } else if (A.system == "exp-spiral") {
      pred = predict_exp_spiral_dim(A.beta);
      tr = closed_spiral(ExpSpiral{A.beta}, 0.0, A.phi_max.value_or(D.phi_max), A.points_per_turn, delta_min / 3.2);
    } else if (A.system == "three-d") {
      pred = predict_3d_spiral_dim(A.a1, A.b2);
      tr = closed_spiral(ThreeDSpiral{A.a1, A.b2}, 0.0, A.phi_max.value_or(D.phi_max), A.points_per_turn,
                         delta_min / 3.2);
    } else if (A.system == "hopf-takens" || A.system == "user") {
      PlanarSystem sys;
      if (A.system == "hopf-takens") {
        HopfTakensParams hp{A.l, A.a};
        sys = hopf_takens(hp);
        pred = cycle ? predict_limit_cycle_dim(A.cycle_multiplicity) : predict_hopf_takens_dim(hp);
      } else {
        if (A.f.empty() || A.g.empty()) fail(Errc::ConfigError, "system 'user' needs --f and --g");
        sys.f = parse_poly(A.f);
        sys.g = parse_poly(A.g);
        sys.center = {A.center_x, A.center_y};
        if (A.direction == "auto") fail(Errc::ConfigError, "system 'user' needs --direction forward|backward");
      }
      SpiralOptions so;
      so.tol = A.tol;
      so.points_per_turn = A.points_per_turn;
      so.max_spacing = delta_min / 3.2;
      if (A.direction == "forward") so.direction = 1.0;
      else if (A.direction == "backward") so.direction = -1.0;
      else if (cycle) so.direction = -sys.approach_sign;
      const double r0 = A.r0.value_or(D.r0);
      tr = spiral_sample(sys, {sys.center[0] + r0, sys.center[1]}, A.r_min.value_or(D.r_min),
                         A.turns.value_or(D.turns), so);
    } else if (A.system == "degfocus") {
      if (A.sign != "+" && A.sign != "-") fail(Errc::ConfigError, "--sign must be + or -");
      DegFocusParams p{A.m, A.n, A.k, A.sign == "+" ? Sign::Plus : Sign::Minus};
      pred = predict_degfocus_dim(p);
      const GenTrigTable table = gen_trig(p.m, p.n, A.grid);
      ests.push_back(nucleus_tail_dim(p, table, A.r0.value_or(D.r0), grid));
    } else {
      fail(Errc::ConfigError, "unknown system '" + A.system + "'");
    }

    if (tr) {
      if (!A.trajectory_out.empty()) {
        Sink s(A.trajectory_out);
        tr->write(s.os());
      }
      ests.push_back(curve_box_dim(*tr, grid, co));
      ests.push_back(curve_sausage_dim(*tr, grid, co));
    }
    for (const auto& e : ests) {
      ResultRow r = base;
      fill_estimate(r, e);
      if (pred) fill_prediction(r, *pred);
      rows.push_back(r);
    }
  });

  if (code != 0) {
    base.method = "";
    rows = {base};
  }
  const double rt = sw.seconds();
  for (auto& r : rows) r.runtime_s = rt;
  write_rows(A.common, rows);
  if (!A.scales_out.empty() && !ests.empty()) {
    write_scales(A.scales_out, ests);
    if (!A.plot_script.empty()) write_plot_script(A.plot_script, A.scales_out, A.system);
  }
  return code;
}

}  // namespace

Runner register_spiral_dim(CLI::App& app) {
  auto A = std::make_shared<SpiralArgs>();
  CLI::App* sub = app.add_subcommand("spiral-dim", "Box and sausage dimension of a sampled spiral");
  A->sub = sub;
  add_common(sub, A->common, "spiral-dim");
  sub->add_option("--system", A->system, "power-spiral | exp-spiral | three-d | hopf-takens | degfocus | user")
      ->check(CLI::IsMember({"power-spiral", "exp-spiral", "three-d", "hopf-takens", "degfocus", "user"}));
  sub->add_option("--alpha", A->alpha, "Power spiral exponent in (0,1], rational or decimal");
  sub->add_option("--beta", A->beta, "Exponential spiral rate (nonzero)");
  sub->add_option("--a1", A->a1, "ThreeD spiral a1");
  sub->add_option("--b2", A->b2, "ThreeD spiral b2 (nonzero)");
  sub->add_option("--l", A->l, "Hopf-Takens codimension")->check(CLI::Range(1, 20));
  sub->add_option("--a", A->a, "Hopf-Takens coefficients a_0..a_{l-1}")->delimiter(',');
  sub->add_option("--target", A->target, "focus | cycle: which limit set the spiral approaches")
      ->check(CLI::IsMember({"focus", "cycle"}));
  sub->add_option("--cycle-multiplicity", A->cycle_multiplicity, "Multiplicity of the approached cycle")
      ->check(CLI::Range(1, 100));
  sub->add_option("--m", A->m, "Degenerate focus m (odd)")->check(CLI::Range(1, 99));
  sub->add_option("--n", A->n, "Degenerate focus n (odd)")->check(CLI::Range(1, 99));
  sub->add_option("--k", A->k, "Degenerate focus k")->check(CLI::Range(0, 99));
  sub->add_option("--sign", A->sign, "Degenerate focus sign: - (stable) or +");
  sub->add_option("--f", A->f, "User system x' polynomial");
  sub->add_option("--g", A->g, "User system y' polynomial");
  sub->add_option("--center-x", A->center_x, "User system focus x");
  sub->add_option("--center-y", A->center_y, "User system focus y");
  sub->add_option("--direction", A->direction, "auto | forward | backward")
      ->check(CLI::IsMember({"auto", "forward", "backward"}));
  sub->add_option("--phi-max", A->phi_max, "Largest angle for closed-form spirals")->check(CLI::PositiveNumber);
  sub->add_option("--r0", A->r0, "Starting radius")->check(CLI::PositiveNumber);
  sub->add_option("--r-min", A->r_min, "Stop radius for integrated spirals")->check(CLI::PositiveNumber);
  sub->add_option("--turns", A->turns, "Turn cap for integrated spirals")->check(CLI::Range(10, 100000000));
  sub->add_option("--delta-max", A->delta_max, "Coarsest scale")->check(CLI::PositiveNumber);
  sub->add_option("--delta-min", A->delta_min, "Finest scale")->check(CLI::PositiveNumber);
  sub->add_option("--scales", A->scales, "Number of scales")->check(CLI::Range(12, 200));
  sub->add_option("--tol", A->tol, "Integration tolerance")->check(CLI::Range(1e-13, 1e-6));
  sub->add_option("--points-per-turn", A->points_per_turn, "Angular resampling")->check(CLI::Range(64, 100000));
  sub->add_option("--grid", A->grid, "Generalized trig table size")->check(CLI::Range(1000, 10000000));
  sub->add_option("--trajectory-out", A->trajectory_out, "Write the sampled trajectory (t x y)");
  sub->add_option("--scales-out", A->scales_out, "Write per-scale measures as CSV");
  sub->add_option("--plot-script", A->plot_script, "Write a gnuplot script for --scales-out");
  return [A] { return run(*A); };
}

}  // namespace fdcli
