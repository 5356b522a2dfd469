#include <cmath>

#include "common.hpp"
#include "fracdyn/models.hpp"
#include "fracdyn/slowfast.hpp"

namespace fdcli {

using namespace fracdyn;

namespace {

struct EntryExitArgs {
  Common common;
  std::string f = "y - x^2";
  std::string g = "-x + 0.3*x^2";
  std::optional<double> y0;
  int N = 40;
  std::string mode = "hopf";
  double guess_x = 0.1, guess_y = 0.1;
  double window_lo = 0.01, window_hi = 0.15;
  double gate = 0.04;
  double gap_floor = 1e-13;
  int samples = 64;
  std::string seq_out, plot_script;
  CLI::App* sub = nullptr;
};

void write_sequence(const std::string& path, const EntryExitSequence& s) {
  Sink out(path);
  out.os() << "k,y,gap,residual\n";
  const auto& v = s.values.values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.os() << i << ',' << format_double(v[i]) << ',';
    if (i + 1 < v.size()) out.os() << format_double(std::abs(v[i] - v[i + 1]));
    out.os() << ',';
    if (i > 0 && i - 1 < s.residuals.size()) out.os() << format_double(s.residuals[i - 1]);
    out.os() << '\n';
  }
}

void write_sequence_plot(const std::string& path, const std::string& data_path) {
  Sink s(path);
  s.os() << "# gnuplot script: entry-exit gaps\n"
         << "set datafile separator ','\n"
         << "set logscale y\n"
         << "set xlabel 'k'\n"
         << "set ylabel 'gap'\n"
         << "plot '" << data_path << "' every ::1 using 1:3 with linespoints title 'y_k - y_{k+1}'\n";
}

int run(EntryExitArgs& A) {
  Stopwatch sw;
  ResultRow r;
  r.id = A.common.id;
  r.digest = inputs_digest(A.sub);
  const bool canard = A.mode == "canard";

  const int code = guarded(r, [&] {
    if (A.gate <= 0 || A.gate >= 0.5) fail(Errc::ConfigError, "--gate must lie in (0, 0.5)");
    const PlanarSystem sys = slow_fast(A.f, A.g);
    const HopfPoint hp = find_slow_fast_hopf(sys, {A.guess_x, A.guess_y});
    std::cerr << "hopf point: (" << format_double(hp.x) << ", " << format_double(hp.y) << "), concavity "
              << (hp.concavity == Concavity::Up ? "up" : "down") << '\n';

    std::optional<double> balanced;
    double y0 = A.y0.value_or(1.0);
    if (canard) {
      balanced = balanced_canard_level(sys, hp, A.window_lo, A.window_hi, A.samples);
      std::cerr << "balanced level y*: " << format_double(*balanced) << '\n';
      if (!A.y0) y0 = *balanced + 0.05;
    }

    EntryExitOptions eo;
    eo.gap_floor = A.gap_floor;
    eo.check_samples = A.samples;
    const EntryExitSequence seq =
        entry_exit_sequence(sys, hp, y0, A.N, canard ? SeqMode::Canard : SeqMode::Hopf, balanced, eo);
    if (seq.truncated)
      std::cerr << "sequence truncated at " << seq.values.size() << " terms (gap floor "
                << format_double(A.gap_floor) << ")\n";
    if (seq.values.size() > 1) std::cerr << "y1: " << format_double(seq.values.values[1]) << '\n';
    if (!A.seq_out.empty()) {
      write_sequence(A.seq_out, seq);
      if (!A.plot_script.empty()) write_sequence_plot(A.plot_script, A.seq_out);
    }

    seq.values.validate();
    const DimensionEstimate d = seq_gap_dim(seq.values);
    fill_estimate(r, d);
    const Classification c = canard ? classify_canard(d, A.gate) : classify_hopf(d, A.gate);
    r.snapped = c.snapped.str();
    r.bound = bound_text(c);
    if (!c.cyclicity_bound) std::cerr << "finite but no bound from dimension\n";
  });
  r.runtime_s = sw.seconds();
  write_rows(A.common, {r});
  return code;
}

}  // namespace

Runner register_entry_exit(CLI::App& app) {
  auto A = std::make_shared<EntryExitArgs>();
  CLI::App* sub = app.add_subcommand("entry-exit", "Entry-exit sequence, its dimension and the implied cyclicity bound");
  A->sub = sub;
  add_common(sub, A->common, "entry-exit");
  sub->add_option("--f", A->f, "Fast component f(x,y)");
  sub->add_option("--g", A->g, "Slow component g(x,y)");
  sub->add_option("--y0", A->y0, "Starting height (default 1, or y*+0.05 in canard mode)");
  sub->add_option("--N", A->N, "Number of iterations")->check(CLI::Range(0, 100000));
  sub->add_option("--mode", A->mode, "hopf | canard")->check(CLI::IsMember({"hopf", "canard"}));
  sub->add_option("--guess-x", A->guess_x, "Newton start for the contact point, x");
  sub->add_option("--guess-y", A->guess_y, "Newton start for the contact point, y");
  sub->add_option("--window-lo", A->window_lo, "Lower end of the balanced-level search");
  sub->add_option("--window-hi", A->window_hi, "Upper end of the balanced-level search");
  sub->add_option("--gate", A->gate, "Lattice snapping gate");
  sub->add_option("--gap-floor", A->gap_floor, "Stop when consecutive terms come closer than this")
      ->check(CLI::Range(1e-16, 1e-3));
  sub->add_option("--samples", A->samples, "Sign-check samples for the integral")->check(CLI::Range(8, 100000));
  sub->add_option("--seq-out", A->seq_out, "Write the sequence as CSV (k,y,gap,residual)");
  sub->add_option("--plot-script", A->plot_script, "Write a gnuplot script for --seq-out");
  return [A] { return run(*A); };
}

}  // namespace fdcli
