#include <sstream>

#include "common.hpp"
#include "fracdyn/slowfast.hpp"

namespace fdcli {

using namespace fracdyn;

namespace {

struct FormulaArgs {
  std::string polycycle, saddle_loop, two_saddle, classify_hopf, classify_canard;
  std::string predict_hopf_takens, predict_limit_cycle, predict_degfocus, predict_3d, hopf_codim;
  bool two_saddle_rectifiable = false;
  double gate = 0.04;
};

std::string prediction_text(const DimPrediction& p) {
  std::ostringstream os;
  if (auto e = p.exact())
    os << e->str() << " (" << format_double(p.value()) << ")";
  else
    os << format_double(p.value());
  os << ' ' << certainty_name(p.certainty);
  if (!p.source.empty()) os << ", " << p.source;
  return os.str();
}

std::string classification_text(const Classification& c) {
  std::ostringstream os;
  os << "snapped " << c.snapped.str();
  if (c.index_j) os << " j=" << *c.index_j;
  os << " residual " << format_double(c.residual) << " bound ";
  if (c.cyclicity_bound)
    os << *c.cyclicity_bound;
  else
    os << "unbounded (finite but no bound from dimension)";
  return os.str();
}

int to_int(const std::string& s) {
  const Rational r = parse_rational(s);
  if (!r.is_integer()) fail(Errc::DomainError, "expected an integer, got '" + s + "'");
  return static_cast<int>(r.num());
}

int run(FormulaArgs& A) {
  std::ostream& out = std::cout;
  bool any = false;
  auto emit = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
    any = true;
  };

  if (!A.polycycle.empty()) {
    const std::vector<double> d = parse_list(A.polycycle);
    emit("polycycle", format_double(polycycle_spiral_dim(d)));
  }
  if (!A.saddle_loop.empty()) emit("saddle-loop", saddle_loop_dim(to_int(A.saddle_loop)).str());
  if (!A.two_saddle.empty()) {
    const std::vector<Rational> d = parse_rational_list(A.two_saddle);
    if (d.size() != 2) fail(Errc::ConfigError, "--two-saddle takes d1,d2");
    emit("two-saddle", std::to_string(two_saddle_cyclicity_bound(d[0], d[1])));
  }
  if (A.two_saddle_rectifiable) emit("two-saddle-rectifiable", std::to_string(two_saddle_rectifiable_bound()));
  if (!A.classify_hopf.empty())
    emit("classify-hopf", classification_text(classify_hopf(parse_rational(A.classify_hopf).to_double(), A.gate)));
  if (!A.classify_canard.empty())
    emit("classify-canard",
         classification_text(classify_canard(parse_rational(A.classify_canard).to_double(), A.gate)));
  if (!A.hopf_codim.empty()) emit("hopf-codim", hopf_codim_from_dim(parse_rational(A.hopf_codim)).str());
  if (!A.predict_hopf_takens.empty()) {
    const std::vector<double> a = parse_list(A.predict_hopf_takens);
    const HopfTakensParams p{static_cast<int>(a.size()), a};
    emit("predict-hopf-takens", prediction_text(predict_hopf_takens_dim(p)));
  }
  if (!A.predict_limit_cycle.empty())
    emit("predict-limit-cycle", prediction_text(predict_limit_cycle_dim(to_int(A.predict_limit_cycle))));
  if (!A.predict_degfocus.empty()) {
    const std::vector<Rational> v = parse_rational_list(A.predict_degfocus);
    if (v.size() != 3) fail(Errc::ConfigError, "--predict-degfocus takes m,n,k");
    for (const auto& x : v)
      if (!x.is_integer()) fail(Errc::DomainError, "m, n, k must be integers");
    const DegFocusParams p{static_cast<int>(v[0].num()), static_cast<int>(v[1].num()), static_cast<int>(v[2].num()),
                           Sign::Minus};
    emit("predict-degfocus", prediction_text(predict_degfocus_dim(p)));
  }
  if (!A.predict_3d.empty()) {
    const std::vector<double> v = parse_list(A.predict_3d);
    if (v.size() != 2) fail(Errc::ConfigError, "--predict-3d takes a1,b2");
    emit("predict-3d", prediction_text(predict_3d_spiral_dim(v[0], v[1])));
  }
  if (!any) fail(Errc::ConfigError, "no formula requested (see --help)");
  return 0;
}

}  // namespace

Runner register_formulas(CLI::App& app) {
  auto A = std::make_shared<FormulaArgs>();
  CLI::App* sub = app.add_subcommand("formulas", "Closed-form dimensions and cyclicity bounds");
  sub->add_option("--polycycle", A->polycycle, "Sequence dimensions at the saddles, comma-separated");
  sub->add_option("--saddle-loop", A->saddle_loop, "Codimension of the saddle loop");
  sub->add_option("--two-saddle", A->two_saddle, "d1,d2 in (0,1), rational or decimal");
  sub->add_flag("--two-saddle-rectifiable", A->two_saddle_rectifiable, "Bound for the rectifiable two-saddle case");
  sub->add_option("--classify-hopf", A->classify_hopf, "Snap a dimension to the Hopf lattice");
  sub->add_option("--classify-canard", A->classify_canard, "Snap a dimension to the canard lattice");
  sub->add_option("--hopf-codim", A->hopf_codim, "Weak-focus codimension from a spiral dimension");
  sub->add_option("--predict-hopf-takens", A->predict_hopf_takens, "Coefficients a_0..a_{l-1}");
  sub->add_option("--predict-limit-cycle", A->predict_limit_cycle, "Cycle multiplicity");
  sub->add_option("--predict-degfocus", A->predict_degfocus, "m,n,k");
  sub->add_option("--predict-3d", A->predict_3d, "a1,b2");
  sub->add_option("--gate", A->gate, "Lattice snapping gate")->check(CLI::Range(1e-6, 0.5));
  return [A] { return run(*A); };
}

}  // namespace fdcli
