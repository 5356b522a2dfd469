#include "common.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace fdcli {

using namespace fracdyn;

void add_common(CLI::App* sub, Common& c, const std::string& default_id) {
  c.id = default_id;
  sub->add_option("--id", c.id, "Experiment id written to the id column");
  sub->add_option("--out", c.out, "Result CSV path ('-' for stdout)");
  sub->add_flag("--no-runtime", c.no_runtime, "Leave runtime_s empty so reruns are byte-identical");
}

namespace {

const std::set<std::string> kUnhashed = {"--id", "--out", "--no-runtime", "--trajectory-out", "--scales-out",
                                         "--seq-out", "--plot-script", "--help", "--config"};

std::string canonical(const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (!v.empty() && end == v.c_str() + v.size()) return format_double(d);
  return v;
}

}  // namespace

std::string inputs_digest(const CLI::App* sub) {
  std::vector<std::string> parts;
  for (const CLI::Option* o : sub->get_options()) {
    const std::string name = o->get_name();
    if (kUnhashed.count(name)) continue;
    std::string val;
    if (o->count() > 0) {
      for (const auto& r : o->results()) val += canonical(r) + ";";
    } else {
      val = canonical(o->get_default_str());
    }
    parts.push_back(name + "=" + val);
  }
  std::sort(parts.begin(), parts.end());
  std::string s = sub->get_name();
  for (const auto& p : parts) s += "|" + p;
  return hex64(fnv1a64(s));
}

Sink::Sink(const std::string& path) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ofstream>(path);
  if (!*file_) fail(Errc::ConfigError, "cannot open '" + path + "' for writing");
}

void write_rows(const Common& c, const std::vector<ResultRow>& rows) {
  Sink sink(c.out);
  sink.os() << result_header() << '\n';
  for (ResultRow r : rows) {
    if (c.no_runtime) r.runtime_s.reset();
    sink.os() << to_csv(r) << '\n';
  }
}

int env_threads() {
  const char* s = std::getenv("FRACDYN_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) fail(Errc::ConfigError, "FRACDYN_THREADS must be an integer in [1,256]");
  return static_cast<int>(v);
}

void fill_estimate(ResultRow& r, const DimensionEstimate& d) {
  r.method = method_name(d.method);
  r.estimated = d.value;
  r.stderr_ = d.stderr_;
  r.r2 = d.r2;
  r.delta_lo = d.delta_lo;
  r.delta_hi = d.delta_hi;
  if (d.content) {
    r.content_lower = d.content->lower;
    r.content_upper = d.content->upper;
  }
}

void fill_prediction(ResultRow& r, const DimPrediction& p) {
  r.predicted = p.value();
  if (auto e = p.exact()) r.predicted_exact = e->str();
  r.certainty = certainty_name(p.certainty);
}

std::string bound_text(const Classification& c) {
  return c.cyclicity_bound ? std::to_string(*c.cyclicity_bound) : std::string("unbounded");
}

void write_scales(const std::string& path, const std::vector<DimensionEstimate>& ests) {
  Sink s(path);
  s.os() << "method,delta,measure,in_window\n";
  for (const auto& e : ests)
    for (const auto& sc : e.scales)
      s.os() << method_name(e.method) << ',' << format_double(sc.delta) << ',' << format_double(sc.measure) << ','
             << (sc.in_window ? 1 : 0) << '\n';
}

void write_plot_script(const std::string& path, const std::string& data_path, const std::string& title) {
  Sink s(path);
  s.os() << "# gnuplot script: log-log scaling plot\n"
         << "set datafile separator ','\n"
         << "set logscale xy\n"
         << "set xlabel 'delta'\n"
         << "set ylabel 'measure'\n"
         << "set title '" << title << "'\n"
         << "set key left top\n"
         << "plot '" << data_path << "' every ::1 using 2:3 with linespoints title 'all scales', \\\n"
         << "     '" << data_path << "' every ::1 using 2:($4 > 0 ? $3 : 1/0) with points pt 7 title 'fit window'\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    while (*end == ' ') ++end;
    if (item.empty() || *end != '\0') fail(Errc::ConfigError, "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

int guarded(ResultRow& row, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    row.status = std::string(errc_name(e.code()));
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit());
  }
}

}  // namespace fdcli
