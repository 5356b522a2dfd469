#include <doctest.h>

#include <sstream>

#include "fracdyn/error.hpp"
#include "fracdyn/results.hpp"
#include "gen.hpp"

using namespace fracdyn;

namespace {

std::optional<double> maybe(gen::Rng& r) {
  if (r.integer(0, 4) == 0) return std::nullopt;
  switch (r.integer(0, 3)) {
    case 0: return r.uniform(-2, 2);
    case 1: return r.log_uniform(1e-300, 1e300);
    case 2: return static_cast<double>(r.integer(-5, 5));
    default: return 1.0 / 3.0;
  }
}

ResultRow random_row(gen::Rng& r) {
  ResultRow row;
  row.id = r.pick<std::string>({"a", "table1/m5n3k2", "run-7", "x_y.z"});
  row.method = r.pick<std::string>({"", "BoxCount", "Sausage", "GapStructure", "NucleusTail"});
  row.digest = hex64(fnv1a64(std::to_string(r.integer(0, 1 << 30))));
  row.predicted = maybe(r);
  row.predicted_exact = r.pick<std::string>({"", "4/3", "-1/2", "1", "10174/5103"});
  row.certainty = r.pick<std::string>({"", "Theorem", "Conjecture"});
  row.estimated = maybe(r);
  row.stderr_ = maybe(r);
  row.r2 = maybe(r);
  row.delta_lo = maybe(r);
  row.delta_hi = maybe(r);
  row.content_lower = maybe(r);
  row.content_upper = maybe(r);
  row.snapped = r.pick<std::string>({"", "1/3", "0", "3/5"});
  row.bound = r.pick<std::string>({"", "1", "unbounded", "12"});
  row.reference = maybe(r);
  row.status = r.pick<std::string>({"ok", "Ambiguous", "AssumptionViolated"});
  row.runtime_s = maybe(r);
  return row;
}

}  // namespace

TEST_CASE("csv rows round-trip through the schema parser") {
  gen::Rng rng(61);
  for (int c = 0; c < 50; ++c) {
    std::vector<ResultRow> rows;
    std::ostringstream os;
    os << result_header() << '\n';
    for (int i = rng.integer(0, 6); i > 0; --i) {
      rows.push_back(random_row(rng));
      os << to_csv(rows.back()) << '\n';
    }
    std::istringstream is(os.str());
    CHECK(parse_results_csv(is) == rows);
  }
}

TEST_CASE("csv parser rejects schema violations with a line number") {
  const std::string h = result_header() + "\n";
  ResultRow ok;
  ok.id = "x";
  const std::string good = to_csv(ok) + "\n";
  auto line_of = [](const std::string& text) -> long {
    std::istringstream is(text);
    try {
      parse_results_csv(is);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(line_of("id,method\n") == 1);
  CHECK(line_of(h + good + "x,y\n") == 3);
  std::string bad_num = good;
  bad_num.replace(bad_num.find(",,,"), 3, ",,abc,");
  CHECK(line_of(h + bad_num) == 2);
  ResultRow bad = ok;
  bad.certainty = "Maybe";
  CHECK(line_of(h + to_csv(bad) + "\n") == 2);
  bad = ok;
  bad.bound = "1/2";
  CHECK(line_of(h + to_csv(bad) + "\n") == 2);
  bad = ok;
  bad.status = "";
  CHECK(line_of(h + to_csv(bad) + "\n") == 2);
  bad = ok;
  bad.id = "a,b";
  CHECK_THROWS_AS(to_csv(bad), Error);
}

TEST_CASE("float formatting is shortest round-trip") {
  gen::Rng rng(62);
  for (int i = 0; i < 2000; ++i) {
    const double v = rng.coin() ? rng.uniform(-10, 10) : rng.log_uniform(1e-200, 1e200);
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("FNV-1a digest") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a64("foobar")) == "85944171f73967e8");
  CHECK(fnv1a64("spiral-dim|--alpha=1/2") == fnv1a64("spiral-dim|--alpha=1/2"));
  CHECK(fnv1a64("spiral-dim|--alpha=1/2") != fnv1a64("spiral-dim|--alpha=1/3"));
}

TEST_CASE("every error code maps to one documented exit class") {
  for (int c = 0; c <= static_cast<int>(Errc::Ambiguous); ++c) {
    const Errc e = static_cast<Errc>(c);
    const int x = static_cast<int>(exit_code(e));
    CHECK((x == 2 || x == 3 || x == 4 || x == 5));
    CHECK_FALSE(errc_name(e).empty());
  }
  CHECK(exit_code(Errc::SyntaxError) == ExitCode::Domain);
  CHECK(exit_code(Errc::StepUnderflow) == ExitCode::Numerical);
  CHECK(exit_code(Errc::AssumptionViolated) == ExitCode::Assumption);
  CHECK(exit_code(Errc::Ambiguous) == ExitCode::AmbiguousSnap);
}
