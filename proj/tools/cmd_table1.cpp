#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "common.hpp"
#include "fracdyn/models.hpp"

namespace fdcli {

using namespace fracdyn;

namespace {

using Row = std::tuple<int, int, int>;

// Published numerical column for the eight reference rows.
const std::map<Row, double> kReference = {
    {{5, 3, 2}, 1.87287},   {{11, 3, 2}, 1.89615},  {{21, 3, 2}, 1.90574},  {{21, 11, 2}, 1.96561},
    {{5, 3, 11}, 1.97581},  {{11, 3, 11}, 1.98063}, {{21, 3, 11}, 1.98255}, {{21, 11, 11}, 1.99355},
};

const char* kAllRows = "5:3:2,11:3:2,21:3:2,21:11:2,5:3:11,11:3:11,21:3:11,21:11:11";

struct Table1Args {
  Common common;
  std::string rows = kAllRows;
  double r0 = 1.0;
  double delta_max = 1e-3;
  double delta_min = 1e-14;
  int scales = 20;
  int grid = 4096;
  std::string scales_out;
  CLI::App* sub = nullptr;
};

std::vector<Row> parse_rows(const std::string& text) {
  std::vector<Row> out;
  if (text == "none") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    int m, n, k;
    char c1, c2;
    std::stringstream is(item);
    if (!(is >> m >> c1 >> n >> c2 >> k) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
      fail(Errc::ConfigError, "row must look like m:n:k, got '" + item + "'");
    validate(DegFocusParams{m, n, k, Sign::Minus});
    out.emplace_back(m, n, k);
  }
  return out;
}

int run(Table1Args& A) {
  const std::vector<Row> sel = parse_rows(A.rows);
  const ScaleGrid grid = ScaleGrid::spanning(A.delta_max, A.delta_min, A.scales);
  grid.validate();
  const std::string digest = inputs_digest(A.sub);

  std::vector<ResultRow> rows(sel.size());
  std::vector<int> codes(sel.size(), 0);
  std::vector<DimensionEstimate> ests(sel.size());
  auto work = [&](std::size_t i) {
    Stopwatch sw;
    const auto [m, n, k] = sel[i];
    ResultRow& r = rows[i];
    r.id = A.common.id + "/m" + std::to_string(m) + "n" + std::to_string(n) + "k" + std::to_string(k);
    r.digest = digest;
    r.method = method_name(Method::NucleusTail);
    if (auto it = kReference.find(sel[i]); it != kReference.end()) r.reference = it->second;
    codes[i] = guarded(r, [&] {
      const DegFocusParams p{m, n, k, Sign::Minus};
      fill_prediction(r, predict_degfocus_dim(p));
      const GenTrigTable table = gen_trig(m, n, A.grid);
      ests[i] = nucleus_tail_dim(p, table, A.r0, grid);
      fill_estimate(r, ests[i]);
    });
    r.runtime_s = sw.seconds();
  };

  // Rows are independent; output keeps input order.
  const int threads = std::min<int>(env_threads(), std::max<std::size_t>(1, sel.size()));
  std::vector<std::thread> pool;
  std::mutex mu;
  std::size_t next = 0;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lk(mu);
          if (next >= sel.size()) return;
          i = next++;
        }
        work(i);
      }
    });
  for (auto& th : pool) th.join();

  write_rows(A.common, rows);
  if (!A.scales_out.empty()) {
    std::vector<DimensionEstimate> ok;
    for (std::size_t i = 0; i < sel.size(); ++i)
      if (codes[i] == 0) ok.push_back(ests[i]);
    write_scales(A.scales_out, ok);
  }
  for (int c : codes)
    if (c != 0) return c;
  return 0;
}

}  // namespace

Runner register_table1(CLI::App& app) {
  auto A = std::make_shared<Table1Args>();
  CLI::App* sub = app.add_subcommand("table1", "Degenerate-focus dimensions: conjectured against estimated");
  A->sub = sub;
  add_common(sub, A->common, "table1");
  sub->add_option("--rows", A->rows, "Comma-separated m:n:k rows; empty or \"none\" selects nothing");
  sub->add_option("--r0", A->r0, "Starting generalized radius")->check(CLI::PositiveNumber);
  sub->add_option("--delta-max", A->delta_max, "Coarsest scale")->check(CLI::PositiveNumber);
  sub->add_option("--delta-min", A->delta_min, "Finest scale")->check(CLI::PositiveNumber);
  sub->add_option("--scales", A->scales, "Number of scales")->check(CLI::Range(12, 200));
  sub->add_option("--grid", A->grid, "Generalized trig table size")->check(CLI::Range(1000, 10000000));
  sub->add_option("--scales-out", A->scales_out, "Write per-scale measures as CSV");
  return [A] { return run(*A); };
}

}  // namespace fdcli
