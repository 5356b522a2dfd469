#include "common.hpp"
#include "fracdyn/models.hpp"

namespace fdcli {

using namespace fracdyn;

namespace {

struct GenTrigArgs {
  int m = 3, n = 3;
  int grid = 4096;
  std::string out = "-";
};

int run(GenTrigArgs& A) {
  ResultRow unused;
  return guarded(unused, [&] {
    const GenTrigTable t = gen_trig(A.m, A.n, A.grid);
    std::cerr << "period " << format_double(t.period) << ", return period " << format_double(t.return_period)
              << ", conservation defect " << format_double(t.max_conservation_defect()) << ", symmetry defect "
              << format_double(t.max_symmetry_defect()) << ", periodicity defect "
              << format_double(t.periodicity_defect()) << '\n';
    Sink s(A.out);
    s.os() << "phi,cs,sn\n";
    for (std::size_t i = 0; i < t.phi.size(); ++i)
      s.os() << format_double(t.phi[i]) << ',' << format_double(t.cs_s[i]) << ',' << format_double(t.sn_s[i])
             << '\n';
  });
}

}  // namespace

Runner register_gen_trig(CLI::App& app) {
  auto A = std::make_shared<GenTrigArgs>();
  CLI::App* sub = app.add_subcommand("gen-trig", "Dump the (m,n)-trigonometric table as CSV");
  sub->add_option("--m", A->m, "Exponent m (odd)")->check(CLI::Range(1, 99));
  sub->add_option("--n", A->n, "Exponent n (odd)")->check(CLI::Range(1, 99));
  sub->add_option("--grid", A->grid, "Table size")->check(CLI::Range(1000, 10000000));
  sub->add_option("--out", A->out, "CSV path ('-' for stdout)");
  return [A] { return run(*A); };
}

}  // namespace fdcli
