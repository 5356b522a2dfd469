#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracdyn/error.hpp"
#include "fracdyn/fracdim.hpp"
#include "fracdyn/regular.hpp"
#include "fracdyn/results.hpp"

namespace fdcli {

/// Options every subcommand shares.
struct Common {
  std::string id;
  std::string out = "-";
  bool no_runtime = false;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_id);

/// FNV-1a digest over the subcommand's effective option values, skipping
/// output paths and labels.
std::string inputs_digest(const CLI::App* sub);

/// Writes to a file, or stdout for "-".
class Sink {
 public:
  explicit Sink(const std::string& path);
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_rows(const Common& c, const std::vector<fracdyn::ResultRow>& rows);

/// FRACDYN_THREADS, default 1.
int env_threads();

void fill_estimate(fracdyn::ResultRow& r, const fracdyn::DimensionEstimate& d);
void fill_prediction(fracdyn::ResultRow& r, const fracdyn::DimPrediction& p);
std::string bound_text(const fracdyn::Classification& c);

/// Rows of per-scale data: method,delta,measure,in_window.
void write_scales(const std::string& path, const std::vector<fracdyn::DimensionEstimate>& ests);
/// Gnuplot script plotting log(measure) against log(delta) from a scales file.
void write_plot_script(const std::string& path, const std::string& data_path, const std::string& title);

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::vector<double> parse_list(const std::string& s);
std::vector<fracdyn::Rational> parse_rational_list(const std::string& s);

/// Runs `body`, records failures in the row (status) and returns the exit code.
int guarded(fracdyn::ResultRow& row, const std::function<void()>& body);

// Subcommand registration: each returns the runner invoked after parsing.
using Runner = std::function<int()>;
Runner register_spiral_dim(CLI::App& app);
Runner register_table1(CLI::App& app);
Runner register_entry_exit(CLI::App& app);
Runner register_formulas(CLI::App& app);
Runner register_gen_trig(CLI::App& app);

}  // namespace fdcli
