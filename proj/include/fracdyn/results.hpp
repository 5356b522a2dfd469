#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracdyn {

/// One CSV row of an experiment. Empty optionals are written as empty fields.
struct ResultRow {
  std::string id;
  std::string method;
  std::string digest;  // FNV-1a of the canonical inputs, 16 hex digits
  std::optional<double> predicted;
  std::string predicted_exact;  // "p/q" when the prediction is rational
  std::string certainty;        // Theorem, Conjecture or empty
  std::optional<double> estimated;
  std::optional<double> stderr_;
  std::optional<double> r2;
  std::optional<double> delta_lo;
  std::optional<double> delta_hi;
  std::optional<double> content_lower;
  std::optional<double> content_upper;
  std::string snapped;  // "p/q" or empty
  std::string bound;    // integer, "unbounded" or empty
  std::optional<double> reference;
  std::string status = "ok";  // "ok" or an error code name
  std::optional<double> runtime_s;

  bool operator==(const ResultRow&) const = default;
};

const std::vector<std::string>& result_columns();
std::string result_header();
std::string to_csv(const ResultRow& r);
/// Parses a CSV produced by to_csv (header included); throws Errc::SyntaxError
/// with the offending line number on any schema violation.
std::vector<ResultRow> parse_results_csv(std::istream& in);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

/// Shortest "%.Ng" rendering that parses back to the same double (N <= 17).
std::string format_double(double v);

}  // namespace fracdyn
