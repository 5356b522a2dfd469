#include "fracdyn/results.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>

#include "fracdyn/error.hpp"

namespace fracdyn {

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "id",      "method",  "digest",        "predicted",     "predicted_exact", "certainty",
      "estimated", "stderr", "r2",           "delta_lo",      "delta_hi",        "content_lower",
      "content_upper", "snapped", "bound",   "reference",     "status",          "runtime_s"};
  return cols;
}

std::string result_header() {
  std::string h;
  for (const auto& c : result_columns()) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  for (int p = 6; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

std::string opt_str(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void check_text(const std::string& s, const char* what) {
  if (s.find_first_of(",\n\r\"") != std::string::npos)
    fail(Errc::DomainError, std::string(what) + " must not contain commas, quotes or newlines");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',')
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

std::optional<double> parse_opt(const std::string& s, std::size_t line, const std::string& col) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw SyntaxError(line, "line " + std::to_string(line) + ": column " + col + " is not a number: '" + s + "'");
  return v;
}

bool valid_rational(const std::string& s) {
  if (s.empty()) return true;
  const auto slash = s.find('/');
  auto is_int = [](std::string_view t, bool sign) {
    if (!t.empty() && sign && t[0] == '-') t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (slash == std::string::npos) return is_int(s, true);
  return is_int(std::string_view(s).substr(0, slash), true) && is_int(std::string_view(s).substr(slash + 1), false);
}

}  // namespace

std::string to_csv(const ResultRow& r) {
  check_text(r.id, "id");
  check_text(r.method, "method");
  check_text(r.status, "status");
  const std::vector<std::string> f = {r.id,
                                      r.method,
                                      r.digest,
                                      opt_str(r.predicted),
                                      r.predicted_exact,
                                      r.certainty,
                                      opt_str(r.estimated),
                                      opt_str(r.stderr_),
                                      opt_str(r.r2),
                                      opt_str(r.delta_lo),
                                      opt_str(r.delta_hi),
                                      opt_str(r.content_lower),
                                      opt_str(r.content_upper),
                                      r.snapped,
                                      r.bound,
                                      opt_str(r.reference),
                                      r.status,
                                      opt_str(r.runtime_s)};
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ',';
    s += f[i];
  }
  return s;
}

std::vector<ResultRow> parse_results_csv(std::istream& in) {
  std::string line;
  std::size_t ln = 1;
  if (!std::getline(in, line) || line != result_header())
    throw SyntaxError(ln, "line 1: header does not match the result schema");
  const auto& cols = result_columns();
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != cols.size())
      throw SyntaxError(ln, "line " + std::to_string(ln) + ": expected " + std::to_string(cols.size()) +
                                " fields, got " + std::to_string(f.size()));
    ResultRow r;
    r.id = f[0];
    r.method = f[1];
    r.digest = f[2];
    if (!r.digest.empty() && (r.digest.size() != 16 || r.digest.find_first_not_of("0123456789abcdef") != std::string::npos))
      throw SyntaxError(ln, "line " + std::to_string(ln) + ": malformed digest");
    r.predicted = parse_opt(f[3], ln, cols[3]);
    r.predicted_exact = f[4];
    r.certainty = f[5];
    if (!(r.certainty.empty() || r.certainty == "Theorem" || r.certainty == "Conjecture"))
      throw SyntaxError(ln, "line " + std::to_string(ln) + ": unknown certainty '" + r.certainty + "'");
    r.estimated = parse_opt(f[6], ln, cols[6]);
    r.stderr_ = parse_opt(f[7], ln, cols[7]);
    r.r2 = parse_opt(f[8], ln, cols[8]);
    r.delta_lo = parse_opt(f[9], ln, cols[9]);
    r.delta_hi = parse_opt(f[10], ln, cols[10]);
    r.content_lower = parse_opt(f[11], ln, cols[11]);
    r.content_upper = parse_opt(f[12], ln, cols[12]);
    r.snapped = f[13];
    r.bound = f[14];
    if (!valid_rational(r.predicted_exact) || !valid_rational(r.snapped))
      throw SyntaxError(ln, "line " + std::to_string(ln) + ": malformed rational");
    if (!(r.bound.empty() || r.bound == "unbounded" || (valid_rational(r.bound) && r.bound.find('/') == std::string::npos)))
      throw SyntaxError(ln, "line " + std::to_string(ln) + ": malformed bound '" + r.bound + "'");
    r.reference = parse_opt(f[15], ln, cols[15]);
    r.status = f[16];
    if (r.status.empty()) throw SyntaxError(ln, "line " + std::to_string(ln) + ": empty status");
    r.runtime_s = parse_opt(f[17], ln, cols[17]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace fracdyn
