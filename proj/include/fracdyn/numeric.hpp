#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace fracdyn {

// ---- root finding ----------------------------------------------------------

/// Brent's method on [a, b]. Requires f(a), f(b) of opposite sign (or one of
/// them zero); throws Errc::BracketFailure otherwise.
double brent(const std::function<double(double)>& f, double a, double b, double xtol = 1e-14,
             int max_iter = 200);

/// Same, with the end values already known.
double brent(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double xtol, int max_iter = 200);

// ---- quadrature ------------------------------------------------------------

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod error estimate, summed over subintervals
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) with global bisection of the worst interval.
/// Stops when error <= max(abs_tol, rel_tol*|value|). Does not throw when the
/// interval budget runs out; callers compare .error against their target.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-13, double rel_tol = 1e-13, int max_intervals = 2000);

// ---- exact rationals -------------------------------------------------------

/// Small exact rational with 64-bit parts, always normalized (den > 0, reduced).
/// Overflow in arithmetic throws Errc::DomainError.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;  // "p/q" or "p"
  bool is_integer() const { return den_ == 1; }
  std::int64_t floor() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend Rational operator-(Rational a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(Rational a, Rational b);
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }
  friend bool operator>(Rational a, Rational b) { return b < a; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// "p/q", an integer, or a plain decimal ("0.25" -> 1/4). Throws
/// Errc::SyntaxError on anything else.
Rational parse_rational(std::string_view text);

// ---- least squares ---------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope*x + intercept. Needs at least 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace fracdyn
