#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fracdyn {

struct Term {
  double coef = 0.0;
  int xdeg = 0;
  int ydeg = 0;
  bool operator==(const Term&) const = default;
};

/// Sparse polynomial in x, y with real coefficients. Terms are kept merged,
/// nonzero and sorted by (total degree desc, xdeg desc).
class Polynomial2 {
 public:
  Polynomial2() = default;
  explicit Polynomial2(std::vector<Term> terms);

  static Polynomial2 constant(double c);
  static Polynomial2 x();
  static Polynomial2 y();
  static Polynomial2 monomial(double c, int xdeg, int ydeg);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;
  int max_xdeg() const;
  int max_ydeg() const;

  double operator()(double x, double y) const;
  Polynomial2 dx() const;
  Polynomial2 dy() const;
  Polynomial2 pow(unsigned e) const;

  /// Coefficient of x^i y^j (0 when absent).
  double coef(int xdeg, int ydeg) const;

  /// Text accepted by parse_poly; coefficients printed with 17 significant digits.
  std::string str() const;

  friend Polynomial2 operator+(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator-(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator*(double s, const Polynomial2& a);
  friend Polynomial2 operator-(const Polynomial2& a) { return -1.0 * a; }
  friend bool operator==(const Polynomial2& a, const Polynomial2& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
};

/// Parses the small grammar
///   expr := term (("+"|"-") term)* ; term := factor ("*" factor)* ;
///   factor := number | var | var "^" posint ; var := "x" | "y"
/// with an optional leading minus. Throws SyntaxError (with byte offset) or
/// Error(UnknownVariable).
Polynomial2 parse_poly(std::string_view text);

}  // namespace fracdyn
