#include "fracdyn/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "fracdyn/error.hpp"

namespace fracdyn {

Polynomial2::Polynomial2(std::vector<Term> terms) {
  std::map<std::pair<int, int>, double> acc;
  for (const Term& t : terms) {
    if (t.xdeg < 0 || t.ydeg < 0) fail(Errc::DomainError, "negative exponent");
    acc[{t.xdeg, t.ydeg}] += t.coef;
  }
  for (const auto& [key, c] : acc)
    if (c != 0.0) terms_.push_back({c, key.first, key.second});
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    const int da = a.xdeg + a.ydeg, db = b.xdeg + b.ydeg;
    if (da != db) return da > db;
    return a.xdeg > b.xdeg;
  });
}

Polynomial2 Polynomial2::constant(double c) { return Polynomial2({{c, 0, 0}}); }
Polynomial2 Polynomial2::x() { return Polynomial2({{1.0, 1, 0}}); }
Polynomial2 Polynomial2::y() { return Polynomial2({{1.0, 0, 1}}); }
Polynomial2 Polynomial2::monomial(double c, int xdeg, int ydeg) { return Polynomial2({{c, xdeg, ydeg}}); }

int Polynomial2::degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.xdeg + t.ydeg);
  return d;
}
int Polynomial2::max_xdeg() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.xdeg);
  return d;
}
int Polynomial2::max_ydeg() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.ydeg);
  return d;
}

namespace {

// x^e by binary powering; exact for small e and faster than std::pow.
inline double ipow(double b, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

double Polynomial2::operator()(double x, double y) const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.coef * ipow(x, t.xdeg) * ipow(y, t.ydeg);
  return s;
}

double Polynomial2::coef(int xdeg, int ydeg) const {
  for (const Term& t : terms_)
    if (t.xdeg == xdeg && t.ydeg == ydeg) return t.coef;
  return 0.0;
}

Polynomial2 Polynomial2::dx() const {
  std::vector<Term> out;
  for (const Term& t : terms_)
    if (t.xdeg > 0) out.push_back({t.coef * t.xdeg, t.xdeg - 1, t.ydeg});
  return Polynomial2(std::move(out));
}

Polynomial2 Polynomial2::dy() const {
  std::vector<Term> out;
  for (const Term& t : terms_)
    if (t.ydeg > 0) out.push_back({t.coef * t.ydeg, t.xdeg, t.ydeg - 1});
  return Polynomial2(std::move(out));
}

Polynomial2 Polynomial2::pow(unsigned e) const {
  Polynomial2 result = constant(1.0), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial2 operator+(const Polynomial2& a, const Polynomial2& b) {
  std::vector<Term> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return Polynomial2(std::move(t));
}

Polynomial2 operator-(const Polynomial2& a, const Polynomial2& b) { return a + (-1.0 * b); }

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
  std::vector<Term> t;
  t.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& p : a.terms_)
    for (const Term& q : b.terms_) t.push_back({p.coef * q.coef, p.xdeg + q.xdeg, p.ydeg + q.ydeg});
  return Polynomial2(std::move(t));
}

Polynomial2 operator*(double s, const Polynomial2& a) {
  std::vector<Term> t = a.terms_;
  for (Term& x : t) x.coef *= s;
  return Polynomial2(std::move(t));
}

std::string Polynomial2::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  bool first = true;
  for (const Term& t : terms_) {
    double c = t.coef;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = std::fabs(c);
    const bool has_var = t.xdeg > 0 || t.ydeg > 0;
    bool need_star = false;
    if (!has_var || c != 1.0) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out += buf;
      need_star = true;
    }
    auto var = [&](char v, int d) {
      if (d == 0) return;
      if (need_star) out += "*";
      out += v;
      if (d > 1) out += "^" + std::to_string(d);
      need_star = true;
    };
    var('x', t.xdeg);
    var('y', t.ydeg);
    first = false;
  }
  return out;
}

// ---- parser ----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial2 parse() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty expression");
    std::vector<Term> terms;
    double sign = 1.0;
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
      skip();
    } else if (peek() == '+') {
      throw SyntaxError(pos_, "unexpected '+'");
    }
    terms.push_back(term(sign));
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (c != '+' && c != '-') throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
      ++pos_;
      terms.push_back(term(c == '-' ? -1.0 : 1.0));
    }
    return Polynomial2(std::move(terms));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Term term(double sign) {
    Term t{sign, 0, 0};
    factor(t);
    while (true) {
      skip();
      if (peek() != '*') break;
      ++pos_;
      factor(t);
    }
    return t;
  }

  void factor(Term& t) {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.coef *= number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string_view id = s_.substr(start, pos_ - start);
      if (id != "x" && id != "y")
        throw Error(Errc::UnknownVariable,
                    "unknown variable '" + std::string(id) + "' at offset " + std::to_string(start));
      int e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        e = posint();
      }
      (id == "x" ? t.xdeg : t.ydeg) += e;
      return;
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  double number() {
    const std::size_t start = pos_;
    bool digits = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) { ++pos_; digits = true; }
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) { ++pos_; digits = true; }
    }
    if (!digits) throw SyntaxError(start, "malformed number");
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError(save, "malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::string tok(s_.substr(start, pos_ - start));
    return std::strtod(tok.c_str(), nullptr);
  }

  int posint() {
    const std::size_t start = pos_;
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 100000) throw SyntaxError(start, "exponent too large");
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError(start, "expected exponent");
    if (v == 0) throw SyntaxError(start, "exponent must be positive");
    return static_cast<int>(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial2 parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace fracdyn
