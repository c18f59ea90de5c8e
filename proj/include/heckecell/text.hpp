#pragma once

// Canonical text form of field elements and Laurent polynomials.
//   field element:  1/2 + 3*d + -1*d^2     (d is the field generator)
//   polynomial:     (1 + 1*d)*eps[0,1] + -2*eps[1,0]
// Formatting then parsing reproduces the value exactly.

#include <cctype>
#include <string>
#include <string_view>

#include "heckecell/kscalar.hpp"

namespace heckecell {

inline std::string to_text(const FieldScalar& c) {
  if (c.is_zero()) return "0";
  std::string out;
  const auto& co = c.coeffs();
  for (std::size_t i = 0; i < co.size(); ++i) {
    if (sgn(co[i]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += co[i].get_str();
    if (i == 1) out += "*d";
    if (i >= 2) out += "*d^" + std::to_string(i);
  }
  return out;
}

inline std::string to_text(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string c = to_text(t.coef);
    if (t.coef.coeffs().size() > 1 && c.find(" + ") != std::string::npos) c = "(" + c + ")";
    out += c + "*eps" + t.exp.to_string();
  }
  return out;
}

inline std::string to_text(const KScalar& x) {
  if (!x.has_den()) return to_text(x.num());
  return "(" + to_text(x.num()) + ")/(" + to_text(x.den()) + ")";
}

namespace detail {

class TextParser {
 public:
  TextParser(std::string_view s, const NumberField* field, int rank) : s_(s), field_(field), rank_(rank) {}

  LaurentPoly parse_poly() {
    LaurentPoly p = parse_poly_sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

  FieldScalar parse_field() {
    FieldScalar c = parse_field_sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return c;
  }

  KScalar parse_kscalar() {
    skip();
    if (peek() == '(') {
      std::size_t save = pos_;
      ++pos_;
      LaurentPoly num = parse_poly_sum();
      skip();
      if (peek() == ')' ) {
        ++pos_;
        skip();
        if (peek() == '/') {
          ++pos_;
          skip();
          expect('(');
          LaurentPoly den = parse_poly_sum();
          expect(')');
          skip();
          if (pos_ != s_.size()) fail("unexpected trailing input");
          return KScalar(num, den);
        }
      }
      pos_ = save;
    }
    return KScalar(parse_poly());
  }

  int rank() const { return rank_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool starts_with(std::string_view w) const { return s_.substr(pos_, w.size()) == w; }

  long parse_int() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(s_[pos_ - 1]))) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  Rational parse_rational() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string tok(s_.substr(start, pos_ - start));
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    Rational r;
    if (tok.empty() || r.set_str(tok, 10) != 0) fail("expected rational number");
    if (r.get_den() == 0) fail("zero denominator");
    r.canonicalize();
    return r;
  }

  FieldScalar d_power(long k) {
    if (field_ == nullptr) fail("'d' used but the coefficient field is Q");
    QPoly p(k + 1);
    p[k] = 1;
    return FieldScalar(*field_, p);
  }

  FieldScalar parse_d_tail() {
    ++pos_;  // 'd'
    long k = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      k = parse_int();
      if (k < 0) fail("negative power of d");
    }
    return d_power(k);
  }

  bool at_d() const { return peek() == 'd'; }

  FieldScalar parse_field_term() {
    skip();
    if (at_d()) return parse_d_tail();
    bool neg = false;
    if (peek() == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'd') {
      neg = true;
      ++pos_;
      FieldScalar c = parse_d_tail();
      return neg ? -c : c;
    }
    FieldScalar c(parse_rational());
    skip();
    if (peek() == '*') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (at_d()) return c * parse_d_tail();
      pos_ = save;
    }
    return c;
  }

  FieldScalar parse_field_sum() {
    FieldScalar acc = parse_field_term();
    for (;;) {
      skip();
      if (peek() == '+') {
        ++pos_;
        acc += parse_field_term();
      } else if (peek() == '-' ) {
        ++pos_;
        acc -= parse_field_term();
      } else {
        return acc;
      }
    }
  }

  ExponentVec parse_eps() {
    pos_ += 3;
    expect('[');
    std::vector<int> v{static_cast<int>(parse_int())};
    skip();
    while (peek() == ',') {
      ++pos_;
      v.push_back(static_cast<int>(parse_int()));
      skip();
    }
    expect(']');
    if (rank_ == 0) rank_ = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != rank_) fail("exponent has wrong rank");
    return ExponentVec(v);
  }

  LaurentPoly parse_poly_term() {
    skip();
    FieldScalar c(1);
    if (starts_with("eps")) return LaurentPoly::monomial(parse_eps(), c);
    if (peek() == '(') {
      ++pos_;
      c = parse_field_sum();
      expect(')');
    } else {
      c = parse_field_term();
    }
    skip();
    if (peek() == '*') {
      ++pos_;
      skip();
      if (!starts_with("eps")) fail("expected 'eps'");
      return LaurentPoly::monomial(parse_eps(), c);
    }
    if (rank_ == 0) rank_ = 1;
    return LaurentPoly::constant(rank_, c);
  }

  LaurentPoly parse_poly_sum() {
    LaurentPoly acc = parse_poly_term();
    for (;;) {
      skip();
      if (peek() == '+') {
        ++pos_;
        acc += parse_poly_term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= parse_poly_term();
      } else {
        return acc;
      }
    }
  }

  using QPoly = detail::QPoly;
  std::string_view s_;
  std::size_t pos_ = 0;
  const NumberField* field_;
  int rank_;
};

}  // namespace detail

// rank is needed for constant terms written without eps[...]; pass 0 to infer.
inline LaurentPoly parse_laurent(std::string_view s, const NumberField* field, int rank) {
  return detail::TextParser(s, field, rank).parse_poly();
}

inline FieldScalar parse_field_scalar(std::string_view s, const NumberField* field) {
  return detail::TextParser(s, field, 1).parse_field();
}

inline KScalar parse_kscalar(std::string_view s, const NumberField* field, int rank) {
  return detail::TextParser(s, field, rank).parse_kscalar();
}

}  // namespace heckecell
