#pragma once

// Multivariate Laurent polynomials F[Gamma] with Gamma = Z^k.

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "heckecell/exponent.hpp"
#include "heckecell/number_field.hpp"

namespace heckecell {

class LaurentPoly {
 public:
  struct Term {
    ExponentVec exp;
    FieldScalar coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPoly() = default;

  static LaurentPoly monomial(const ExponentVec& g, FieldScalar c = FieldScalar(1)) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_.push_back({g, std::move(c)});
    return p;
  }
  static LaurentPoly constant(int rank, FieldScalar c) { return monomial(ExponentVec(rank), std::move(c)); }
  static LaurentPoly one(int rank) { return constant(rank, FieldScalar(1)); }
  // Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static LaurentPoly from_terms(std::vector<Term> terms) {
    LaurentPoly p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int rank() const { return terms_.empty() ? 0 : terms_.front().exp.rank(); }
  bool is_monomial() const { return terms_.size() == 1; }

  FieldScalar coefficient(const ExponentVec& g) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const Term& t, const ExponentVec& e) { return t.exp < e; });
    if (it != terms_.end() && it->exp == g) return it->coef;
    return FieldScalar();
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero()); }
  FieldScalar constant_coefficient() const {
    if (terms_.empty()) return FieldScalar();
    return coefficient(ExponentVec(rank()));
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, false); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, true); }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly();
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) prod.push_back({x.exp + y.exp, x.coef * y.coef});
    return from_terms(std::move(prod));
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly& operator*=(const FieldScalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (c.is_one()) return *this;
    for (auto& t : terms_) t.coef *= c;
    return *this;
  }
  friend LaurentPoly operator*(LaurentPoly a, const FieldScalar& c) { return a *= c; }
  friend LaurentPoly operator*(const FieldScalar& c, LaurentPoly a) { return a *= c; }

  // Multiplication by the monomial eps^g.
  LaurentPoly shifted(const ExponentVec& g) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.exp += g;
    return r;
  }

  // eps^g -> eps^{-g}.
  LaurentPoly bar() const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.push_back({-it->exp, it->coef});
    return r;
  }

  // Applies a group homomorphism to every exponent.
  LaurentPoly map_exponents(const std::function<ExponentVec(const ExponentVec&)>& alpha) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({alpha(t.exp), t.coef});
    return from_terms(std::move(out));
  }

  // Terms whose exponent has the given sign pattern under the order.
  LaurentPoly filtered(const MonomialOrder& ord, bool keep_negative, bool keep_zero, bool keep_positive) const {
    LaurentPoly r;
    for (const auto& t : terms_) {
      int s = ord.sign(t.exp);
      if ((s < 0 && keep_negative) || (s == 0 && keep_zero) || (s > 0 && keep_positive)) r.terms_.push_back(t);
    }
    return r;
  }

  const Term& min_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw Error("undefined valuation");
    const Term* best = &terms_[0];
    for (const auto& t : terms_)
      if (ord.less(t.exp, best->exp)) best = &t;
    return *best;
  }
  const Term& max_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw Error("undefined valuation");
    const Term* best = &terms_[0];
    for (const auto& t : terms_)
      if (ord.less(best->exp, t.exp)) best = &t;
    return *best;
  }

  // Value at eps = 1 (the specialization theta_1).
  FieldScalar evaluate_at_one() const {
    FieldScalar s;
    for (const auto& t : terms_) s += t.coef;
    return s;
  }

  // Exact division; nullopt if the divisor does not divide.
  std::optional<LaurentPoly> try_divide(const LaurentPoly& d) const {
    if (d.is_zero()) throw Error("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    if (d.terms_.size() == 1) {
      const Term& t = d.terms_[0];
      FieldScalar inv = t.coef.inverse();
      LaurentPoly r = shifted(-t.exp);
      r *= inv;
      return r;
    }
    const int k = rank();
    ExponentVec lo_a = terms_[0].exp, hi_a = lo_a, lo_d = d.terms_[0].exp, hi_d = lo_d;
    for (const auto& t : terms_)
      for (int i = 0; i < k; ++i) {
        lo_a[i] = std::min(lo_a[i], t.exp[i]);
        hi_a[i] = std::max(hi_a[i], t.exp[i]);
      }
    for (const auto& t : d.terms_)
      for (int i = 0; i < k; ++i) {
        lo_d[i] = std::min(lo_d[i], t.exp[i]);
        hi_d[i] = std::max(hi_d[i], t.exp[i]);
      }
    // Newton polytope of a quotient lies in this box.
    ExponentVec lo = lo_a - lo_d, hi = hi_a - hi_d;
    for (int i = 0; i < k; ++i)
      if (lo[i] > hi[i]) return std::nullopt;
    const Term& lead = d.terms_.back();
    const FieldScalar lead_inv = lead.coef.inverse();
    LaurentPoly rem = *this;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
      const Term& top = rem.terms_.back();
      Term q{top.exp - lead.exp, top.coef * lead_inv};
      for (int i = 0; i < k; ++i)
        if (q.exp[i] < lo[i] || q.exp[i] > hi[i]) return std::nullopt;
      rem -= d.times_term(q);
      quot.push_back(std::move(q));
    }
    std::reverse(quot.begin(), quot.end());
    LaurentPoly r;
    r.terms_ = std::move(quot);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  LaurentPoly times_term(const Term& m) const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.exp + m.exp, t.coef * m.coef});
    return r;
  }

  LaurentPoly& accumulate(const LaurentPoly& o, bool negate) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
      terms_ = o.terms_;
      if (negate)
        for (auto& t : terms_) t.coef = -t.coef;
      return *this;
    }
    if (o.terms_.size() <= 2 && terms_.size() > 8) {
      for (const auto& t : o.terms_) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t.exp,
                                   [](const Term& x, const ExponentVec& e) { return x.exp < e; });
        if (it != terms_.end() && it->exp == t.exp) {
          if (negate)
            it->coef -= t.coef;
          else
            it->coef += t.coef;
          if (it->coef.is_zero()) terms_.erase(it);
        } else {
          terms_.insert(it, {t.exp, negate ? -t.coef : t.coef});
        }
      }
      return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->exp < j->exp)) {
        out.push_back(std::move(*i++));
      } else if (i == terms_.end() || j->exp < i->exp) {
        out.push_back({j->exp, negate ? -j->coef : j->coef});
        ++j;
      } else {
        if (negate)
          i->coef -= j->coef;
        else
          i->coef += j->coef;
        if (!i->coef.is_zero()) out.push_back(std::move(*i));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp)
        out.back().coef += t.coef;
      else
        out.push_back(std::move(t));
      if (out.size() >= 2 && out[out.size() - 2].coef.is_zero()) out.erase(out.end() - 2);
    }
    if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

inline ExponentVec min_exponent(const LaurentPoly& p, const MonomialOrder& ord) { return p.min_term(ord).exp; }

}  // namespace heckecell
