#pragma once

// Elements of the fraction field K of A = F[Gamma], and the valuation data
// (g_x, r_x) attached to a monomial order.

#include <optional>
#include <utility>

#include "heckecell/laurent.hpp"

namespace heckecell {

class KScalar {
 public:
  KScalar() = default;
  KScalar(LaurentPoly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  KScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_->is_zero()) throw Error("zero denominator");
    normalize();
  }

  const LaurentPoly& num() const { return num_; }
  // The denominator, or the constant 1 of matching rank when there is none.
  LaurentPoly den() const { return den_ ? *den_ : LaurentPoly::one(std::max(num_.rank(), 1)); }
  bool has_den() const { return den_.has_value(); }
  bool is_zero() const { return num_.is_zero(); }
  std::optional<LaurentPoly> as_polynomial() const {
    if (!den_) return num_;
    return std::nullopt;
  }

  KScalar operator-() const {
    KScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend KScalar operator+(const KScalar& a, const KScalar& b) {
    if (!a.den_ && !b.den_) return KScalar(a.num_ + b.num_);
    if (a.den_ && b.den_ && *a.den_ == *b.den_) return KScalar(a.num_ + b.num_, *a.den_);
    if (!b.den_) return KScalar(a.num_ + b.num_ * *a.den_, *a.den_);
    if (!a.den_) return KScalar(a.num_ * *b.den_ + b.num_, *b.den_);
    return KScalar(a.num_ * *b.den_ + b.num_ * *a.den_, *a.den_ * *b.den_);
  }
  friend KScalar operator-(const KScalar& a, const KScalar& b) { return a + (-b); }
  friend KScalar operator*(const KScalar& a, const KScalar& b) {
    if (!a.den_ && !b.den_) return KScalar(a.num_ * b.num_);
    if (!a.den_) return KScalar(a.num_ * b.num_, *b.den_);
    if (!b.den_) return KScalar(a.num_ * b.num_, *a.den_);
    return KScalar(a.num_ * b.num_, *a.den_ * *b.den_);
  }
  KScalar inverse() const {
    if (is_zero()) throw Error("division by zero");
    return KScalar(den(), num_);
  }
  friend KScalar operator/(const KScalar& a, const KScalar& b) { return a * b.inverse(); }
  KScalar& operator+=(const KScalar& o) { return *this = *this + o; }
  KScalar& operator-=(const KScalar& o) { return *this = *this - o; }
  KScalar& operator*=(const KScalar& o) { return *this = *this * o; }

  KScalar bar() const {
    if (!den_) return KScalar(num_.bar());
    return KScalar(num_.bar(), den_->bar());
  }

  // Cross-multiplication; no gcd needed.
  friend bool operator==(const KScalar& a, const KScalar& b) {
    if (!a.den_ && !b.den_) return a.num_ == b.num_;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.num_ * b.den() == b.num_ * a.den();
  }

 private:
  // Denominator: min exponent (storage order) zero, coefficient there 1.
  // Exact division is attempted first so that polynomials stay polynomials.
  void normalize() {
    if (num_.is_zero()) {
      den_.reset();
      return;
    }
    if (auto q = num_.try_divide(*den_)) {
      num_ = std::move(*q);
      den_.reset();
      return;
    }
    const auto& lead = den_->terms().front();
    FieldScalar inv = lead.coef.inverse();
    ExponentVec g = lead.exp;
    *den_ = den_->shifted(-g) * inv;
    num_ = num_.shifted(-g) * inv;
  }

  LaurentPoly num_;
  std::optional<LaurentPoly> den_;
};

struct ValuationData {
  bool infinite = false;  // x = 0
  ExponentVec g;
  FieldScalar r;
};

inline ValuationData valuation_data(const KScalar& x, const MonomialOrder& ord) {
  if (x.is_zero()) return {true, ExponentVec(ord.rank()), FieldScalar()};
  const auto& n = x.num().min_term(ord);
  if (!x.has_den()) return {false, n.exp, n.coef};
  const LaurentPoly den = x.den();
  const auto& d = den.min_term(ord);
  return {false, n.exp - d.exp, n.coef / d.coef};
}

// Constant term of eps^g * x; requires eps^g * x in the valuation ring.
inline FieldScalar constant_term_after_shift(const KScalar& x, const ExponentVec& g, const MonomialOrder& ord) {
  ValuationData v = valuation_data(x, ord);
  if (v.infinite) return FieldScalar();
  int s = ord.sign(v.g + g);
  if (s < 0) throw Error("not in valuation ring");
  return s == 0 ? v.r : FieldScalar();
}

}  // namespace heckecell
