#pragma once

// The real cyclotomic field Q(d), d = 2cos(2*pi/N), and its elements.

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "heckecell/detail/qpoly.hpp"
#include "heckecell/error.hpp"

namespace heckecell {

class NumberField {
 public:
  using QPoly = detail::QPoly;

  // Interned: one instance per conductor for the lifetime of the process.
  static const NumberField& real_cyclotomic(int conductor) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<NumberField>> registry;
    if (conductor < 1) throw InputError("conductor must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[conductor];
    if (!slot) slot.reset(new NumberField(conductor));
    return *slot;
  }

  int conductor() const { return n_; }
  int degree() const { return detail::degree(min_poly_); }
  const QPoly& minimal_polynomial() const { return min_poly_; }

  QPoly reduce(QPoly p) const {
    detail::trim(p);
    if (detail::degree(p) < degree()) return p;
    return detail::divmod(std::move(p), min_poly_).second;
  }

  // Extended Euclid against the minimal polynomial.
  QPoly inverse(const QPoly& a) const {
    QPoly r0 = min_poly_, r1 = reduce(a);
    if (r1.empty()) throw Error("division by zero in number field");
    QPoly t0, t1{Rational(1)};
    while (detail::degree(r1) > 0) {
      auto [q, r] = detail::divmod(r0, r1);
      QPoly t2 = detail::sub(t0, detail::mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r1.empty()) throw InternalError("minimal polynomial is reducible");
    return reduce(detail::scale(t1, 1 / r1[0]));
  }

  // 2cos(2*pi*k/N) as a reduced polynomial in d.
  QPoly two_cos(long k) const {
    long m = ((k % n_) + n_) % n_;
    QPoly prev{Rational(2)}, cur = generator_poly();
    if (m == 0) return prev;
    for (long i = 1; i < m; ++i) {
      QPoly next = reduce(detail::sub(detail::mul(generator_poly(), cur), prev));
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  double approx_generator() const { return 2.0 * std::cos(2.0 * std::numbers::pi / n_); }

  // Exact sign of a reduced, nonzero element.
  int sign(const QPoly& a) const {
    if (a.empty()) return 0;
    if (a.size() == 1) return sgn(a[0]);
    Rational lo = lo_, hi = hi_;
    for (int iter = 0; iter < 4000; ++iter) {
      Rational lower = 0, upper = 0, plo = 1, phi = 1;
      for (const auto& c : a) {
        if (sgn(c) >= 0) {
          lower += c * plo;
          upper += c * phi;
        } else {
          lower += c * phi;
          upper += c * plo;
        }
        plo *= lo;
        phi *= hi;
      }
      if (sgn(lower) > 0) return 1;
      if (sgn(upper) < 0) return -1;
      bisect(lo, hi);
    }
    throw InternalError("sign determination did not converge");
  }

 private:
  explicit NumberField(int n) : n_(n) {
    if (n <= 2) {
      min_poly_ = {Rational(n == 1 ? -2 : 2), Rational(1)};
    } else {
      min_poly_ = half_trace(cyclotomic(n));
    }
    if (degree() >= 2) isolate_generator();
  }

  QPoly generator_poly() const {
    if (degree() == 1) return {-min_poly_[0]};
    return {Rational(0), Rational(1)};
  }

  static QPoly cyclotomic(int n) {
    QPoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
      if (n % d == 0) p = detail::divmod(p, cyclotomic(d)).first;
    return p;
  }

  // Rewrites a palindromic polynomial of degree 2d in y = x + 1/x.
  static QPoly half_trace(const QPoly& phi) {
    const int d = detail::degree(phi) / 2;
    std::vector<Rational> b(d + 1);
    for (int k = 0; k <= d; ++k) b[k] = phi[d + k];
    QPoly q(d + 1);
    for (int k = d; k >= 0; --k) {
      q[k] = b[k];
      if (sgn(q[k]) == 0) continue;
      mpz_class binom = 1;
      for (int j = 0; 2 * j <= k; ++j) {
        b[k - 2 * j] -= q[k] * binom;
        binom = binom * (k - j) / (j + 1);
      }
    }
    detail::trim(q);
    return q;
  }

  // Sturm-certified isolating interval for the largest root.
  void isolate_generator() {
    std::vector<QPoly> chain{min_poly_, detail::derivative(min_poly_)};
    while (detail::degree(chain.back()) > 0) {
      QPoly r = detail::divmod(chain[chain.size() - 2], chain.back()).second;
      if (r.empty()) break;
      chain.push_back(detail::scale(r, -1));
    }
    auto variations = [&](const Rational& x) {
      int count = 0, last = 0;
      for (const auto& p : chain) {
        int s = sgn(detail::eval(p, x));
        if (s != 0) {
          if (last != 0 && s != last) ++count;
          last = s;
        }
      }
      return count;
    };
    const double g = approx_generator();
    for (double eps = 1e-6; eps > 1e-14; eps /= 10) {
      Rational lo(g - eps), hi(g + eps);
      if (sgn(detail::eval(min_poly_, lo)) == 0 || sgn(detail::eval(min_poly_, hi)) == 0) continue;
      if (variations(lo) - variations(hi) == 1 && sgn(lo) > 0) {
        lo_ = lo;
        hi_ = hi;
        return;
      }
    }
    throw InternalError("could not isolate 2cos(2pi/N)");
  }

  void bisect(Rational& lo, Rational& hi) const {
    Rational mid = (lo + hi) / 2;
    int smid = sgn(detail::eval(min_poly_, mid));
    if (smid == 0) {
      lo = hi = mid;
      return;
    }
    if (smid == sgn(detail::eval(min_poly_, lo)))
      lo = mid;
    else
      hi = mid;
  }

  int n_;
  QPoly min_poly_;
  Rational lo_, hi_;
};

// Element of Q(d) stored as reduced coefficients in powers of d.
// A null field pointer means the value is rational.
class FieldScalar {
 public:
  using Coeffs = boost::container::small_vector<Rational, 1>;

  FieldScalar() = default;
  FieldScalar(long v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) c_.emplace_back(v);
  }
  FieldScalar(const Rational& v) {  // NOLINT(google-explicit-constructor)
    if (sgn(v) != 0) c_.push_back(v);
  }
  FieldScalar(const NumberField& field, const detail::QPoly& poly) : field_(&field) {
    detail::QPoly r = field.reduce(poly);
    c_.assign(r.begin(), r.end());
    normalize_field();
  }

  static FieldScalar generator(const NumberField& field) {
    return FieldScalar(field, detail::QPoly{Rational(0), Rational(1)});
  }
  static FieldScalar two_cos(const NumberField& field, long k) {
    return FieldScalar(field, field.two_cos(k));
  }

  const NumberField* field() const { return field_; }
  const Coeffs& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Rational rational() const {
    if (!is_rational()) throw Error("field element is not rational");
    return c_.empty() ? Rational(0) : c_[0];
  }
  // True when every coefficient is an integer, i.e. the value lies in Z[d].
  bool is_integral() const {
    for (const auto& c : c_)
      if (c.get_den() != 1) return false;
    return true;
  }

  int sign() const {
    if (c_.size() <= 1) return c_.empty() ? 0 : sgn(c_[0]);
    return field_->sign(poly());
  }

  FieldScalar operator-() const {
    FieldScalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  FieldScalar& operator+=(const FieldScalar& o) {
    adopt_field(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  FieldScalar& operator-=(const FieldScalar& o) {
    adopt_field(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  FieldScalar& operator*=(const FieldScalar& o) {
    if (c_.empty()) return *this;
    if (o.c_.empty()) {
      c_.clear();
      return *this;
    }
    if (o.c_.size() == 1) {
      for (auto& c : c_) c *= o.c_[0];
      return *this;
    }
    if (c_.size() == 1) {
      Rational k = c_[0];
      c_ = o.c_;
      field_ = o.field_;
      for (auto& c : c_) c *= k;
      return *this;
    }
    adopt_field(o);
    detail::QPoly p = field_->reduce(detail::mul(poly(), o.poly()));
    c_.assign(p.begin(), p.end());
    return *this;
  }
  FieldScalar inverse() const {
    if (c_.empty()) throw Error("division by zero");
    if (c_.size() == 1) return FieldScalar(Rational(1 / c_[0]));
    return FieldScalar(*field_, field_->inverse(poly()));
  }
  FieldScalar& operator/=(const FieldScalar& o) { return *this *= o.inverse(); }

  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
  friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
  friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  // Norm down to Q: determinant of multiplication by this element.
  Rational norm() const {
    if (is_rational()) {
      const int deg = field_ ? field_->degree() : 1;
      Rational v = rational(), r = 1;
      for (int i = 0; i < deg; ++i) r *= v;
      return r;
    }
    const int n = field_->degree();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int j = 0; j < n; ++j) {
      detail::QPoly basis(j + 1);
      basis[j] = 1;
      detail::QPoly col = field_->reduce(detail::mul(poly(), basis));
      for (int i = 0; i < n && i < static_cast<int>(col.size()); ++i) m[i][j] = col[i];
    }
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (sgn(m[r][c]) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        std::swap(m[piv], m[c]);
        det = -det;
      }
      det *= m[c][c];
      for (int r = c + 1; r < n; ++r) {
        if (sgn(m[r][c]) == 0) continue;
        Rational f = m[r][c] / m[c][c];
        for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      }
    }
    return det;
  }

  double approx() const {
    if (c_.empty()) return 0.0;
    if (c_.size() == 1) return c_[0].get_d();
    return detail::eval_double(poly(), field_->approx_generator());
  }

  detail::QPoly poly() const { return detail::QPoly(c_.begin(), c_.end()); }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  void adopt_field(const FieldScalar& o) {
    if (o.field_ == nullptr || o.is_rational()) return;
    if (field_ == nullptr || is_rational()) {
      field_ = o.field_;
      return;
    }
    if (field_ != o.field_) throw InternalError("mixing elements of different number fields");
  }
  // A degree-one field is Q itself; its elements carry no field pointer.
  void normalize_field() {
    if (field_ && field_->degree() <= 1) field_ = nullptr;
  }

  const NumberField* field_ = nullptr;
  Coeffs c_;
};

}  // namespace heckecell
