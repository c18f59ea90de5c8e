#pragma once

// Dense univariate polynomials over Q, coefficient i belongs to x^i.

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace heckecell {

using Rational = mpq_class;

namespace detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline QPoly scale(const QPoly& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  QPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

// Returns (quotient, remainder); b must be nonzero.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  const int db = degree(b);
  if (degree(a) < db) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    Rational c = a.back() / lead;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline QPoly derivative(const QPoly& a) {
  QPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
  trim(r);
  return r;
}

inline Rational eval(const QPoly& a, const Rational& x) {
  Rational r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
  return r;
}

inline double eval_double(const QPoly& a, double x) {
  double r = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + it->get_d();
  return r;
}

}  // namespace detail
}  // namespace heckecell
