#pragma once

// Generic Iwahori-Hecke algebra over A = F[Gamma] in the T-basis.

#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "heckecell/coxeter.hpp"
#include "heckecell/parallel.hpp"

namespace heckecell {

enum class Basis { T, Cprime, C };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::T:
      return "T";
    case Basis::Cprime:
      return "Cprime";
    case Basis::C:
      return "C";
  }
  return "?";
}

// Dense coefficient vector indexed by group element ids; zero entries are absent terms.
struct HeckeElem {
  Basis basis = Basis::T;
  std::vector<LaurentPoly> c;

  HeckeElem() = default;
  HeckeElem(Basis b, int n) : basis(b), c(n) {}

  int size() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
      if (!c[i].is_zero()) s.push_back(i);
    return s;
  }
  HeckeElem& operator+=(const HeckeElem& o) {
    for (int i = 0; i < size(); ++i)
      if (!o.c[i].is_zero()) c[i] += o.c[i];
    return *this;
  }
  HeckeElem& operator-=(const HeckeElem& o) {
    for (int i = 0; i < size(); ++i)
      if (!o.c[i].is_zero()) c[i] -= o.c[i];
    return *this;
  }
  friend HeckeElem operator+(HeckeElem a, const HeckeElem& b) { return a += b; }
  friend HeckeElem operator-(HeckeElem a, const HeckeElem& b) { return a -= b; }
  friend HeckeElem operator*(const LaurentPoly& k, HeckeElem a) {
    for (auto& x : a.c)
      if (!x.is_zero()) x = k * x;
    return a;
  }
  friend bool operator==(const HeckeElem& a, const HeckeElem& b) { return a.basis == b.basis && a.c == b.c; }
};

// Sparse (id, coefficient) list.
using SparseVec = std::vector<std::pair<int, LaurentPoly>>;

inline SparseVec to_sparse(const HeckeElem& h) {
  SparseVec out;
  for (int i = 0; i < h.size(); ++i)
    if (!h.c[i].is_zero()) out.emplace_back(i, h.c[i]);
  return out;
}

class HeckeAlgebra {
 public:
  HeckeAlgebra(const CoxeterGroup& g, WeightFunction L) : g_(&g), L_(std::move(L)) {
    if (static_cast<int>(L_.values.size()) != g.rank()) throw InputError("weight function has wrong number of values");
    for (int s = 0; s < g.rank(); ++s) {
      v_.push_back(LaurentPoly::monomial(L_.values[s]));
      vinv_.push_back(LaurentPoly::monomial(-L_.values[s]));
      vdiff_.push_back(v_.back() - vinv_.back());
    }
  }

  const CoxeterGroup& group() const { return *g_; }
  const WeightFunction& weights() const { return L_; }
  int gamma_rank() const { return L_.rank; }
  int size() const { return g_->size(); }
  const LaurentPoly& v(int s) const { return v_[s]; }
  const LaurentPoly& v_inv(int s) const { return vinv_[s]; }
  const LaurentPoly& v_diff(int s) const { return vdiff_[s]; }
  LaurentPoly one() const { return LaurentPoly::one(L_.rank); }

  HeckeElem zero(Basis b = Basis::T) const { return HeckeElem(b, size()); }
  HeckeElem basis_element(int w, Basis b = Basis::T) const {
    HeckeElem h(b, size());
    h.c[w] = one();
    return h;
  }

  // T_s * X.
  HeckeElem left_mul_T(int s, const HeckeElem& x) const {
    HeckeElem y(Basis::T, size());
    for (int w = 0; w < size(); ++w) {
      if (x.c[w].is_zero()) continue;
      int sw = g_->lmul(s, w);
      y.c[sw] += x.c[w];
      if (g_->length(sw) < g_->length(w)) y.c[w] += vdiff_[s] * x.c[w];
    }
    return y;
  }

  // X * T_s.
  HeckeElem right_mul_T(const HeckeElem& x, int s) const {
    HeckeElem y(Basis::T, size());
    for (int w = 0; w < size(); ++w) {
      if (x.c[w].is_zero()) continue;
      int ws = g_->rmul(w, s);
      y.c[ws] += x.c[w];
      if (g_->length(ws) < g_->length(w)) y.c[w] += vdiff_[s] * x.c[w];
    }
    return y;
  }

  // T_w * X for every w, built by left multiplication along ShortLex words.
  std::vector<HeckeElem> all_left_multiples(const HeckeElem& x) const {
    std::vector<HeckeElem> out(size());
    out[0] = x;
    for (int w = 1; w < size(); ++w) {
      int s = g_->word(w)[0];
      out[w] = left_mul_T(s, out[g_->lmul(s, w)]);
    }
    return out;
  }

  HeckeElem t_multiply(const HeckeElem& a, const HeckeElem& b) const {
    HeckeElem out(Basis::T, size());
    for (int x = 0; x < size(); ++x) {
      if (a.c[x].is_zero()) continue;
      HeckeElem tb = b;
      const auto& wd = g_->word(x);
      for (auto it = wd.rbegin(); it != wd.rend(); ++it) tb = left_mul_T(*it, tb);
      out += a.c[x] * tb;
    }
    return out;
  }

  // bar(T_w) = T_{s1}^{-1} ... T_{sk}^{-1} for w = s1...sk.
  const std::vector<HeckeElem>& bar_table() const {
    std::lock_guard<std::mutex> lock(bar_mu_);
    if (bar_T_.empty()) {
      std::vector<HeckeElem> tab(size());
      tab[0] = basis_element(0);
      for (int w = 1; w < size(); ++w) {
        int s = g_->word(w)[0];
        const HeckeElem& rest = tab[g_->lmul(s, w)];
        tab[w] = left_mul_T(s, rest) - vdiff_[s] * rest;
      }
      bar_T_ = std::move(tab);
    }
    return bar_T_;
  }

  HeckeElem bar(const HeckeElem& h) const {
    const auto& tab = bar_table();
    HeckeElem out(Basis::T, size());
    for (int w = 0; w < size(); ++w)
      if (!h.c[w].is_zero()) out += h.c[w].bar() * tab[w];
    return out;
  }

  // Anti-involution T_w -> T_{w^{-1}}.
  HeckeElem star(const HeckeElem& h) const {
    HeckeElem out(h.basis, size());
    for (int w = 0; w < size(); ++w) out.c[g_->inverse(w)] = h.c[w];
    return out;
  }

 private:
  const CoxeterGroup* g_;
  WeightFunction L_;
  std::vector<LaurentPoly> v_, vinv_, vdiff_;
  mutable std::mutex bar_mu_;
  mutable std::vector<HeckeElem> bar_T_;
};

}  // namespace heckecell
