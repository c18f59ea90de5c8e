#pragma once

// Kazhdan-Lusztig bases C' and C, structure constants h_{x,y,z}, the
// a-function, gamma from the KL side, and the LR preorder with its cells.

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>

#include "heckecell/hecke.hpp"

namespace heckecell {

class KLBasis {
 public:
  KLBasis(const HeckeAlgebra& H, MonomialOrder ord, const Parallel& par = Parallel()) : H_(&H), ord_(std::move(ord)) {
    if (ord_.rank() != H.gamma_rank()) throw InputError("monomial order rank differs from weight rank");
    build(par);
  }

  const HeckeAlgebra& algebra() const { return *H_; }
  const CoxeterGroup& group() const { return H_->group(); }
  const MonomialOrder& order() const { return ord_; }
  int size() const { return H_->size(); }

  // T-basis expansions.
  const HeckeElem& cprime(int w) const { return cprime_[w]; }
  const HeckeElem& c(int w) const { return c_[w]; }
  const SparseVec& c_sparse(int w) const { return c_sparse_[w]; }
  const LaurentPoly& p(int y, int w) const { return cprime_[w].c[y]; }

  int sign(int w) const { return group().length(w) % 2 == 0 ? 1 : -1; }

  // T-basis -> C-basis by triangular elimination (C_z has (-1)^{l(z)} at T_z).
  HeckeElem to_c_basis(HeckeElem x) const {
    HeckeElem out(Basis::C, size());
    for (int z = size() - 1; z >= 0; --z) {
      if (x.c[z].is_zero()) continue;
      LaurentPoly h = sign(z) > 0 ? x.c[z] : -x.c[z];
      for (const auto& [y, py] : c_sparse_[z]) x.c[y] -= h * py;
      out.c[z] = std::move(h);
    }
    return out;
  }

  HeckeElem from_c_basis(const HeckeElem& x) const {
    HeckeElem out(Basis::T, size());
    for (int z = 0; z < size(); ++z) {
      if (x.c[z].is_zero()) continue;
      for (const auto& [y, py] : c_sparse_[z]) out.c[y] += x.c[z] * py;
    }
    return out;
  }

 private:
  void build(const Parallel& par) {
    const CoxeterGroup& g = group();
    const int n = size();
    cprime_.assign(n, HeckeElem());
    cprime_[0] = H_->basis_element(0);
    std::vector<std::vector<int>> strata(g.max_length() + 1);
    for (int w = 0; w < n; ++w) strata[g.length(w)].push_back(w);
    for (const auto& stratum : strata) {
      par.for_each(static_cast<int>(stratum.size()), [&](int i) {
        int w = stratum[i];
        if (w != 0) cprime_[w] = compute_cprime(w);
      });
    }
    c_.resize(n);
    c_sparse_.resize(n);
    for (int w = 0; w < n; ++w) {
      HeckeElem cw(Basis::T, n);
      for (int y = 0; y < n; ++y) {
        const LaurentPoly& q = cprime_[w].c[y];
        if (q.is_zero()) continue;
        cw.c[y] = g.length(y) % 2 == 0 ? q.bar() : -q.bar();
      }
      c_sparse_[w] = to_sparse(cw);
      c_[w] = std::move(cw);
    }
  }

  HeckeElem compute_cprime(int w) const {
    const CoxeterGroup& g = group();
    int s = g.word(w)[0];
    int v = g.lmul(s, w);
    HeckeElem x = H_->left_mul_T(s, cprime_[v]) + H_->v_inv(s) * cprime_[v];
    if (g.length(w) == 1) return x;
    for (int y = w - 1; y >= 0; --y) {
      if (x.c[y].is_zero()) continue;
      LaurentPoly m = x.c[y].filtered(ord_, false, true, true);
      if (m.is_zero()) continue;
      LaurentPoly pos = m.filtered(ord_, false, false, true);
      LaurentPoly sym = m + pos.bar();
      for (int z = 0; z <= y; ++z)
        if (!cprime_[y].c[z].is_zero()) x.c[z] -= sym * cprime_[y].c[z];
    }
    if (!(x.c[w] == H_->one())) throw InternalError("KL correction failed");
    for (int y = 0; y < w; ++y)
      for (const auto& t : x.c[y].terms())
        if (ord_.sign(t.exp) >= 0) throw InternalError("KL correction failed");
    x.basis = Basis::T;
    return x;
  }

  const HeckeAlgebra* H_;
  MonomialOrder ord_;
  std::vector<HeckeElem> cprime_, c_;
  std::vector<SparseVec> c_sparse_;
};

// h_{x,y,z}: C_x C_y = sum_z h_{x,y,z} C_z. Columns (fixed y) are computed on
// demand and cached; fill_all() materializes everything.
class HTable {
 public:
  explicit HTable(const KLBasis& kl) : kl_(&kl), n_(kl.size()), rows_(static_cast<std::size_t>(n_) * n_),
                                      done_(n_), mu_(std::make_unique<std::mutex[]>(n_)) {
    compute_generator_products();
  }

  const KLBasis& kl() const { return *kl_; }
  int size() const { return n_; }

  void fill_all(const Parallel& par) {
    par.for_each(n_, [&](int y) { ensure_column(y); });
  }

  void ensure_column(int y) const {
    std::lock_guard<std::mutex> lock(mu_[y]);
    if (done_[y]) return;
    compute_column(y);
    done_[y] = 1;
  }

  // Nonzero h_{x,y,z} as (z, h) pairs, z increasing.
  const SparseVec& row(int x, int y) const {
    ensure_column(y);
    return rows_[static_cast<std::size_t>(x) * n_ + y];
  }

  LaurentPoly h(int x, int y, int z) const {
    for (const auto& [zz, p] : row(x, y))
      if (zz == z) return p;
    return LaurentPoly();
  }

  // C_s C_w and C_w C_s in the C-basis.
  const SparseVec& left_generator_product(int s, int w) const { return left_gen_[w * kl_->group().rank() + s]; }
  const SparseVec& right_generator_product(int w, int s) const { return right_gen_[w * kl_->group().rank() + s]; }

 private:
  void compute_column(int y) const {
    const HeckeAlgebra& H = kl_->algebra();
    std::vector<HeckeElem> tb = H.all_left_multiples(kl_->c(y));
    for (int x = 0; x < n_; ++x) {
      HeckeElem prod(Basis::T, n_);
      for (const auto& [w, coef] : kl_->c_sparse(x)) {
        const HeckeElem& t = tb[w];
        for (int u = 0; u < n_; ++u)
          if (!t.c[u].is_zero()) prod.c[u] += coef * t.c[u];
      }
      rows_[static_cast<std::size_t>(x) * n_ + y] = to_sparse(kl_->to_c_basis(std::move(prod)));
    }
  }

  void compute_generator_products() {
    const HeckeAlgebra& H = kl_->algebra();
    const int r = kl_->group().rank();
    left_gen_.resize(static_cast<std::size_t>(n_) * r);
    right_gen_.resize(static_cast<std::size_t>(n_) * r);
    for (int w = 0; w < n_; ++w)
      for (int s = 0; s < r; ++s) {
        // C_s = -T_s + v_s.
        const HeckeElem& cw = kl_->c(w);
        HeckeElem l = H.v(s) * cw - H.left_mul_T(s, cw);
        HeckeElem rr = H.v(s) * cw - H.right_mul_T(cw, s);
        left_gen_[w * r + s] = to_sparse(kl_->to_c_basis(std::move(l)));
        right_gen_[w * r + s] = to_sparse(kl_->to_c_basis(std::move(rr)));
      }
  }

  const KLBasis* kl_;
  int n_;
  mutable std::vector<SparseVec> rows_;
  mutable std::vector<char> done_;
  std::unique_ptr<std::mutex[]> mu_;
  std::vector<SparseVec> left_gen_, right_gen_;
};

// a(z) for all z from the full table; reports a(z) != a(z^{-1}) through `symmetric`.
struct AFunction {
  std::vector<ExponentVec> a;
  bool symmetric = true;
};

inline AFunction a_function(const HTable& ht, const Parallel& par = Parallel()) {
  const KLBasis& kl = ht.kl();
  const int n = ht.size();
  const MonomialOrder& ord = kl.order();
  // Per-x partial maxima, merged afterwards to keep the result deterministic.
  std::vector<std::vector<ExponentVec>> part(n, std::vector<ExponentVec>(n, ExponentVec(ord.rank())));
  par.for_each(n, [&](int x) {
    for (int y = 0; y < n; ++y)
      for (const auto& [z, h] : ht.row(x, y)) part[x][z] = ord.max(part[x][z], -min_exponent(h, ord));
  });
  AFunction out;
  out.a.assign(n, ExponentVec(ord.rank()));
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) out.a[z] = ord.max(out.a[z], part[x][z]);
  for (int z = 0; z < n; ++z)
    if (!(out.a[z] == out.a[kl.group().inverse(z)])) out.symmetric = false;
  return out;
}

// gamma_{x,y,z}: constant term of eps^{a(z)} h_{x,y,z^{-1}}.
inline FieldScalar gamma_kl(const HTable& ht, const AFunction& af, int x, int y, int z) {
  int zi = ht.kl().group().inverse(z);
  return ht.h(x, y, zi).coefficient(-af.a[z]);
}

struct LRPreorder {
  // le[y * n + w] != 0 iff y <=_LR w.
  std::vector<char> le;
  std::vector<int> cell_of;
  std::vector<std::vector<int>> cells;  // each sorted; ordered by smallest element
  int n = 0;

  bool leq(int y, int w) const { return le[static_cast<std::size_t>(y) * n + w] != 0; }
  bool equivalent(int y, int w) const { return cell_of[y] == cell_of[w]; }
};

inline LRPreorder lr_preorder(const HTable& ht) {
  const CoxeterGroup& g = ht.kl().group();
  const int n = ht.size();
  std::vector<std::vector<int>> below(n);
  for (int w = 0; w < n; ++w) {
    for (int s = 0; s < g.rank(); ++s) {
      for (const auto& [y, h] : ht.left_generator_product(s, w)) below[w].push_back(y);
      for (const auto& [y, h] : ht.right_generator_product(w, s)) below[w].push_back(y);
    }
    std::sort(below[w].begin(), below[w].end());
    below[w].erase(std::unique(below[w].begin(), below[w].end()), below[w].end());
  }
  LRPreorder P;
  P.n = n;
  P.le.assign(static_cast<std::size_t>(n) * n, 0);
  for (int w = 0; w < n; ++w) {
    std::vector<int> stack{w};
    P.le[static_cast<std::size_t>(w) * n + w] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int y : below[u]) {
        char& f = P.le[static_cast<std::size_t>(y) * n + w];
        if (!f) {
          f = 1;
          stack.push_back(y);
        }
      }
    }
  }
  P.cell_of.assign(n, -1);
  for (int w = 0; w < n; ++w) {
    if (P.cell_of[w] >= 0) continue;
    int id = static_cast<int>(P.cells.size());
    P.cells.emplace_back();
    for (int y = w; y < n; ++y)
      if (P.leq(y, w) && P.leq(w, y)) {
        P.cell_of[y] = id;
        P.cells.back().push_back(y);
      }
  }
  return P;
}

}  // namespace heckecell
