#pragma once

// The ring J~ on the basis {t_w}: structure constants from leading matrix
// coefficients, the identity, the trace, L-blocks and the ring checks.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "heckecell/builtin_reps.hpp"
#include "heckecell/kl.hpp"
#include "heckecell/rep_analysis.hpp"

namespace heckecell {

// Balanced reps, Schur data and leading tensors for a list of irreducibles.
struct LeadingFamily {
  std::vector<MatrixRep> reps;  // balanced
  std::vector<SchurData> schur;
  std::vector<LeadingTensor> tensors;
  std::vector<bool> rebalanced;
};

inline LeadingFamily leading_family(const HeckeAlgebra& H, const MonomialOrder& ord,
                                    const std::vector<MatrixRep>& reps, const Parallel& par = Parallel()) {
  LeadingFamily fam;
  for (const auto& rep : reps) {
    EvaluatedRep e = evaluate(rep, H, par);
    GramMatrix gm = gram_average(e, H, ord);
    bool ok = is_balanced(e, gm, H, ord, 0).balanced;
    if (!ok) {
      e = evaluate(balance(e, gm, ord), H, par);
      if (!is_balanced(e, gram_average(e, H, ord), H, ord, 0).balanced)
        throw InternalError("balancing failed for " + rep.label);
    }
    SchurData sd = schur_element(e, H, ord, par);
    fam.tensors.push_back(leading_coeffs(e, sd, H, ord, par));
    fam.schur.push_back(sd);
    fam.reps.push_back(e.rep);
    fam.rebalanced.push_back(!ok);
  }
  return fam;
}

// Elements of J~ as sorted (w, coefficient) pairs without zeros.
struct JElem {
  std::map<int, FieldScalar> c;

  static JElem basis(int w) {
    JElem e;
    e.c[w] = FieldScalar(1);
    return e;
  }
  void add(int w, const FieldScalar& x) {
    if (x.is_zero()) return;
    auto [it, fresh] = c.emplace(w, x);
    if (!fresh) {
      it->second += x;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  JElem& operator+=(const JElem& o) {
    for (const auto& [w, x] : o.c) add(w, x);
    return *this;
  }
  JElem scaled(const FieldScalar& s) const {
    JElem r;
    if (s.is_zero()) return r;
    for (const auto& [w, x] : c) r.c[w] = x * s;
    return r;
  }
  bool is_zero() const { return c.empty(); }
  friend bool operator==(const JElem& a, const JElem& b) { return a.c == b.c; }
};

struct LBlocks {
  std::vector<int> block_of;      // per w; -1 when no tensor touches w
  std::vector<int> block_of_rep;  // per lambda
  std::vector<std::vector<int>> blocks;  // sorted, ordered by smallest element
};

// Components of the graph joining w and w' whenever some lambda has nonzero
// leading coefficients at both.
inline LBlocks l_blocks(const std::vector<LeadingTensor>& ts, const CoxeterGroup& g) {
  const int n = g.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> touched(n, 0);
  std::vector<int> anchor(ts.size(), -1);
  for (std::size_t l = 0; l < ts.size(); ++l)
    for (int w = 0; w < n; ++w) {
      const bool nz = !ts[l].c[w].is_zero();
      if (nz != !ts[l].c[g.inverse(w)].is_zero())
        throw InternalError("leading coefficients not symmetric under inversion for " + ts[l].label);
      if (!nz) continue;
      touched[w] = 1;
      if (anchor[l] < 0)
        anchor[l] = w;
      else
        parent[find(w)] = find(anchor[l]);
    }
  LBlocks b;
  b.block_of.assign(n, -1);
  std::map<int, int> id;
  for (int w = 0; w < n; ++w) {
    if (!touched[w]) continue;
    int r = find(w);
    auto it = id.find(r);
    if (it == id.end()) {
      it = id.emplace(r, static_cast<int>(b.blocks.size())).first;
      b.blocks.emplace_back();
    }
    b.block_of[w] = it->second;
    b.blocks[it->second].push_back(w);
  }
  for (std::size_t l = 0; l < ts.size(); ++l) {
    if (anchor[l] < 0) throw InternalError("representation " + ts[l].label + " has no nonzero leading coefficient");
    int blk = b.block_of[anchor[l]];
    for (int w = 0; w < n; ++w)
      if (!ts[l].c[w].is_zero() && b.block_of[w] != blk)
        throw InternalError("representation " + ts[l].label + " meets two L-blocks");
    b.block_of_rep.push_back(blk);
  }
  return b;
}

class GammaTable {
 public:
  GammaTable(const CoxeterGroup& g, std::vector<LeadingTensor> ts, const Parallel& par = Parallel())
      : g_(&g), n_(g.size()), ts_(std::move(ts)), rows_(static_cast<std::size_t>(n_) * n_) {
    blocks_ = l_blocks(ts_, g);
    for (const auto& t : ts_) finv_.push_back(t.f.inverse());
    build(par);
    n_tilde_.assign(n_, FieldScalar());
    for (int w = 0; w < n_; ++w) {
      FieldScalar s;
      int wi = g.inverse(w);
      for (std::size_t l = 0; l < ts_.size(); ++l) {
        FieldScalar tr;
        for (int i = 0; i < ts_[l].dim; ++i) tr += ts_[l].c[wi](i, i);
        if (!tr.is_zero()) s += tr * finv_[l];
      }
      n_tilde_[w] = s;
      if (!s.is_zero()) d_set_.push_back(w);
    }
  }

  const CoxeterGroup& group() const { return *g_; }
  int size() const { return n_; }
  const std::vector<LeadingTensor>& tensors() const { return ts_; }
  const LBlocks& blocks() const { return blocks_; }

  FieldScalar gamma(int x, int y, int z) const {
    const auto& row = rows_[static_cast<std::size_t>(x) * n_ + y];
    auto it = std::lower_bound(row.begin(), row.end(), z, [](const auto& p, int k) { return p.first < k; });
    if (it != row.end() && it->first == z) return it->second;
    return FieldScalar();
  }
  // Nonzero gamma~_{x,y,z} as (z, value), sorted by z.
  const std::vector<std::pair<int, FieldScalar>>& row(int x, int y) const {
    return rows_[static_cast<std::size_t>(x) * n_ + y];
  }
  const FieldScalar& n_tilde(int w) const { return n_tilde_[w]; }
  const std::vector<int>& d_set() const { return d_set_; }

  // Fault injection for the checks.
  void set_gamma(int x, int y, int z, const FieldScalar& v) {
    auto& row = rows_[static_cast<std::size_t>(x) * n_ + y];
    auto it = std::lower_bound(row.begin(), row.end(), z, [](const auto& p, int k) { return p.first < k; });
    if (it != row.end() && it->first == z) {
      if (v.is_zero())
        row.erase(it);
      else
        it->second = v;
    } else if (!v.is_zero()) {
      row.insert(it, {z, v});
    }
  }

  // t_x t_y = sum_z gamma~_{x,y,z^-1} t_z.
  JElem multiply_basis(int x, int y) const {
    JElem r;
    for (const auto& [z, v] : row(x, y)) r.c[g_->inverse(z)] = v;
    return r;
  }

  JElem multiply(const JElem& a, const JElem& b) const {
    JElem r;
    for (const auto& [x, ax] : a.c)
      for (const auto& [y, by] : b.c) {
        FieldScalar s = ax * by;
        for (const auto& [z, v] : row(x, y)) r.add(g_->inverse(z), s * v);
      }
    return r;
  }

  JElem identity() const {
    JElem e;
    for (int w : d_set_) e.c[w] = n_tilde_[w];
    return e;
  }

  // tau(t_w) = n~_{w^-1}.
  FieldScalar trace_tau(const JElem& a) const {
    FieldScalar s;
    for (const auto& [w, x] : a.c) s += x * n_tilde_[g_->inverse(w)];
    return s;
  }

  const FMatrix& rho_bar(int lambda, int w) const { return ts_[lambda].c[w]; }

  friend bool operator==(const GammaTable& a, const GammaTable& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_ && a.n_tilde_ == b.n_tilde_;
  }

 private:
  // gamma~_{x,y,z} = sum_lambda f^-1 tr(c_x c_y c_z); only x,y,z in the
  // lambda's block contribute.
  void build(const Parallel& par) {
    std::vector<std::vector<int>> support(ts_.size());
    for (std::size_t l = 0; l < ts_.size(); ++l)
      for (int w = 0; w < n_; ++w)
        if (!ts_[l].c[w].is_zero()) support[l].push_back(w);
    par.for_each(n_, [&](int x) {
      std::vector<FieldScalar> acc(n_);
      for (int y = 0; y < n_; ++y) {
        std::vector<int> hit;
        for (std::size_t l = 0; l < ts_.size(); ++l) {
          const FMatrix& cx = ts_[l].c[x];
          const FMatrix& cy = ts_[l].c[y];
          if (cx.is_zero() || cy.is_zero()) continue;
          FMatrix p = cx * cy;
          if (p.is_zero()) continue;
          const int d = ts_[l].dim;
          for (int z : support[l]) {
            const FMatrix& cz = ts_[l].c[z];
            FieldScalar tr;
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < d; ++j)
                if (!p(i, j).is_zero() && !cz(j, i).is_zero()) tr += p(i, j) * cz(j, i);
            if (tr.is_zero()) continue;
            if (acc[z].is_zero()) hit.push_back(z);
            acc[z] += tr * finv_[l];
          }
        }
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        auto& row = rows_[static_cast<std::size_t>(x) * n_ + y];
        for (int z : hit) {
          if (!acc[z].is_zero()) row.push_back({z, acc[z]});
          acc[z] = FieldScalar();
        }
      }
    });
  }

  const CoxeterGroup* g_;
  int n_;
  std::vector<LeadingTensor> ts_;
  LBlocks blocks_;
  std::vector<FieldScalar> finv_;
  std::vector<std::vector<std::pair<int, FieldScalar>>> rows_;
  std::vector<FieldScalar> n_tilde_;
  std::vector<int> d_set_;
};

struct CheckResult {
  std::string name;
  long checked = 0;
  long violations = 0;
  std::vector<std::string> samples;
  bool ok() const { return violations == 0; }
};

struct RingReport {
  std::vector<CheckResult> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

class CheckRecorder {
 public:
  explicit CheckRecorder(std::string name) { r_.name = std::move(name); }
  void pass() {
    std::lock_guard<std::mutex> lock(mu_);
    ++r_.checked;
  }
  void fail(const std::string& what) {
    std::lock_guard<std::mutex> lock(mu_);
    ++r_.checked;
    ++r_.violations;
    // Keep the ten smallest messages so samples do not depend on scheduling.
    auto& v = r_.samples;
    v.insert(std::upper_bound(v.begin(), v.end(), what), what);
    if (v.size() > 10) v.pop_back();
  }
  void check(bool ok, const std::function<std::string()>& what) { ok ? pass() : fail(what()); }
  CheckResult take() { return std::move(r_); }

 private:
  std::mutex mu_;
  CheckResult r_;
};

}  // namespace detail

struct RingCheckOptions {
  int exhaustive_limit = 16;  // associativity exhaustive up to this |W|
  long random_triples = 10000;
  std::uint64_t seed = 1;
};

inline RingReport verify_ring(const GammaTable& T, const RingCheckOptions& opt = {}, const Parallel& par = Parallel()) {
  const CoxeterGroup& g = T.group();
  const int n = T.size();
  auto w = [&](int x) { return g.word_string(x); };
  RingReport rep;

  {
    detail::CheckRecorder rec("associativity");
    auto one = [&](int x, int y, int z) {
      JElem l = T.multiply(T.multiply_basis(x, y), JElem::basis(z));
      JElem r = T.multiply(JElem::basis(x), T.multiply_basis(y, z));
      rec.check(l == r, [&] { return "(t_" + w(x) + " t_" + w(y) + ") t_" + w(z); });
    };
    if (n <= opt.exhaustive_limit) {
      par.for_each(n, [&](int x) {
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) one(x, y, z);
      });
    } else {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<int> pick(0, n - 1);
      std::vector<std::array<int, 3>> triples(opt.random_triples);
      for (auto& t : triples) t = {pick(rng), pick(rng), pick(rng)};
      par.for_each(static_cast<int>(triples.size()), [&](int i) { one(triples[i][0], triples[i][1], triples[i][2]); });
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec("identity");
    JElem e = T.identity();
    par.for_each(n, [&](int x) {
      JElem tx = JElem::basis(x);
      rec.check(T.multiply(e, tx) == tx && T.multiply(tx, e) == tx, [&] { return "t_" + w(x); });
    });
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder cyc("cyclic symmetry");
    detail::CheckRecorder anti("anti-involution symmetry");
    par.for_each(n, [&](int x) {
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          FieldScalar v = T.gamma(x, y, z);
          cyc.check(v == T.gamma(y, z, x), [&] { return w(x) + "," + w(y) + "," + w(z); });
          anti.check(v == T.gamma(g.inverse(y), g.inverse(x), g.inverse(z)),
                     [&] { return w(x) + "," + w(y) + "," + w(z); });
        }
    });
    rep.checks.push_back(cyc.take());
    rep.checks.push_back(anti.take());
  }
  {
    // sum_w gamma~_{x^-1,y,w} n~_w = delta_xy and tau(t_x t_{y^-1}) = delta_xy.
    detail::CheckRecorder dual("n-tilde duality");
    detail::CheckRecorder tr("trace dual basis");
    par.for_each(n, [&](int x) {
      for (int y = 0; y < n; ++y) {
        FieldScalar s;
        for (const auto& [z, v] : T.row(g.inverse(x), y)) s += v * T.n_tilde(z);
        FieldScalar want = x == y ? FieldScalar(1) : FieldScalar();
        dual.check(s == want, [&] { return w(x) + "," + w(y); });
        FieldScalar t = T.trace_tau(T.multiply_basis(x, g.inverse(y)));
        tr.check(t == want, [&] { return w(x) + "," + w(y); });
      }
    });
    rep.checks.push_back(dual.take());
    rep.checks.push_back(tr.take());
  }
  {
    // t_x t_u and t_u t_x stay inside the block of u.
    detail::CheckRecorder rec("block ideals");
    const LBlocks& B = T.blocks();
    par.for_each(n, [&](int x) {
      for (int u = 0; u < n; ++u) {
        bool ok = true;
        for (const auto& [z, v] : T.row(x, u)) ok = ok && B.block_of[g.inverse(z)] == B.block_of[u];
        for (const auto& [z, v] : T.row(u, x)) ok = ok && B.block_of[g.inverse(z)] == B.block_of[u];
        rec.check(ok, [&] { return "t_" + w(x) + ", t_" + w(u); });
      }
    });
    rep.checks.push_back(rec.take());
  }
  return rep;
}

// rho~(t_x t_y) = rho~(t_x) rho~(t_y) for every lambda.
inline CheckResult verify_rho_bar(const GammaTable& T, int exhaustive_limit = 20, long samples = 2000,
                                  std::uint64_t seed = 1, const Parallel& par = Parallel()) {
  const CoxeterGroup& g = T.group();
  const int n = T.size();
  detail::CheckRecorder rec("rho-bar homomorphism");
  auto one = [&](int x, int y) {
    JElem p = T.multiply_basis(x, y);
    for (std::size_t l = 0; l < T.tensors().size(); ++l) {
      const int d = T.tensors()[l].dim;
      FMatrix lhs(d, d);
      for (const auto& [z, v] : p.c) {
        const FMatrix& cz = T.rho_bar(static_cast<int>(l), z);
        for (std::size_t k = 0; k < cz.a.size(); ++k)
          if (!cz.a[k].is_zero()) lhs.a[k] += v * cz.a[k];
      }
      FMatrix rhs = T.rho_bar(static_cast<int>(l), x) * T.rho_bar(static_cast<int>(l), y);
      rec.check(lhs == rhs, [&] { return T.tensors()[l].label + ": " + g.word_string(x) + "," + g.word_string(y); });
    }
  };
  if (n <= exhaustive_limit) {
    par.for_each(n, [&](int x) {
      for (int y = 0; y < n; ++y) one(x, y);
    });
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<std::pair<int, int>> pairs(samples);
    for (auto& p : pairs) p = {pick(rng), pick(rng)};
    par.for_each(static_cast<int>(pairs.size()), [&](int i) { one(pairs[i].first, pairs[i].second); });
  }
  return rec.take();
}

struct KLComparison {
  CheckResult gamma;      // gamma~ = gamma
  CheckResult a_values;   // c^{ij}_{z,lambda} != 0 implies a(z) = a_lambda
};

inline KLComparison compare_gamma_kl(const GammaTable& T, const HTable& ht, const AFunction& af,
                                     const Parallel& par = Parallel()) {
  const CoxeterGroup& g = T.group();
  const int n = T.size();
  detail::CheckRecorder gam("gamma-tilde = gamma");
  par.for_each(n, [&](int x) {
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        FieldScalar a = T.gamma(x, y, z);
        FieldScalar b = gamma_kl(ht, af, x, y, z);
        gam.check(a == b, [&] {
          return g.word_string(x) + "," + g.word_string(y) + "," + g.word_string(z) + ": " + to_text(a) + " vs " +
                 to_text(b);
        });
      }
  });
  detail::CheckRecorder av("a(z) = a_lambda");
  for (const auto& t : T.tensors())
    for (int z = 0; z < n; ++z)
      if (!t.c[z].is_zero()) av.check(af.a[z] == t.a, [&] { return t.label + " at " + g.word_string(z); });
  return {gam.take(), av.take()};
}

}  // namespace heckecell
