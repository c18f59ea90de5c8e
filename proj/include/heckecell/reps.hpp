#pragma once

// Matrix representations of H over K. Entries are stored as Laurent
// numerators over a common denominator that factors over a fixed per-rep
// list of normalized polynomials, so products stay cheap and exact.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heckecell/hecke.hpp"
#include "heckecell/matrix.hpp"

namespace heckecell {

class FactorBase {
 public:
  FactorBase() = default;

  // dens must be normalized (storage-minimal term equal to 1).
  static std::shared_ptr<const FactorBase> build(const std::vector<LaurentPoly>& dens) {
    auto base = std::make_shared<FactorBase>();
    for (const auto& d : dens) base->absorb(d);
    base->refine();
    return base;
  }

  const std::vector<LaurentPoly>& factors() const { return f_; }
  int size() const { return static_cast<int>(f_.size()); }

  // Exponents e with d = prod f_i^{e_i}; nullopt when d does not factor.
  std::optional<std::vector<int>> express(LaurentPoly d) const {
    std::vector<int> e(f_.size(), 0);
    for (std::size_t i = 0; i < f_.size(); ++i)
      while (!d.is_constant()) {
        auto q = d.try_divide(f_[i]);
        if (!q) break;
        d = std::move(*q);
        ++e[i];
      }
    if (!d.is_constant() || !d.constant_coefficient().is_one()) return std::nullopt;
    return e;
  }

 private:
  void absorb(LaurentPoly d) {
    for (const auto& f : f_)
      for (;;) {
        if (d.is_constant()) break;
        auto q = d.try_divide(f);
        if (!q) break;
        d = std::move(*q);
      }
    if (!d.is_constant()) f_.push_back(std::move(d));
  }

  // Split factors that divide one another until no factor divides another.
  void refine() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < f_.size() && !changed; ++i)
        for (std::size_t j = 0; j < f_.size() && !changed; ++j) {
          if (i == j) continue;
          if (f_[i] == f_[j]) {
            f_.erase(f_.begin() + j);
            changed = true;
            break;
          }
          if (f_[j].size() <= f_[i].size()) continue;
          if (auto q = f_[j].try_divide(f_[i])) {
            if (q->is_constant())
              f_.erase(f_.begin() + j);
            else
              f_[j] = std::move(*q);
            changed = true;
          }
        }
    }
  }

  std::vector<LaurentPoly> f_;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::shared_ptr<const FactorBase> base, int dim, int gamma_rank)
      : base_(std::move(base)), dim_(dim), rank_(gamma_rank), num_(static_cast<std::size_t>(dim) * dim),
        exps_(base_->size(), 0) {}

  static RatMatrix identity(std::shared_ptr<const FactorBase> base, int dim, int gamma_rank) {
    RatMatrix m(std::move(base), dim, gamma_rank);
    for (int i = 0; i < dim; ++i) m.num_[i * dim + i] = LaurentPoly::one(gamma_rank);
    return m;
  }

  static RatMatrix from_kmatrix(std::shared_ptr<const FactorBase> base, const KMatrix& k, int gamma_rank) {
    const int d = k.rows;
    RatMatrix m(base, d, gamma_rank);
    std::vector<std::vector<int>> entry_exps(k.a.size());
    for (std::size_t i = 0; i < k.a.size(); ++i) {
      if (!k.a[i].has_den()) {
        entry_exps[i].assign(base->size(), 0);
        continue;
      }
      auto e = base->express(k.a[i].den());
      if (!e) throw InternalError("denominator does not factor over the factor base");
      entry_exps[i] = *e;
      for (int j = 0; j < base->size(); ++j) m.exps_[j] = std::max(m.exps_[j], (*e)[j]);
    }
    for (std::size_t i = 0; i < k.a.size(); ++i) {
      LaurentPoly n = k.a[i].num();
      if (n.is_zero()) continue;
      for (int j = 0; j < base->size(); ++j)
        for (int t = entry_exps[i][j]; t < m.exps_[j]; ++t) n *= base->factors()[j];
      m.num_[i] = std::move(n);
    }
    m.reduce();
    return m;
  }

  int dim() const { return dim_; }
  int gamma_rank() const { return rank_; }
  const std::shared_ptr<const FactorBase>& base() const { return base_; }
  const LaurentPoly& num(int i, int j) const { return num_[static_cast<std::size_t>(i) * dim_ + j]; }
  const std::vector<int>& den_exponents() const { return exps_; }
  bool has_den() const {
    for (int e : exps_)
      if (e) return true;
    return false;
  }

  LaurentPoly den() const {
    LaurentPoly d = LaurentPoly::one(rank_);
    for (int j = 0; j < base_->size(); ++j)
      for (int t = 0; t < exps_[j]; ++t) d *= base_->factors()[j];
    return d;
  }

  KScalar entry(int i, int j) const {
    if (!has_den()) return KScalar(num(i, j));
    return KScalar(num(i, j), den());
  }

  // Numerator of the trace over den().
  LaurentPoly trace_num() const {
    LaurentPoly t;
    for (int i = 0; i < dim_; ++i) t += num(i, i);
    return t;
  }

  KMatrix to_kmatrix() const {
    KMatrix k(dim_, dim_);
    LaurentPoly d = den();
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) k(i, j) = has_den() ? KScalar(num(i, j), d) : KScalar(num(i, j));
    return k;
  }

  RatMatrix transpose() const {
    RatMatrix t = *this;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) t.num_[i * dim_ + j] = num(j, i);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix r(a.base_, a.dim_, a.rank_);
    const int d = a.dim_;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        const LaurentPoly& aik = a.num(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          const LaurentPoly& bkj = b.num(k, j);
          if (!bkj.is_zero()) r.num_[i * d + j] += aik * bkj;
        }
      }
    for (std::size_t j = 0; j < r.exps_.size(); ++j) r.exps_[j] = a.exps_[j] + b.exps_[j];
    r.reduce();
    return r;
  }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) { return combine(a, b, false); }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return combine(a, b, true); }

  RatMatrix scaled(const LaurentPoly& c) const {
    RatMatrix r = *this;
    for (auto& x : r.num_)
      if (!x.is_zero()) x = c * x;
    r.reduce();
    return r;
  }

  bool is_zero() const {
    for (const auto& x : num_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.exps_ == b.exps_) return a.num_ == b.num_;
    LaurentPoly da = a.den(), db = b.den();
    for (std::size_t i = 0; i < a.num_.size(); ++i)
      if (!(a.num_[i] * db == b.num_[i] * da)) return false;
    return true;
  }

  // Cancels common factors shared by the whole numerator and the denominator.
  void reduce() {
    for (int j = 0; j < base_->size(); ++j) {
      while (exps_[j] > 0) {
        std::vector<LaurentPoly> q(num_.size());
        bool ok = true;
        for (std::size_t i = 0; i < num_.size() && ok; ++i) {
          if (num_[i].is_zero()) continue;
          auto r = num_[i].try_divide(base_->factors()[j]);
          if (!r)
            ok = false;
          else
            q[i] = std::move(*r);
        }
        if (!ok) break;
        num_ = std::move(q);
        --exps_[j];
      }
    }
  }

 private:
  static RatMatrix combine(const RatMatrix& a, const RatMatrix& b, bool negate) {
    RatMatrix r(a.base_, a.dim_, a.rank_);
    LaurentPoly fa = LaurentPoly::one(a.rank_), fb = LaurentPoly::one(a.rank_);
    for (int j = 0; j < a.base_->size(); ++j) {
      int e = std::max(a.exps_[j], b.exps_[j]);
      r.exps_[j] = e;
      for (int t = a.exps_[j]; t < e; ++t) fa *= a.base_->factors()[j];
      for (int t = b.exps_[j]; t < e; ++t) fb *= a.base_->factors()[j];
    }
    const bool fa_one = fa.is_constant(), fb_one = fb.is_constant();
    for (std::size_t i = 0; i < r.num_.size(); ++i) {
      LaurentPoly x = fa_one ? a.num_[i] : fa * a.num_[i];
      LaurentPoly y = fb_one ? b.num_[i] : fb * b.num_[i];
      r.num_[i] = negate ? x - y : x + y;
    }
    r.reduce();
    return r;
  }

  std::shared_ptr<const FactorBase> base_;
  int dim_ = 0;
  int rank_ = 1;
  std::vector<LaurentPoly> num_;
  std::vector<int> exps_;
};

// Sums of num / prod f_i^{e_i} over one factor base, kept over the least
// common denominator.
class FactoredSum {
 public:
  FactoredSum(std::shared_ptr<const FactorBase> base, int gamma_rank)
      : base_(std::move(base)), rank_(gamma_rank), exps_(base_->size(), 0) {}

  void add(const LaurentPoly& num, const std::vector<int>& exps) {
    if (num.is_zero()) return;
    LaurentPoly lift = LaurentPoly::one(rank_), n = num;
    for (int j = 0; j < base_->size(); ++j) {
      for (int t = exps_[j]; t < exps[j]; ++t) lift *= base_->factors()[j];
      for (int t = exps[j]; t < exps_[j]; ++t) n *= base_->factors()[j];
      exps_[j] = std::max(exps_[j], exps[j]);
    }
    if (!lift.is_constant()) num_ *= lift;
    num_ += n;
  }

  KScalar value() const {
    LaurentPoly d = LaurentPoly::one(rank_);
    for (int j = 0; j < base_->size(); ++j)
      for (int t = 0; t < exps_[j]; ++t) d *= base_->factors()[j];
    if (d.is_constant()) return KScalar(num_);
    return KScalar(num_, d);
  }

 private:
  std::shared_ptr<const FactorBase> base_;
  int rank_;
  std::vector<int> exps_;
  LaurentPoly num_;
};

// A representation given by its generator matrices.
struct MatrixRep {
  std::string label;
  std::string kind;  // "onedim", "dihedral", "seminormal", "wgraph", "explicit", "balanced", ...
  int dim = 0;
  int gamma_rank = 1;
  std::shared_ptr<const FactorBase> base;
  std::vector<RatMatrix> gens;
  // A known invariant form (e.g. the closed form for dihedral reps), if any.
  std::optional<LMatrix> known_gram;
};

inline MatrixRep make_rep(std::string label, std::string kind, const std::vector<KMatrix>& gens, int gamma_rank) {
  MatrixRep rep;
  rep.label = std::move(label);
  rep.kind = std::move(kind);
  rep.gamma_rank = gamma_rank;
  if (gens.empty()) throw InputError("representation has no generators");
  rep.dim = gens[0].rows;
  std::vector<LaurentPoly> dens;
  for (const auto& g : gens) {
    if (g.rows != rep.dim || g.cols != rep.dim) throw InputError("generator matrices have inconsistent sizes");
    for (const auto& x : g.a)
      if (x.has_den()) dens.push_back(x.den());
  }
  rep.base = FactorBase::build(dens);
  for (const auto& g : gens) rep.gens.push_back(RatMatrix::from_kmatrix(rep.base, g, gamma_rank));
  return rep;
}

struct RelationReport {
  bool ok = true;
  std::string message;
};

// Quadratic relation per generator and braid relation per pair.
inline RelationReport validate_relations(const MatrixRep& rep, const HeckeAlgebra& H) {
  const CoxeterGroup& g = H.group();
  if (static_cast<int>(rep.gens.size()) != g.rank()) return {false, "wrong number of generator matrices"};
  RatMatrix id = RatMatrix::identity(rep.base, rep.dim, rep.gamma_rank);
  for (int s = 0; s < g.rank(); ++s) {
    const RatMatrix& t = rep.gens[s];
    if (!(t * t == id + t.scaled(H.v_diff(s))))
      return {false, "quadratic relation violation: " + g.generator_names()[s]};
  }
  for (int s = 0; s < g.rank(); ++s)
    for (int t = s + 1; t < g.rank(); ++t) {
      RatMatrix a = id, b = id;
      for (int k = 0; k < g.m(s, t); ++k) {
        a = a * rep.gens[k % 2 == 0 ? s : t];
        b = b * rep.gens[k % 2 == 0 ? t : s];
      }
      if (!(a == b))
        return {false, "braid violation: " + g.generator_names()[s] + "," + g.generator_names()[t]};
    }
  return {};
}

// A representation together with rho(T_w) for every w.
struct EvaluatedRep {
  MatrixRep rep;
  std::vector<RatMatrix> words;

  const RatMatrix& operator[](int w) const { return words[w]; }
  int dim() const { return rep.dim; }
};

inline EvaluatedRep evaluate(MatrixRep rep, const HeckeAlgebra& H, const Parallel& par = Parallel()) {
  const CoxeterGroup& g = H.group();
  EvaluatedRep e{std::move(rep), {}};
  e.words.resize(g.size());
  e.words[0] = RatMatrix::identity(e.rep.base, e.rep.dim, e.rep.gamma_rank);
  // Strata by length keep every dependency in an earlier stratum.
  std::vector<std::vector<int>> strata(g.max_length() + 1);
  for (int w = 1; w < g.size(); ++w) strata[g.length(w)].push_back(w);
  for (const auto& st : strata)
    par.for_each(static_cast<int>(st.size()), [&](int i) {
      int w = st[i];
      int s = g.word(w)[0];
      e.words[w] = e.rep.gens[s] * e.words[g.lmul(s, w)];
    });
  return e;
}

}  // namespace heckecell
