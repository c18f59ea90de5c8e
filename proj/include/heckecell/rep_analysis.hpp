#pragma once

// Schur elements, averaged invariant forms, balancedness, balancing and
// leading matrix coefficients of a representation.

#include <algorithm>
#include <mutex>
#include <string>
#include <vector>

#include "heckecell/reps.hpp"

namespace heckecell {

struct SchurData {
  LaurentPoly c;
  ExponentVec a;
  FieldScalar f;
};

inline KScalar trace(const RatMatrix& m) {
  if (!m.has_den()) return KScalar(m.trace_num());
  return KScalar(m.trace_num(), m.den());
}

// c = (1/d) sum_w tr(T_w) tr(T_{w^-1}); the leading term is f eps^{-2a}.
inline SchurData schur_element(const EvaluatedRep& e, const HeckeAlgebra& H, const MonomialOrder& ord,
                               const Parallel& par = Parallel()) {
  const CoxeterGroup& g = H.group();
  const int n = g.size();
  std::vector<LaurentPoly> tr(n);
  par.for_each(n, [&](int w) { tr[w] = e[w].trace_num(); });
  FactoredSum sum(e.rep.base, e.rep.gamma_rank);
  std::vector<int> exps(e.rep.base->size());
  for (int w = 0; w < n; ++w) {
    int wi = g.inverse(w);
    if (tr[w].is_zero() || tr[wi].is_zero()) continue;
    for (int j = 0; j < e.rep.base->size(); ++j)
      exps[j] = e[w].den_exponents()[j] + e[wi].den_exponents()[j];
    sum.add(tr[w] * tr[wi], exps);
  }
  auto c = sum.value().as_polynomial();
  if (!c) throw VerificationError("representation not defined over expected ring");
  if (c->is_zero()) throw VerificationError("Schur element vanishes");
  *c *= FieldScalar(Rational(1, e.dim()));
  const auto& lead = c->min_term(ord);
  std::vector<int> a(e.rep.gamma_rank);
  for (int i = 0; i < e.rep.gamma_rank; ++i) {
    if (lead.exp[i] % 2 != 0) throw VerificationError("Schur element has odd leading exponent");
    a[i] = -lead.exp[i] / 2;
  }
  if (lead.coef.sign() <= 0) throw VerificationError("Schur element has non-positive leading coefficient");
  return {*c, ExponentVec(a), lead.coef};
}

struct GramMatrix {
  KMatrix omega;
};

// Symmetric, and Omega rho(T_s) = rho(T_s)^t Omega for every generator.
inline bool gram_intertwines(const MatrixRep& rep, const KMatrix& omega) {
  if (!omega.is_symmetric()) return false;
  for (const auto& gen : rep.gens) {
    KMatrix t = gen.to_kmatrix();
    if (!(omega * t == t.transpose() * omega)) return false;
  }
  return true;
}

inline ExponentVec min_valuation(const KMatrix& m, const MonomialOrder& ord, bool& any) {
  ExponentVec best(ord.rank());
  any = false;
  for (const auto& x : m.a) {
    if (x.is_zero()) continue;
    ExponentVec g = valuation_data(x, ord).g;
    if (!any || ord.less(g, best)) best = g;
    any = true;
  }
  return best;
}

inline KMatrix shift_matrix(KMatrix m, const ExponentVec& g) {
  KScalar s(LaurentPoly::monomial(g));
  for (auto& x : m.a)
    if (!x.is_zero()) x = x * s;
  return m;
}

// sum_w rho(T_w)^t rho(T_w), scaled by eps^{-g} so the entries lie in O and
// not all of them in p.
inline GramMatrix gram_average(const EvaluatedRep& e, const HeckeAlgebra& H, const MonomialOrder& ord) {
  const int n = H.group().size();
  RatMatrix sum(e.rep.base, e.dim(), e.rep.gamma_rank);
  for (int w = 0; w < n; ++w) sum = sum + e[w].transpose() * e[w];
  KMatrix omega = sum.to_kmatrix();
  bool any = false;
  ExponentVec g = min_valuation(omega, ord, any);
  if (!any) throw InternalError("averaged form vanishes");
  omega = shift_matrix(std::move(omega), -g);
  if (!gram_intertwines(e.rep, omega)) throw InternalError("averaged form fails symmetry or intertwining");
  return {omega};
}

struct BalanceCertificate {
  bool balanced = false;
  ExponentVec det_valuation;
  FieldScalar det_constant;
  bool direct_checked = false;
  bool direct = false;
};

// Entries of eps^a rho(T_w) all in O.
inline bool directly_balanced(const EvaluatedRep& e, const ExponentVec& a, const MonomialOrder& ord) {
  for (const auto& m : e.words) {
    ExponentVec dv = m.has_den() ? m.den().min_term(ord).exp : ExponentVec(ord.rank());
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) {
        const auto& x = m.num(i, j);
        if (x.is_zero()) continue;
        if (ord.sign(x.min_term(ord).exp - dv + a) < 0) return false;
      }
  }
  return true;
}

inline BalanceCertificate is_balanced(const EvaluatedRep& e, const GramMatrix& gram, const HeckeAlgebra& H,
                                      const MonomialOrder& ord, int direct_limit = 48) {
  if (!gram_intertwines(e.rep, gram.omega)) throw VerificationError("Gram matrix fails symmetry or intertwining");
  const int k = e.rep.gamma_rank;
  KScalar det = determinant_field(gram.omega, KScalar(LaurentPoly::one(k)));
  BalanceCertificate cert;
  if (det.is_zero()) {
    cert.det_valuation = ExponentVec(k);
    return cert;
  }
  ValuationData vd = valuation_data(det, ord);
  cert.det_valuation = vd.g;
  cert.det_constant = vd.r;
  cert.balanced = vd.g.is_zero();
  if (H.group().size() <= direct_limit) {
    SchurData sd = schur_element(e, H, ord);
    cert.direct_checked = true;
    cert.direct = directly_balanced(e, sd.a, ord);
    if (cert.direct != cert.balanced) throw InternalError("balancedness criteria disagree");
  }
  return cert;
}

// Conjugate by P: T_s -> P^{-1} rho(T_s) P.
inline MatrixRep conjugate_rep(const MatrixRep& rep, const KMatrix& P, std::string kind) {
  const int k = rep.gamma_rank;
  KMatrix Pinv = inverse_field(P, KScalar(LaurentPoly::one(k)));
  std::vector<KMatrix> gens;
  for (const auto& g : rep.gens) gens.push_back(Pinv * g.to_kmatrix() * P);
  MatrixRep out = make_rep(rep.label, std::move(kind), gens, k);
  return out;
}

inline ExponentVec half_floor(const ExponentVec& g) {
  std::vector<int> h(g.rank());
  for (int i = 0; i < g.rank(); ++i) h[i] = g[i] >= 0 ? g[i] / 2 : -((-g[i] + 1) / 2);
  return ExponentVec(h);
}

// Gram-Schmidt on the averaged form, then rescale each vector by eps^{-g_i}
// with g_i half the valuation of its squared length.
inline MatrixRep balance(const EvaluatedRep& e, const GramMatrix& gram, const MonomialOrder& ord) {
  const int d = e.dim();
  const int k = e.rep.gamma_rank;
  const KScalar one(LaurentPoly::one(k));
  const KMatrix& om = gram.omega;
  auto form = [&](const std::vector<KScalar>& x, const std::vector<KScalar>& y) {
    KScalar s;
    for (int i = 0; i < d; ++i) {
      if (x[i].is_zero()) continue;
      KScalar row;
      for (int j = 0; j < d; ++j)
        if (!y[j].is_zero() && !om(i, j).is_zero()) row += om(i, j) * y[j];
      s += x[i] * row;
    }
    return s;
  };
  std::vector<std::vector<KScalar>> u;
  std::vector<KScalar> len;
  for (int i = 0; i < d; ++i) {
    std::vector<KScalar> v(d);
    v[i] = one;
    std::vector<KScalar> ei = v;
    for (std::size_t j = 0; j < u.size(); ++j) {
      KScalar c = form(ei, u[j]) / len[j];
      if (c.is_zero()) continue;
      for (int t = 0; t < d; ++t)
        if (!u[j][t].is_zero()) v[t] -= c * u[j][t];
    }
    KScalar l = form(v, v);
    if (l.is_zero()) throw VerificationError("form degenerate");
    u.push_back(std::move(v));
    len.push_back(l);
  }
  KMatrix P(d, d);
  for (int i = 0; i < d; ++i) {
    KScalar scale(LaurentPoly::monomial(-half_floor(valuation_data(len[i], ord).g)));
    for (int t = 0; t < d; ++t) P(t, i) = u[i][t] * scale;
  }
  return conjugate_rep(e.rep, P, "balanced");
}

struct LeadingTensor {
  std::string label;
  int dim = 0;
  ExponentVec a;
  FieldScalar f;
  std::vector<FMatrix> c;  // indexed by w
};

// c^{ij}_w = constant term of (-1)^{l(w)} eps^a rho_ij(T_w).
inline LeadingTensor leading_coeffs(const EvaluatedRep& e, const SchurData& sd, const HeckeAlgebra& H,
                                    const MonomialOrder& ord, const Parallel& par = Parallel()) {
  const CoxeterGroup& g = H.group();
  LeadingTensor lt{e.rep.label, e.dim(), sd.a, sd.f, std::vector<FMatrix>(g.size())};
  par.for_each(g.size(), [&](int w) {
    const RatMatrix& m = e[w];
    FMatrix c(m.dim(), m.dim());
    LaurentPoly den = m.den();
    const auto& dt = den.min_term(ord);
    FieldScalar dinv = dt.coef.inverse();
    if (g.length(w) % 2) dinv = -dinv;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) {
        const auto& x = m.num(i, j);
        if (x.is_zero()) continue;
        const auto& nt = x.min_term(ord);
        int s = ord.sign(nt.exp - dt.exp + sd.a);
        if (s < 0) throw VerificationError("representation not balanced");
        if (s == 0) c(i, j) = nt.coef * dinv;
      }
    lt.c[w] = std::move(c);
  });
  return lt;
}

struct SchurReport {
  bool ok = true;
  int dim_square_sum = 0;
  long violations = 0;
  std::vector<std::string> samples;  // smallest few violation messages
};

// Orthogonality (*) across all pairs of tensors and the inverted form (*').
inline SchurReport verify_schur_leading(const std::vector<LeadingTensor>& ts, const CoxeterGroup& g,
                                        const Parallel& par = Parallel()) {
  SchurReport rep;
  for (const auto& t : ts) rep.dim_square_sum += t.dim * t.dim;
  if (rep.dim_square_sum < g.size())
    throw VerificationError("missing irreducibles: sum of squared dimensions is " +
                            std::to_string(rep.dim_square_sum) + ", group order " + std::to_string(g.size()) +
                            " (gap " + std::to_string(g.size() - rep.dim_square_sum) + ")");
  std::mutex mu;
  auto record = [&](std::string s) {
    std::lock_guard<std::mutex> lock(mu);
    rep.ok = false;
    ++rep.violations;
    auto& v = rep.samples;
    v.insert(std::upper_bound(v.begin(), v.end(), s), s);
    if (v.size() > 20) v.pop_back();
  };
  const int n = g.size();
  const int L = static_cast<int>(ts.size());
  // (*): sum_w c^{ij}_{w,lam} c^{kl}_{w^-1,mu} = d_il d_jk d_lam,mu f_lam.
  par.for_each(L * L, [&](int idx) {
    int la = idx / L, mu_ = idx % L;
    const auto& A = ts[la];
    const auto& B = ts[mu_];
    for (int i = 0; i < A.dim; ++i)
      for (int j = 0; j < A.dim; ++j)
        for (int k = 0; k < B.dim; ++k)
          for (int l = 0; l < B.dim; ++l) {
            FieldScalar s;
            for (int w = 0; w < n; ++w) {
              const FieldScalar& x = A.c[w](i, j);
              if (x.is_zero()) continue;
              const FieldScalar& y = B.c[g.inverse(w)](k, l);
              if (!y.is_zero()) s += x * y;
            }
            FieldScalar want = (la == mu_ && i == l && j == k) ? A.f : FieldScalar();
            if (!(s == want))
              record("(*) lambda=" + A.label + " mu=" + B.label + " i,j,k,l=" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + "," + std::to_string(k + 1) + "," + std::to_string(l + 1));
          }
  });
  // (*'): sum_lam sum_ij f^{-1} c^{ij}_{x} c^{ji}_{y^-1} = delta_xy.
  std::vector<FieldScalar> finv;
  for (const auto& t : ts) finv.push_back(t.f.inverse());
  par.for_each(n, [&](int x) {
    for (int y = 0; y < n; ++y) {
      int yi = g.inverse(y);
      FieldScalar s;
      for (int la = 0; la < L; ++la) {
        const auto& A = ts[la];
        FieldScalar part;
        for (int i = 0; i < A.dim; ++i)
          for (int j = 0; j < A.dim; ++j) {
            const FieldScalar& a = A.c[x](i, j);
            if (a.is_zero()) continue;
            const FieldScalar& b = A.c[yi](j, i);
            if (!b.is_zero()) part += a * b;
          }
        if (!part.is_zero()) s += part * finv[la];
      }
      FieldScalar want = x == y ? FieldScalar(1) : FieldScalar();
      if (!(s == want)) record("(*') x=" + g.word_string(x) + " y=" + g.word_string(y));
    }
  });
  return rep;
}

}  // namespace heckecell
