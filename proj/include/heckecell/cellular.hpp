#pragma once

// Cell data built from leading matrix coefficients: the forms B^lambda, the
// order on irreducibles, the cellular basis, Lusztig's homomorphism phi, the
// P15~ check and specialization of the weights.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "heckecell/asymptotic.hpp"

namespace heckecell {

// ---------------------------------------------------------------- primes

namespace detail {

inline void add_prime_factors(mpz_class x, std::vector<long>& out) {
  if (x < 0) x = -x;
  if (x <= 1) return;
  for (long p = 2; p <= 1000000 && mpz_class(p) * p <= x; ++p)
    if (x % p == 0) {
      out.push_back(p);
      while (x % p == 0) x /= p;
    }
  if (x > 1) {
    if (!x.fits_slong_p()) throw InternalError("prime factor too large to record");
    out.push_back(x.get_si());
  }
}

inline void normalize_primes(std::vector<long>& p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
}

inline bool smooth_over(mpz_class x, const std::vector<long>& primes) {
  if (x < 0) x = -x;
  for (long p : primes)
    while (x % p == 0) x /= p;
  return x == 1;
}

}  // namespace detail

// Primes dividing numerator or denominator of the norm of x.
inline std::vector<long> norm_primes(const FieldScalar& x) {
  std::vector<long> out;
  if (x.is_zero()) return out;
  Rational n = x.norm();
  detail::add_prime_factors(n.get_num(), out);
  detail::add_prime_factors(n.get_den(), out);
  detail::normalize_primes(out);
  return out;
}

// x in Z_W[1/p : p in primes]; Z_W has the power basis in d.
inline bool in_ring(const FieldScalar& x, const std::vector<long>& primes) {
  for (const auto& c : x.coeffs())
    if (!detail::smooth_over(c.get_den(), primes)) return false;
  return true;
}

// Units of Z_W[1/P]: elements of the ring whose inverse is in the ring.
inline bool is_ring_unit(const FieldScalar& x, const std::vector<long>& primes) {
  return !x.is_zero() && in_ring(x, primes) && in_ring(x.inverse(), primes);
}

// ---------------------------------------------------------------- B^lambda

struct BMatrix {
  FMatrix beta;
  FieldScalar det;
  std::string source;  // "one-dimensional", "printed form", "averaged form"
};

namespace detail {

inline FMatrix constant_terms(const KMatrix& m, const MonomialOrder& ord) {
  FMatrix b(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) b.a[i] = constant_term_after_shift(m.a[i], ExponentVec(ord.rank()), ord);
  return b;
}

inline bool positive_definite(const FMatrix& b) {
  for (int k = 1; k <= b.rows; ++k) {
    FMatrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = b(i, j);
    if (determinant_field(m, FieldScalar(1)).sign() <= 0) return false;
  }
  return true;
}

inline bool integral(const FieldScalar& x) {
  for (const auto& c : x.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

// Removes the content of a matrix over Z_W: first the rational gcd of all
// power-basis coefficients, then repeatedly the entry of largest norm that
// divides every entry and keeps the matrix positive-definite.
inline FMatrix primitive(FMatrix b) {
  mpz_class num = 0, den = 1;
  for (const auto& x : b.a)
    for (const auto& c : x.coeffs()) {
      if (c == 0) continue;
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
  if (num == 0) return b;
  FieldScalar s(Rational(den, num));
  for (auto& x : b.a) x = x * s;
  for (bool progress = true; progress;) {
    progress = false;
    std::optional<FieldScalar> best;
    Rational best_norm = 1;
    for (const auto& x : b.a) {
      if (x.is_zero() || x.is_rational()) continue;
      Rational nx = abs(x.norm());
      if (nx <= best_norm) continue;
      FieldScalar inv = x.inverse();
      bool divides = std::all_of(b.a.begin(), b.a.end(), [&](const FieldScalar& y) { return integral(y * inv); });
      if (!divides) continue;
      FMatrix q = b;
      for (auto& y : q.a) y = y * inv;
      if (!positive_definite(q)) continue;
      best = x;
      best_norm = nx;
    }
    if (best) {
      FieldScalar inv = best->inverse();
      for (auto& y : b.a) y = y * inv;
      progress = true;
    }
  }
  return b;
}

}  // namespace detail

// Constant terms of an invariant form shifted to minimal valuation 0, with
// the content removed.
inline FMatrix b_from_gram(KMatrix omega, const MonomialOrder& ord) {
  bool any = false;
  ExponentVec v = min_valuation(omega, ord, any);
  if (!any) throw VerificationError("invariant form is zero");
  return detail::primitive(detail::constant_terms(shift_matrix(std::move(omega), -v), ord));
}

// Constant-term matrix of a normalized invariant form for the lambda-th
// member of a balanced family. One-dimensional reps use (1); reps carrying a
// closed-form Gram matrix use it when it certifies balancedness.
inline BMatrix b_matrix(const LeadingFamily& fam, int lambda, const HeckeAlgebra& H, const MonomialOrder& ord) {
  const MatrixRep& rep = fam.reps[lambda];
  const LeadingTensor& lt = fam.tensors[lambda];
  const CoxeterGroup& g = H.group();
  BMatrix out;
  if (rep.dim == 1) {
    out.beta = FMatrix(1, 1);
    out.beta(0, 0) = FieldScalar(1);
    out.source = "one-dimensional";
  } else {
    std::optional<KMatrix> omega;
    if (rep.known_gram && !fam.rebalanced[lambda]) {
      KMatrix k(rep.dim, rep.dim);
      for (std::size_t i = 0; i < k.a.size(); ++i) k.a[i] = KScalar(rep.known_gram->a[i]);
      bool any = false;
      k = shift_matrix(std::move(k), -min_valuation(k, ord, any));
      KScalar det = determinant_field(k, KScalar(LaurentPoly::one(rep.gamma_rank)));
      if (!det.is_zero() && valuation_data(det, ord).g.is_zero()) {
        omega = std::move(k);
        out.source = "printed form";
      }
    }
    if (!omega) {
      omega = gram_average(evaluate(rep, H), H, ord).omega;
      out.source = "averaged form";
    }
    out.beta = b_from_gram(*omega, ord);
  }
  const FMatrix& b = out.beta;
  if (!b.is_symmetric()) throw VerificationError("B matrix of " + lt.label + " is not symmetric");
  for (int w = 0; w < g.size(); ++w)
    if (!(b * lt.c[g.inverse(w)] == lt.c[w].transpose() * b))
      throw VerificationError("B matrix of " + lt.label + " does not intertwine at " + g.word_string(w));
  if (!detail::positive_definite(b)) throw VerificationError("B matrix of " + lt.label + " is not positive-definite");
  out.det = determinant_field(b, FieldScalar(1));
  return out;
}

// ---------------------------------------------------------------- order on Lambda

enum class LambdaRelation { equal, less, greater, incomparable };

inline const char* relation_name(LambdaRelation r) {
  switch (r) {
    case LambdaRelation::equal:
      return "equal";
    case LambdaRelation::less:
      return "less";
    case LambdaRelation::greater:
      return "greater";
    default:
      return "incomparable";
  }
}

// lambda <| mu iff x <=_LR y and x, y not equivalent, for x in F_lambda, y in F_mu.
inline bool strictly_below(const LBlocks& B, const LRPreorder& P, int lambda, int mu, int xi = 0, int yi = 0) {
  int x = B.blocks[B.block_of_rep[lambda]][xi];
  int y = B.blocks[B.block_of_rep[mu]][yi];
  return P.leq(x, y) && !P.equivalent(x, y);
}

inline LambdaRelation lambda_order(const LBlocks& B, const LRPreorder& P, int lambda, int mu) {
  if (lambda == mu) return LambdaRelation::equal;
  if (strictly_below(B, P, lambda, mu)) return LambdaRelation::less;
  if (strictly_below(B, P, mu, lambda)) return LambdaRelation::greater;
  return LambdaRelation::incomparable;
}

// Representative independence (up to rep_limit group elements), antisymmetry
// and transitivity of the strict order.
inline CheckResult verify_lambda_order(const LBlocks& B, const LRPreorder& P, int num_lambda, int rep_limit = 20) {
  detail::CheckRecorder rec("lambda order");
  const int L = num_lambda;
  std::vector<std::vector<char>> lt(L, std::vector<char>(L, 0));
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < L; ++m) {
      if (l == m) continue;
      lt[l][m] = strictly_below(B, P, l, m);
      if (P.n > rep_limit) continue;
      const auto& fl = B.blocks[B.block_of_rep[l]];
      const auto& fm = B.blocks[B.block_of_rep[m]];
      for (std::size_t i = 0; i < fl.size(); ++i)
        for (std::size_t j = 0; j < fm.size(); ++j)
          rec.check(strictly_below(B, P, l, m, static_cast<int>(i), static_cast<int>(j)) == lt[l][m], [&] {
            return "representatives " + std::to_string(fl[i]) + "," + std::to_string(fm[j]) + " change the relation of " +
                   std::to_string(l) + " and " + std::to_string(m);
          });
    }
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < L; ++m) {
      if (l == m) continue;
      rec.check(!(lt[l][m] && lt[m][l]), [&] { return "antisymmetry fails for " + std::to_string(l) + "," + std::to_string(m); });
      for (int k = 0; k < L; ++k)
        if (lt[l][m] && k != m && lt[m][k])
          rec.check(lt[l][k] != 0, [&] { return "transitivity fails at " + std::to_string(m); });
    }
  return rec.take();
}

// ---------------------------------------------------------------- cell datum

struct CellElement {
  int lambda = 0, s = 0, t = 0;      // s, t are 0-based indices into M(lambda)
  std::vector<FieldScalar> coeff;    // coefficients on C_w
};

struct CellDatum {
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<ExponentVec> a;
  std::vector<std::vector<char>> below;  // below[l][m]: l <| m (strict)
  std::vector<BMatrix> B;
  std::vector<long> primes;  // inverted in the coefficient ring R
  std::vector<CellElement> basis;

  int index(int lambda, int s, int t) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].lambda == lambda && basis[i].s == s && basis[i].t == t) return static_cast<int>(i);
    return -1;
  }
};

// C^lambda_{s,t} = sum_w sum_u beta_{tu} rho~_{us}(t_{w^-1}) C_w.
inline CellDatum cellular_basis(const LeadingFamily& fam, const GammaTable& T, const LRPreorder& P,
                                const HeckeAlgebra& H, const MonomialOrder& ord) {
  const CoxeterGroup& g = H.group();
  const int n = g.size();
  const LBlocks& blocks = T.blocks();
  CellDatum D;
  const int L = static_cast<int>(fam.tensors.size());
  for (int l = 0; l < L; ++l) {
    D.labels.push_back(fam.tensors[l].label);
    D.dims.push_back(fam.tensors[l].dim);
    D.a.push_back(fam.tensors[l].a);
    D.B.push_back(b_matrix(fam, l, H, ord));
    for (long p : norm_primes(fam.tensors[l].f)) D.primes.push_back(p);
    for (long p : norm_primes(D.B.back().det)) D.primes.push_back(p);
  }
  detail::normalize_primes(D.primes);
  D.below.assign(L, std::vector<char>(L, 0));
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < L; ++m) D.below[l][m] = l != m && strictly_below(blocks, P, l, m);
  for (int l = 0; l < L; ++l) {
    const int d = D.dims[l];
    const FMatrix& beta = D.B[l].beta;
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        CellElement e{l, s, t, std::vector<FieldScalar>(n)};
        for (int w = 0; w < n; ++w) {
          const FMatrix& c = T.rho_bar(l, g.inverse(w));
          FieldScalar x;
          for (int u = 0; u < d; ++u)
            if (!beta(t, u).is_zero() && !c(u, s).is_zero()) x += beta(t, u) * c(u, s);
          if (x.is_zero()) continue;
          if (blocks.block_of[w] != blocks.block_of_rep[l])
            throw InternalError("cellular basis element of " + D.labels[l] + " leaves its L-block");
          if (!in_ring(x, D.primes)) throw VerificationError("integrality violation at " + g.word_string(w));
          e.coeff[w] = x;
        }
        D.basis.push_back(std::move(e));
      }
  }
  return D;
}

struct CellReport {
  CheckResult c1, c2, c3, blocks;
  FieldScalar det;
  bool ok() const { return c1.ok() && c2.ok() && c3.ok() && blocks.ok(); }
};

inline CellReport verify_cell_datum(const CellDatum& D, const HTable& ht, const GammaTable& T,
                                    const Parallel& par = Parallel()) {
  const KLBasis& kl = ht.kl();
  const HeckeAlgebra& H = kl.algebra();
  const CoxeterGroup& g = kl.group();
  const int n = g.size();
  const int k = H.gamma_rank();
  const int N = static_cast<int>(D.basis.size());
  CellReport rep;

  detail::CheckRecorder c1("C1");
  c1.check(N == n, [&] { return std::to_string(N) + " elements for a group of order " + std::to_string(n); });
  FMatrix M(N, n);
  for (int i = 0; i < N; ++i)
    for (int w = 0; w < n; ++w) M(i, w) = D.basis[i].coeff[w];
  std::optional<FMatrix> Minv;
  if (N == n) {
    rep.det = determinant_field(M, FieldScalar(1));
    c1.check(is_ring_unit(rep.det, D.primes), [&] { return "transition determinant " + to_text(rep.det) + " is not a unit"; });
    if (!rep.det.is_zero()) Minv = inverse_field(M, FieldScalar(1));
  }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (D.basis[i].lambda == D.basis[j].lambda && D.basis[i].s == D.basis[j].s && D.basis[i].t == D.basis[j].t)
        c1.fail("label repeated");
  rep.c1 = c1.take();

  // Each L-block carries an invertible square piece of the transition matrix.
  detail::CheckRecorder bl("block structure");
  const LBlocks& B = T.blocks();
  for (std::size_t b = 0; b < B.blocks.size(); ++b) {
    std::vector<int> rows;
    for (int i = 0; i < N; ++i)
      if (B.block_of_rep[D.basis[i].lambda] == static_cast<int>(b)) rows.push_back(i);
    const auto& cols = B.blocks[b];
    if (rows.size() != cols.size()) {
      bl.fail("block " + std::to_string(b) + " has " + std::to_string(rows.size()) + " elements on " +
              std::to_string(cols.size()) + " group elements");
      continue;
    }
    FMatrix sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = M(rows[i], cols[j]);
    bl.check(!determinant_field(sub, FieldScalar(1)).is_zero(), [&] { return "block " + std::to_string(b) + " singular"; });
  }
  rep.blocks = bl.take();

  detail::CheckRecorder c2("C2");
  for (int i = 0; i < N; ++i) {
    const auto& e = D.basis[i];
    int j = D.index(e.lambda, e.t, e.s);
    if (j < 0) {
      c2.fail("missing partner");
      continue;
    }
    bool ok = true;
    for (int w = 0; w < n; ++w) ok = ok && e.coeff[w] == D.basis[j].coeff[g.inverse(w)];
    c2.check(ok, [&] { return D.labels[e.lambda] + " s=" + std::to_string(e.s + 1) + " t=" + std::to_string(e.t + 1); });
  }
  rep.c2 = c2.take();

  // T_s C = v_s C - C_s C in the C-basis, then cellular coordinates.
  detail::CheckRecorder c3("C3");
  if (Minv) {
    // coords[s][i][j]: coordinate on element j of T_s times element i.
    std::vector<std::vector<std::vector<LaurentPoly>>> coords(g.rank(), std::vector<std::vector<LaurentPoly>>(N));
    par.for_each(g.rank() * N, [&](int idx) {
      int s = idx / N, i = idx % N;
      std::vector<LaurentPoly> y(n);
      for (int w = 0; w < n; ++w) {
        const FieldScalar& a = D.basis[i].coeff[w];
        if (a.is_zero()) continue;
        y[w] += H.v(s) * a;
        for (const auto& [z, h] : ht.left_generator_product(s, w)) y[z] -= h * a;
      }
      std::vector<LaurentPoly> q(N);
      for (int w = 0; w < n; ++w) {
        if (y[w].is_zero()) continue;
        for (int j = 0; j < N; ++j)
          if (!(*Minv)(w, j).is_zero()) q[j] += y[w] * (*Minv)(w, j);
      }
      coords[s][i] = std::move(q);
    });
    for (int s = 0; s < g.rank(); ++s)
      for (int i = 0; i < N; ++i) {
        const auto& e = D.basis[i];
        bool ok = true;
        std::string why;
        for (int j = 0; j < N && ok; ++j) {
          const auto& q = coords[s][i][j];
          if (q.is_zero()) continue;
          const auto& f = D.basis[j];
          if (f.lambda == e.lambda) {
            if (f.t != e.t) {
              ok = false;
              why = "component on t'=" + std::to_string(f.t + 1);
            }
          } else if (!D.below[f.lambda][e.lambda]) {
            ok = false;
            why = "component on " + D.labels[f.lambda];
          }
        }
        // r(s', s) independent of t.
        if (ok)
          for (int j = 0; j < N && ok; ++j) {
            const auto& f = D.basis[j];
            if (f.lambda != e.lambda || f.t != e.t) continue;
            int i0 = D.index(e.lambda, e.s, 0), j0 = D.index(e.lambda, f.s, 0);
            if (!(coords[s][i][j] == coords[s][i0][j0])) {
              ok = false;
              why = "coefficient depends on t";
            }
          }
        c3.check(ok, [&] {
          return "T_" + g.generator_names()[s] + " on " + D.labels[e.lambda] + " (" + std::to_string(e.s + 1) + "," +
                 std::to_string(e.t + 1) + "): " + why;
        });
      }
  } else {
    c3.fail("transition matrix singular");
  }
  rep.c3 = c3.take();
  (void)k;
  return rep;
}

// ---------------------------------------------------------------- phi

// Elements of J~_A: coefficients in A.
struct AJElem {
  std::map<int, LaurentPoly> c;
  void add(int w, const LaurentPoly& x) {
    if (x.is_zero()) return;
    auto [it, fresh] = c.emplace(w, x);
    if (!fresh) {
      it->second += x;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  friend bool operator==(const AJElem& a, const AJElem& b) { return a.c == b.c; }
};

inline AJElem aj_multiply(const GammaTable& T, const AJElem& a, const AJElem& b) {
  const CoxeterGroup& g = T.group();
  AJElem r;
  for (const auto& [x, ax] : a.c)
    for (const auto& [y, by] : b.c) {
      LaurentPoly p = ax * by;
      for (const auto& [z, v] : T.row(x, y)) r.add(g.inverse(z), p * v);
    }
  return r;
}

// phi(C_w) = sum over d in D~ and z ~LR d of h_{w,d,z} n~_d t_z.
inline AJElem lusztig_phi(const GammaTable& T, const HTable& ht, const LRPreorder& P, int w) {
  AJElem r;
  for (int d : T.d_set())
    for (const auto& [z, h] : ht.row(w, d))
      if (P.equivalent(z, d)) r.add(z, h * T.n_tilde(d));
  return r;
}

// phi on an element given in the C-basis.
inline AJElem lusztig_phi(const GammaTable& T, const HTable& ht, const LRPreorder& P, const HeckeElem& h) {
  AJElem r;
  for (int w = 0; w < static_cast<int>(h.c.size()); ++w) {
    if (h.c[w].is_zero()) continue;
    for (const auto& [z, x] : lusztig_phi(T, ht, P, w).c) r.add(z, h.c[w] * x);
  }
  return r;
}

struct PhiReport {
  CheckResult unital, multiplicative, filtration;
  bool ok() const { return unital.ok() && multiplicative.ok() && filtration.ok(); }
};

inline PhiReport verify_phi(const GammaTable& T, const HTable& ht, const LRPreorder& P, int exhaustive_limit = 16,
                            long samples = 2000, std::uint64_t seed = 1, const Parallel& par = Parallel()) {
  const CoxeterGroup& g = T.group();
  const int n = g.size();
  const int k = ht.kl().algebra().gamma_rank();
  std::vector<AJElem> phi(n);
  par.for_each(n, [&](int w) { phi[w] = lusztig_phi(T, ht, P, w); });
  PhiReport rep;

  detail::CheckRecorder un("phi(C_1) = 1");
  AJElem one;
  for (const auto& [w, x] : T.identity().c) one.add(w, LaurentPoly::constant(k, x));
  un.check(phi[0] == one, [] { return "phi(C_1) differs from the identity"; });
  rep.unital = un.take();

  std::vector<std::pair<int, int>> pairs;
  if (n <= exhaustive_limit) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) pairs.push_back({x, y});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (long i = 0; i < samples; ++i) pairs.push_back({pick(rng), pick(rng)});
  }

  detail::CheckRecorder mul("phi multiplicative");
  par.for_each(static_cast<int>(pairs.size()), [&](int i) {
    auto [x, y] = pairs[i];
    AJElem lhs;
    for (const auto& [z, h] : ht.row(x, y))
      for (const auto& [u, c] : phi[z].c) lhs.add(u, h * c);
    AJElem rhs = aj_multiply(T, phi[x], phi[y]);
    mul.check(lhs == rhs, [&] { return "C_" + g.word_string(x) + " C_" + g.word_string(y); });
  });
  rep.multiplicative = mul.take();

  // phi(C_x) t_w - C_x.t_w lies in the span of t_y, y <_LR w strictly.
  detail::CheckRecorder fil("phi filtration");
  par.for_each(static_cast<int>(pairs.size()), [&](int i) {
    auto [x, w] = pairs[i];
    AJElem tw;
    tw.add(w, LaurentPoly::one(k));
    AJElem diff = aj_multiply(T, phi[x], tw);
    for (const auto& [z, h] : ht.row(x, w)) diff.add(z, -h);
    bool ok = true;
    for (const auto& [y, c] : diff.c) ok = ok && P.leq(y, w) && !P.equivalent(y, w);
    fil.check(ok, [&] { return "C_" + g.word_string(x) + " on t_" + g.word_string(w); });
  });
  rep.filtration = fil.take();
  return rep;
}

// ---------------------------------------------------------------- P15~

// sum_u gamma~_{w,x',u^-1} h_{x,u,y} = sum_u h_{x,w,u} gamma~_{u,x',y^-1} for w ~LR y.
inline CheckResult verify_p15_tilde(const GammaTable& T, const HTable& ht, const LRPreorder& P,
                                    int exhaustive_limit = 16, long samples = 100000, std::uint64_t seed = 1,
                                    const Parallel& par = Parallel()) {
  const CoxeterGroup& g = T.group();
  const int n = g.size();
  detail::CheckRecorder rec("P15~");
  auto one = [&](int x, int xp, int y, int w) {
    LaurentPoly lhs, rhs;
    for (const auto& [ui, v] : T.row(w, xp)) {
      LaurentPoly h = ht.h(x, g.inverse(ui), y);
      if (!h.is_zero()) lhs += h * v;
    }
    const int yi = g.inverse(y);
    for (const auto& [u, h] : ht.row(x, w)) {
      FieldScalar v = T.gamma(u, xp, yi);
      if (!v.is_zero()) rhs += h * v;
    }
    rec.check(lhs == rhs, [&] {
      return "x=" + g.word_string(x) + " x'=" + g.word_string(xp) + " y=" + g.word_string(y) + " w=" + g.word_string(w);
    });
  };
  if (n <= exhaustive_limit) {
    par.for_each(n, [&](int x) {
      for (int xp = 0; xp < n; ++xp)
        for (int y = 0; y < n; ++y)
          for (int w = 0; w < n; ++w)
            if (P.equivalent(w, y)) one(x, xp, y, w);
    });
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<std::array<int, 4>> quads(samples);
    for (auto& q : quads) {
      int y = pick(rng);
      const auto& cell = P.cells[P.cell_of[y]];
      std::uniform_int_distribution<int> inside(0, static_cast<int>(cell.size()) - 1);
      q = {pick(rng), pick(rng), y, cell[inside(rng)]};
    }
    par.for_each(static_cast<int>(quads.size()), [&](int i) { one(quads[i][0], quads[i][1], quads[i][2], quads[i][3]); });
  }
  return rec.take();
}

// ---------------------------------------------------------------- specialization

// A cell datum with elements written in the T-basis of some Hecke algebra.
struct TCellDatum {
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<std::vector<char>> below;
  std::vector<long> primes;
  struct Element {
    int lambda, s, t;
    HeckeElem h;  // T-basis
  };
  std::vector<Element> basis;

  int index(int lambda, int s, int t) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].lambda == lambda && basis[i].s == s && basis[i].t == t) return static_cast<int>(i);
    return -1;
  }
};

// alpha(g) = sum over classes c of g_c L'(c); the source must carry universal weights.
inline ExponentVec specialize_exponent(const ExponentVec& g, const std::vector<ExponentVec>& class_targets, int rank) {
  ExponentVec r(rank);
  for (int c = 0; c < g.rank(); ++c) r += g[c] * class_targets[c];
  return r;
}

inline std::vector<ExponentVec> class_targets(const CoxeterGroup& g, const WeightFunction& target) {
  std::vector<ExponentVec> out(g.num_classes(), ExponentVec(target.rank));
  for (int s = 0; s < g.rank(); ++s) out[g.class_of(s)] = target.values[s];
  return out;
}

inline TCellDatum specialize_weight(const CellDatum& D, const KLBasis& source, const HeckeAlgebra& target) {
  const CoxeterGroup& g = source.group();
  const WeightFunction& L0 = source.algebra().weights();
  WeightFunction uni = weight_universal(g);
  for (int s = 0; s < g.rank(); ++s)
    if (L0.rank != uni.rank || !(L0.values[s] == uni.values[s]))
      throw InputError("specialization needs a datum built with universal weights");
  if (&target.group() != &g && target.group().name() != g.name()) throw InputError("target has a different group");
  auto ct = class_targets(g, target.weights());
  const int rank = target.gamma_rank();
  auto alpha = [&](const ExponentVec& e) { return specialize_exponent(e, ct, rank); };
  TCellDatum out{D.labels, D.dims, D.below, D.primes, {}};
  const int n = g.size();
  for (const auto& e : D.basis) {
    HeckeElem h(Basis::T, n);
    for (int w = 0; w < n; ++w) {
      if (e.coeff[w].is_zero()) continue;
      const HeckeElem& cw = source.c(w);
      for (int y = 0; y < n; ++y)
        if (!cw.c[y].is_zero()) h.c[y] += cw.c[y].map_exponents(alpha) * e.coeff[w];
    }
    out.basis.push_back({e.lambda, e.s, e.t, std::move(h)});
  }
  return out;
}

// Plain conversion of a datum to T-coordinates of its own algebra.
inline TCellDatum to_t_basis(const CellDatum& D, const KLBasis& kl) {
  TCellDatum out{D.labels, D.dims, D.below, D.primes, {}};
  const int n = kl.size();
  for (const auto& e : D.basis) {
    HeckeElem h(Basis::T, n);
    for (int w = 0; w < n; ++w) {
      if (e.coeff[w].is_zero()) continue;
      for (int y = 0; y < n; ++y)
        if (!kl.c(w).c[y].is_zero()) h.c[y] += kl.c(w).c[y] * e.coeff[w];
    }
    out.basis.push_back({e.lambda, e.s, e.t, std::move(h)});
  }
  return out;
}

// A unit of R[Gamma]: a single term whose coefficient is a unit of R.
inline bool is_laurent_unit(const LaurentPoly& p, const std::vector<long>& primes) {
  return p.is_monomial() && is_ring_unit(p.terms()[0].coef, primes);
}

inline CellReport verify_t_cell_datum(const TCellDatum& D, const HeckeAlgebra& H, const Parallel& par = Parallel()) {
  const CoxeterGroup& g = H.group();
  const int n = g.size();
  const int k = H.gamma_rank();
  const int N = static_cast<int>(D.basis.size());
  CellReport rep;

  detail::CheckRecorder c1("C1");
  c1.check(N == n, [&] { return std::to_string(N) + " elements for a group of order " + std::to_string(n); });
  LMatrix M(N, n);
  for (int i = 0; i < N; ++i)
    for (int w = 0; w < n; ++w) M(i, w) = D.basis[i].h.c[w];
  std::optional<KMatrix> Minv;
  if (N == n) {
    LaurentPoly det = determinant(M, k);
    c1.check(is_laurent_unit(det, D.primes), [&] { return "transition determinant " + to_text(det) + " is not a unit"; });
    if (!det.is_zero()) {
      KMatrix km(N, n);
      for (std::size_t i = 0; i < M.a.size(); ++i) km.a[i] = KScalar(M.a[i]);
      Minv = inverse_field(km, KScalar(LaurentPoly::one(k)));
    }
  }
  rep.c1 = c1.take();
  rep.blocks.name = "block structure";

  detail::CheckRecorder c2("C2");
  for (const auto& e : D.basis) {
    int j = D.index(e.lambda, e.t, e.s);
    c2.check(j >= 0 && H.star(e.h) == D.basis[j].h, [&] {
      return D.labels[e.lambda] + " s=" + std::to_string(e.s + 1) + " t=" + std::to_string(e.t + 1);
    });
  }
  rep.c2 = c2.take();

  detail::CheckRecorder c3("C3");
  if (Minv) {
    std::vector<std::vector<std::vector<KScalar>>> coords(g.rank(), std::vector<std::vector<KScalar>>(N));
    par.for_each(g.rank() * N, [&](int idx) {
      int s = idx / N, i = idx % N;
      HeckeElem y = H.left_mul_T(s, D.basis[i].h);
      std::vector<KScalar> q(N);
      for (int w = 0; w < n; ++w) {
        if (y.c[w].is_zero()) continue;
        KScalar yw(y.c[w]);
        for (int j = 0; j < N; ++j)
          if (!(*Minv)(w, j).is_zero()) q[j] += yw * (*Minv)(w, j);
      }
      coords[s][i] = std::move(q);
    });
    for (int s = 0; s < g.rank(); ++s)
      for (int i = 0; i < N; ++i) {
        const auto& e = D.basis[i];
        bool ok = true;
        std::string why;
        for (int j = 0; j < N && ok; ++j) {
          const auto& q = coords[s][i][j];
          if (q.is_zero()) continue;
          if (!q.as_polynomial()) {
            ok = false;
            why = "coefficient outside A";
            break;
          }
          const auto& f = D.basis[j];
          if (f.lambda == e.lambda) {
            if (f.t != e.t) {
              ok = false;
              why = "component on t'=" + std::to_string(f.t + 1);
            }
          } else if (!D.below[f.lambda][e.lambda]) {
            ok = false;
            why = "component on " + D.labels[f.lambda];
          }
        }
        if (ok)
          for (int j = 0; j < N && ok; ++j) {
            const auto& f = D.basis[j];
            if (f.lambda != e.lambda || f.t != e.t) continue;
            int i0 = D.index(e.lambda, e.s, 0), j0 = D.index(e.lambda, f.s, 0);
            if (!(coords[s][i][j] == coords[s][i0][j0])) {
              ok = false;
              why = "coefficient depends on t";
            }
          }
        c3.check(ok, [&] {
          return "T_" + g.generator_names()[s] + " on " + D.labels[e.lambda] + " (" + std::to_string(e.s + 1) + "," +
                 std::to_string(e.t + 1) + "): " + why;
        });
      }
  } else {
    c3.fail("transition matrix singular");
  }
  rep.c3 = c3.take();
  return rep;
}

}  // namespace heckecell
