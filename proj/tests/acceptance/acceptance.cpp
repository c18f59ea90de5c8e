// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "heckecell/cellular.hpp"

using namespace heckecell;

namespace {

enum class Regime { equal, universal, lex };

// One Hecke algebra with its KL side and leading-coefficient side, built on demand.
struct Sys {
  CoxeterGroup g;
  HeckeAlgebra H;
  MonomialOrder ord;
  const Parallel& par;

  Sys(const std::string& name, Regime r, const Parallel& p)
      : g(coxeter_type(name)),
        H(g, r == Regime::equal ? weight_equal(g) : weight_universal(g)),
        ord(order_for(g, r)),
        par(p) {}

  // lex puts the class of s1 first; class_of numbers classes from the last generator.
  static MonomialOrder order_for(const CoxeterGroup& g, Regime r) {
    if (r == Regime::equal) return MonomialOrder::natural(1);
    if (r == Regime::universal) return MonomialOrder::natural(g.num_classes());
    std::vector<int> pr;
    for (int i = g.num_classes() - 1; i >= 0; --i) pr.push_back(i);
    return MonomialOrder(pr);
  }

  const LeadingFamily& fam() {
    if (!fam_) fam_ = std::make_unique<LeadingFamily>(leading_family(H, ord, complete_family(H), par));
    return *fam_;
  }
  const GammaTable& T() {
    if (!T_) T_ = std::make_unique<GammaTable>(g, fam().tensors, par);
    return *T_;
  }
  const KLBasis& kl() {
    if (!kl_) kl_ = std::make_unique<KLBasis>(H, ord, par);
    return *kl_;
  }
  const HTable& ht() {
    if (!ht_) {
      ht_ = std::make_unique<HTable>(kl());
      ht_->fill_all(par);
    }
    return *ht_;
  }
  const AFunction& af() {
    if (!af_) af_ = a_function(ht(), par);
    return *af_;
  }
  const LRPreorder& P() {
    if (!P_) P_ = lr_preorder(ht());
    return *P_;
  }

 private:
  std::unique_ptr<LeadingFamily> fam_;
  std::unique_ptr<GammaTable> T_;
  std::unique_ptr<KLBasis> kl_;
  std::unique_ptr<HTable> ht_;
  std::optional<AFunction> af_;
  std::optional<LRPreorder> P_;
};

const char* regime_name(Regime r) { return r == Regime::equal ? "equal" : r == Regime::universal ? "universal" : "lex"; }

class Systems {
 public:
  explicit Systems(const Parallel& par) : par_(par) {}
  Sys& get(const std::string& name, Regime r) {
    auto key = std::make_pair(name, r);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, std::make_unique<Sys>(name, r, par_)).first;
    return *it->second;
  }

 private:
  const Parallel& par_;
  std::map<std::pair<std::string, Regime>, std::unique_ptr<Sys>> cache_;
};

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;
  void add(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  void add(const CheckResult& c, const std::string& where) {
    checks += c.checked;
    if (!c.ok() && failures == 0) first = where + " " + c.name + (c.samples.empty() ? "" : ": " + c.samples[0]);
    failures += c.violations;
    if (c.checked == 0 && failures++ == 0) first = where + " " + c.name + ": nothing checked";
  }
};

struct Outcome {
  enum { pass, fail, skip } status;
  std::string detail;
};

Outcome verdict(const Tally& t, const std::string& summary) {
  std::ostringstream o;
  o << summary << "; " << t.checks << " checks";
  if (t.failures) o << ", " << t.failures << " failures, first: " << t.first;
  return {t.failures ? Outcome::fail : Outcome::pass, o.str()};
}

std::string where(const std::string& name, Regime r) { return name + "/" + regime_name(r); }

std::string dihedral(int m) { return "I2:" + std::to_string(m); }

FMatrix gram_constant_terms(const MatrixRep& rep, const MonomialOrder& ord) {
  KMatrix k(rep.dim, rep.dim);
  for (std::size_t i = 0; i < k.a.size(); ++i) k.a[i] = KScalar(rep.known_gram->a[i]);
  bool any = false;
  ExponentVec v = min_valuation(k, ord, any);
  return detail::constant_terms(shift_matrix(std::move(k), -v), ord);
}

// ---------------------------------------------------------------- criteria

Outcome c1_dihedral_gram(Systems& S) {
  Tally t;
  for (int m = 3; m <= 12; ++m) {
    Sys& s = S.get(dihedral(m), Regime::equal);
    for (int j = 1; j <= dihedral_max_j(m); ++j) {
      FMatrix want(2, 2);
      want(0, 0) = FieldScalar(2) + s.g.two_cos(m, j);
      want(1, 1) = FieldScalar(1);
      t.add(gram_constant_terms(rep_dihedral(s.H, j), s.ord) == want, "m=" + std::to_string(m) + " j=" + std::to_string(j));
    }
    // Odd m: s1 and s2 are conjugate, so there is no two-variable weight.
    if (m % 2) continue;
    Sys& l = S.get(dihedral(m), Regime::lex);
    FMatrix one(2, 2);
    one(0, 0) = one(1, 1) = FieldScalar(1);
    for (int j = 1; j <= dihedral_max_j(m); ++j)
      t.add(gram_constant_terms(rep_dihedral(l.H, j), l.ord) == one,
            "lex m=" + std::to_string(m) + " j=" + std::to_string(j));
  }
  return verdict(t, "I2(3..12) equal diag(2+z^j+z^-j,1); lex identity for even m");
}

Outcome c2_determinants(Systems& S) {
  Tally t;
  for (int m = 3; m <= 12; ++m) {
    Sys& s = S.get(dihedral(m), Regime::equal);
    FieldScalar prod(1);
    for (std::size_t l = 0; l < s.fam().tensors.size(); ++l)
      if (s.fam().tensors[l].dim == 2) prod = prod * b_matrix(s.fam(), static_cast<int>(l), s.H, s.ord).det;
    FieldScalar want = m % 2 ? FieldScalar(1) : FieldScalar(m / 2);
    t.add(prod == want, "m=" + std::to_string(m) + " product " + to_text(prod));
  }
  return verdict(t, "prod det B_j for I2(3..12)");
}

std::vector<Regime> regimes(const std::string& name, bool universal_too = true) {
  CoxeterGroup g(coxeter_type(name));
  if (g.num_classes() == 1) return {Regime::equal};
  if (universal_too) return {Regime::equal, Regime::universal, Regime::lex};
  return {Regime::equal, Regime::lex};
}

std::vector<std::string> schur_systems() {
  std::vector<std::string> v{"A1", "A2", "A3", "B2", "B3"};
  for (int m = 3; m <= 12; ++m) v.push_back(dihedral(m));
  return v;
}

Outcome c3_schur(Systems& S) {
  Tally t;
  for (const auto& n : schur_systems())
    for (Regime r : regimes(n)) {
      Sys& s = S.get(n, r);
      SchurReport rep = verify_schur_leading(s.fam().tensors, s.g, s.par);
      long pairs = 0;
      for (const auto& a : s.fam().tensors)
        for (const auto& b : s.fam().tensors) pairs += static_cast<long>(a.dim) * a.dim * b.dim * b.dim;
      t.checks += pairs + static_cast<long>(s.g.size()) * s.g.size() - 1;
      t.add(rep.ok, where(n, r) + (rep.samples.empty() ? "" : " " + rep.samples[0]));
      if (!rep.ok) t.failures += rep.violations - 1;
    }
  return verdict(t, "(*) and (*') for A1-A3, B2, B3, I2(3..12), every order");
}

std::vector<std::pair<std::string, Regime>> kl_cases() {
  std::vector<std::pair<std::string, Regime>> v;
  for (const char* n : {"A2", "A3", "B2"}) v.push_back({n, Regime::equal});
  for (int m = 3; m <= 8; ++m) v.push_back({dihedral(m), Regime::equal});
  for (const char* n : {"B2", "I2:4", "I2:6"}) v.push_back({n, Regime::lex});
  return v;
}

Outcome c4_gamma_kl(Systems& S) {
  Tally t;
  for (const auto& [n, r] : kl_cases()) {
    Sys& s = S.get(n, r);
    KLComparison c = compare_gamma_kl(s.T(), s.ht(), s.af(), s.par);
    t.add(c.gamma, where(n, r));
    t.add(c.a_values, where(n, r));
  }
  return verdict(t, "gamma~ = gamma and a(z) = a_lambda, 12 configurations");
}

Outcome c5_ring(Systems& S, std::uint64_t seed) {
  Tally t;
  std::vector<std::string> sys{"A1", "A2", "A3", "B2", "B3"};
  for (int m = 3; m <= 24; ++m) sys.push_back(dihedral(m));
  for (const auto& n : sys)
    for (Regime r : regimes(n, false)) {
      Sys& s = S.get(n, r);
      RingCheckOptions opt;
      opt.exhaustive_limit = 16;
      opt.random_triples = 10000;
      opt.seed = seed;
      for (const auto& c : verify_ring(s.T(), opt, s.par).checks) t.add(c, where(n, r));
    }
  return verdict(t, "ring axioms for |W| <= 48, associativity exhaustive to 16 then 10^4 triples");
}

Outcome c6_integrality(Systems& S) {
  Tally t;
  auto gammas = [&](Sys& s, auto&& ok, const std::string& w) {
    for (int x = 0; x < s.g.size(); ++x)
      for (int y = 0; y < s.g.size(); ++y)
        for (const auto& [z, v] : s.T().row(x, y))
          t.add(v.is_rational() && ok(v.rational().get_den()), w + " " + s.g.word_string(x) + "," + s.g.word_string(y));
  };
  for (const char* n : {"A1", "A2", "A3", "B2", "B3", "I2:4", "I2:6"})
    gammas(S.get(n, Regime::equal), [](const mpz_class& d) { return d == 1; }, std::string(n) + " Z");
  for (const char* n : {"B2", "B3"})
    for (Regime r : regimes(n))
      gammas(S.get(n, r), [](mpz_class d) {
        while (d % 2 == 0) d /= 2;
        return d == 1;
      }, where(n, r) + " 2-power");
  for (int m = 3; m <= 12; ++m)
    for (Regime r : regimes(dihedral(m))) {
      Sys& s = S.get(dihedral(m), r);
      for (const auto& lt : s.fam().tensors)
        for (int w = 0; w < s.g.size(); ++w)
          for (const auto& x : lt.c[w].a) t.add(in_ring(x, {}), where(dihedral(m), r) + " " + lt.label);
    }
  return verdict(t, "gamma~ in Z (crystallographic), 2-power denominators (B2, B3), tensors in Z_W (I2)");
}

std::vector<std::pair<std::string, Regime>> small_cases() {
  std::vector<std::pair<std::string, Regime>> v;
  std::vector<std::string> n{"A1", "A2", "B2"};
  for (int m = 3; m <= 8; ++m) n.push_back(dihedral(m));
  for (const auto& s : n)
    for (Regime r : regimes(s, false)) v.push_back({s, r});
  return v;
}

Outcome c7_cell_datum(Systems& S) {
  Tally t;
  for (const auto& [n, r] : small_cases()) {
    Sys& s = S.get(n, r);
    CellDatum D = cellular_basis(s.fam(), s.T(), s.P(), s.H, s.ord);
    t.add(verify_lambda_order(s.T().blocks(), s.P(), static_cast<int>(D.labels.size())), where(n, r));
    CellReport rep = verify_cell_datum(D, s.ht(), s.T(), s.par);
    for (const CheckResult* c : {&rep.c1, &rep.blocks, &rep.c2, &rep.c3}) t.add(*c, where(n, r));
  }
  return verdict(t, "(C1)-(C3) exhaustive for A1, A2, B2, I2(3..8), equal and lex");
}

Outcome c8_phi(Systems& S, std::uint64_t seed) {
  Tally t;
  for (const auto& [n, r] : small_cases()) {
    Sys& s = S.get(n, r);
    PhiReport rep = verify_phi(s.T(), s.ht(), s.P(), 16, 2000, seed, s.par);
    for (const CheckResult* c : {&rep.unital, &rep.multiplicative, &rep.filtration}) t.add(*c, where(n, r));
  }
  return verdict(t, "phi unital, multiplicative and filtered, exhaustive for |W| <= 16");
}

Outcome c9_p15(Systems& S, std::uint64_t seed) {
  Tally t;
  for (const auto& [n, r] : kl_cases()) {
    Sys& s = S.get(n, r);
    if (s.g.size() > 16) continue;
    t.add(verify_p15_tilde(s.T(), s.ht(), s.P(), 16, 0, seed, s.par), where(n, r));
  }
  for (const char* n : {"A3", "B3"}) {
    Sys& s = S.get(n, Regime::equal);
    CheckResult c = verify_p15_tilde(s.T(), s.ht(), s.P(), 16, 100000, seed, s.par);
    t.add(c, where(n, Regime::equal));
    t.add(c.checked >= 100000, std::string(n) + " sample count");
  }
  return verdict(t, "P15~ exhaustive for |W| <= 16, 10^5 random quadruples for A3 and B3");
}

Outcome c10_choice(Systems& S) {
  Tally t;
  for (Regime r : regimes("B2")) {
    Sys& b = S.get("B2", r);
    Sys& d = S.get("I2:4", r);
    std::vector<MatrixRep> dreps = complete_family(d.H);
    // B2 and I2(4) share generator indices and classes.
    for (auto& rep : dreps)
      rep = make_rep(rep.label, rep.kind, {rep.gens[0].to_kmatrix(), rep.gens[1].to_kmatrix()}, rep.gamma_rank);
    GammaTable dih(b.g, leading_family(b.H, b.ord, dreps, b.par).tensors, b.par);
    t.add(b.T() == dih, where("B2", r));
  }
  return verdict(t, "B2 seminormal table equals dihedral table");
}

Outcome c11_specialize(Systems& S) {
  Tally t;
  for (Regime r : {Regime::universal, Regime::lex}) {
    Sys& s = S.get("B2", r);
    CellDatum D = cellular_basis(s.fam(), s.T(), s.P(), s.H, s.ord);
    HeckeAlgebra target(s.g, weight_equal(s.g));
    TCellDatum TD = specialize_weight(D, s.kl(), target);
    CellReport rep = verify_t_cell_datum(TD, target, s.par);
    for (const CheckResult* c : {&rep.c1, &rep.c2, &rep.c3}) t.add(*c, where("B2", r) + " -> equal");
  }
  return verdict(t, "B2 universal datum specialized to equal parameters");
}

// Printed invariant form of 3_s for H3 at equal parameters, vertex order s3, s2, s1.
const char* const kOmega3s[9] = {"1*eps[2] + 1", "-1*eps[1]", "0", "-1*eps[1]", "1*eps[2] + 1",
                                 "(-1 + -1*d)*eps[1]", "0", "(-1 + -1*d)*eps[1]", "1*eps[2] + 1"};

Outcome c12_h3(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return {Outcome::skip, "no H3 3_s W-graph file"};
  CoxeterGroup g(coxeter_type("H3"));
  HeckeAlgebra H(g, weight_equal(g));
  MonomialOrder ord = MonomialOrder::natural(1);
  MatrixRep rep = load_rep(path, H);
  if (rep.dim != 3) return {Outcome::fail, "expected a 3-dimensional representation"};
  KMatrix omega = gram_average(evaluate(rep, H), H, ord).omega;
  KMatrix printed(3, 3);
  for (int i = 0; i < 9; ++i) printed.a[i] = parse_kscalar(kOmega3s[i], g.field_ptr(), 1);
  Tally t;
  KScalar ratio = omega.a[0] * printed.a[0].inverse();
  for (int i = 0; i < 9; ++i) t.add(omega.a[i] == ratio * printed.a[i], "entry " + std::to_string(i));
  FMatrix B = b_from_gram(omega, ord);
  t.add(detail::positive_definite(B), "B positive-definite");
  FieldScalar det = determinant_field(B, FieldScalar(1));
  t.add(is_ring_unit(det, {2, 5}), "det B = " + to_text(det) + " not a unit of Z_W[1/2,1/5]");
  return verdict(t, "averaged form proportional to printed Omega^{3_s}, det B = " + to_text(det));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-12"};
  std::string h3;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::vector<int> only;
  app.add_option("--h3", h3, "W-graph file for the H3 representation 3_s (criterion 12)");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for sampled checks");
  app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  Parallel par(jobs);
  Systems S(par);
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, [&] { return c1_dihedral_gram(S); }},     {2, [&] { return c2_determinants(S); }},
      {3, [&] { return c3_schur(S); }},             {4, [&] { return c4_gamma_kl(S); }},
      {5, [&] { return c5_ring(S, seed); }},        {6, [&] { return c6_integrality(S); }},
      {7, [&] { return c7_cell_datum(S); }},        {8, [&] { return c8_phi(S, seed); }},
      {9, [&] { return c9_p15(S, seed); }},         {10, [&] { return c10_choice(S); }},
      {11, [&] { return c11_specialize(S); }},      {12, [&] { return c12_h3(h3); }},
  };
  bool failed = false;
  for (auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Outcome::fail, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = o.status == Outcome::pass ? "PASS" : o.status == Outcome::skip ? "SKIP" : "FAIL";
    failed = failed || o.status == Outcome::fail;
    std::printf("%s %2d  %s (%.1fs)\n", tag, id, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
