#pragma once

// JSON emission and parsing of the computed tables. Elements of W are
// referred to by index; every artifact also lists the reduced words.

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "heckecell/cellular.hpp"
#include "heckecell/text.hpp"

namespace heckecell {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "heckecell/1";

// ---------------------------------------------------------------- primitives

inline Json to_json(const ExponentVec& e) {
  Json j = Json::array();
  for (int i = 0; i < e.rank(); ++i) j.push_back(e[i]);
  return j;
}

inline ExponentVec exponent_from_json(const Json& j) {
  std::vector<int> v;
  for (const auto& x : j) v.push_back(x.get<int>());
  return ExponentVec(v);
}

inline Json to_json(const FMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(to_text(m(i, c)));
    rows.push_back(row);
  }
  return rows;
}

inline FMatrix fmatrix_from_json(const Json& j, const NumberField* field) {
  const int r = static_cast<int>(j.size());
  const int c = r ? static_cast<int>(j[0].size()) : 0;
  FMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j[i].size()) != c) throw InputError("ragged matrix");
    for (int k = 0; k < c; ++k) m(i, k) = parse_field_scalar(j[i][k].get<std::string>(), field);
  }
  return m;
}

inline Json to_json(const CheckResult& c) {
  return Json{{"name", c.name}, {"checked", c.checked}, {"violations", c.violations}, {"samples", c.samples}};
}

inline CheckResult check_from_json(const Json& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  c.checked = j.at("checked").get<long>();
  c.violations = j.at("violations").get<long>();
  c.samples = j.at("samples").get<std::vector<std::string>>();
  return c;
}

inline Json element_words(const CoxeterGroup& g) {
  Json j = Json::array();
  for (int w = 0; w < g.size(); ++w) j.push_back(g.word_string(w));
  return j;
}

// Coxeter data, weights and order, written into every artifact.
inline Json system_json(const HeckeAlgebra& H, const MonomialOrder& ord) {
  const CoxeterGroup& g = H.group();
  Json m = Json::array();
  for (int s = 0; s < g.rank(); ++s) {
    Json row = Json::array();
    for (int t = 0; t < g.rank(); ++t) row.push_back(g.m(s, t));
    m.push_back(row);
  }
  Json w = Json::array();
  for (const auto& v : H.weights().values) w.push_back(to_json(v));
  return Json{{"name", g.name()},   {"generators", g.generator_names()}, {"coxeter_matrix", m},
              {"order", g.size()},  {"weights", w},                      {"monomial_order", ord.priority()},
              {"field_conductor", g.field_ptr() ? g.field_ptr()->conductor() : 1}};
}

// ---------------------------------------------------------------- KL side

struct KLDump {
  std::vector<std::string> elements;
  std::map<std::pair<int, int>, LaurentPoly> p;  // nonzero p_{y,w}
  std::map<std::array<int, 3>, LaurentPoly> h;   // nonzero h_{x,y,z}
  std::vector<ExponentVec> a;
  std::vector<std::vector<int>> cells;
  std::vector<std::pair<int, int>> cell_edges;  // Hasse diagram of <=_LR on cells, (lower, upper)

  friend bool operator==(const KLDump&, const KLDump&) = default;
};

namespace detail {

// Covering relations of a partial order given as a strict relation matrix.
inline std::vector<std::pair<int, int>> hasse_edges(const std::vector<std::vector<char>>& below) {
  const int n = static_cast<int>(below.size());
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c) cover = !(below[a][c] && below[c][b]);
      if (cover) out.push_back({a, b});
    }
  return out;
}

inline std::vector<std::vector<char>> closure_of(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (auto [a, b] : edges) r.at(a).at(b) = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (r[a][k] && r[k][b]) r[a][b] = 1;
  return r;
}

}  // namespace detail

inline KLDump kl_dump(const HTable& ht, const AFunction& af, const LRPreorder& P) {
  const KLBasis& kl = ht.kl();
  const CoxeterGroup& g = kl.group();
  const int n = g.size();
  KLDump d;
  for (int w = 0; w < n; ++w) d.elements.push_back(g.word_string(w));
  for (int w = 0; w < n; ++w)
    for (int y = 0; y < n; ++y)
      if (!kl.p(y, w).is_zero()) d.p[{y, w}] = kl.p(y, w);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& [z, v] : ht.row(x, y)) d.h[{x, y, z}] = v;
  d.a = af.a;
  d.cells = P.cells;
  const int c = static_cast<int>(P.cells.size());
  std::vector<std::vector<char>> below(c, std::vector<char>(c, 0));
  for (int i = 0; i < c; ++i)
    for (int k = 0; k < c; ++k)
      below[i][k] = i != k && P.leq(P.cells[i][0], P.cells[k][0]);
  d.cell_edges = detail::hasse_edges(below);
  return d;
}

inline Json to_json(const KLDump& d) {
  Json p = Json::array(), h = Json::array(), a = Json::array(), e = Json::array();
  for (const auto& [k, v] : d.p) p.push_back(Json{k.first, k.second, to_text(v)});
  for (const auto& [k, v] : d.h) h.push_back(Json{k[0], k[1], k[2], to_text(v)});
  for (const auto& x : d.a) a.push_back(to_json(x));
  for (auto [x, y] : d.cell_edges) e.push_back(Json{x, y});
  return Json{{"elements", d.elements}, {"kl_polynomials", p}, {"h", h},
              {"a", a},                 {"cells", d.cells},     {"cell_order", e}};
}

inline KLDump kl_dump_from_json(const Json& j, const NumberField* field, int rank) {
  KLDump d;
  d.elements = j.at("elements").get<std::vector<std::string>>();
  for (const auto& t : j.at("kl_polynomials"))
    d.p[{t[0].get<int>(), t[1].get<int>()}] = parse_laurent(t[2].get<std::string>(), field, rank);
  for (const auto& t : j.at("h"))
    d.h[{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()}] = parse_laurent(t[3].get<std::string>(), field, rank);
  for (const auto& x : j.at("a")) d.a.push_back(exponent_from_json(x));
  d.cells = j.at("cells").get<std::vector<std::vector<int>>>();
  for (const auto& e : j.at("cell_order")) d.cell_edges.push_back({e[0].get<int>(), e[1].get<int>()});
  return d;
}

// ---------------------------------------------------------------- reps

inline Json to_json(const SchurData& s) {
  return Json{{"c", to_text(s.c)}, {"a", to_json(s.a)}, {"f", to_text(s.f)}};
}

inline SchurData schur_from_json(const Json& j, const NumberField* field, int rank) {
  return {parse_laurent(j.at("c").get<std::string>(), field, rank), exponent_from_json(j.at("a")),
          parse_field_scalar(j.at("f").get<std::string>(), field)};
}

inline bool operator==(const SchurData& x, const SchurData& y) { return x.c == y.c && x.a == y.a && x.f == y.f; }

inline Json to_json(const LeadingTensor& t, const CoxeterGroup& g) {
  Json c = Json::array();
  for (int w = 0; w < g.size(); ++w)
    if (!t.c[w].is_zero()) c.push_back(Json{{"w", w}, {"matrix", to_json(t.c[w])}});
  return Json{{"label", t.label}, {"dim", t.dim}, {"a", to_json(t.a)}, {"f", to_text(t.f)}, {"c", c}};
}

inline LeadingTensor tensor_from_json(const Json& j, const CoxeterGroup& g) {
  LeadingTensor t;
  t.label = j.at("label").get<std::string>();
  t.dim = j.at("dim").get<int>();
  t.a = exponent_from_json(j.at("a"));
  t.f = parse_field_scalar(j.at("f").get<std::string>(), g.field_ptr());
  t.c.assign(g.size(), FMatrix(t.dim, t.dim));
  for (const auto& e : j.at("c")) t.c.at(e.at("w").get<int>()) = fmatrix_from_json(e.at("matrix"), g.field_ptr());
  return t;
}

inline bool operator==(const LeadingTensor& x, const LeadingTensor& y) {
  return x.label == y.label && x.dim == y.dim && x.a == y.a && x.f == y.f && x.c == y.c;
}

// ---------------------------------------------------------------- J-ring

inline Json to_json(const GammaTable& T) {
  const CoxeterGroup& g = T.group();
  const int n = T.size();
  Json gam = Json::array(), nt = Json::array(), ts = Json::array();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& [z, v] : T.row(x, y)) gam.push_back(Json{x, y, z, to_text(v)});
  for (int d : T.d_set()) nt.push_back(Json{d, to_text(T.n_tilde(d))});
  for (const auto& t : T.tensors()) ts.push_back(to_json(t, g));
  return Json{{"elements", element_words(g)},    {"gamma", gam},
              {"n_tilde", nt},                   {"d_set", T.d_set()},
              {"blocks", T.blocks().blocks},     {"block_of_rep", T.blocks().block_of_rep},
              {"tensors", ts}};
}

// Rebuilds the table from the stored tensors and checks the stored entries against it.
inline GammaTable gamma_table_from_json(const Json& j, const CoxeterGroup& g) {
  std::vector<LeadingTensor> ts;
  for (const auto& t : j.at("tensors")) ts.push_back(tensor_from_json(t, g));
  GammaTable T(g, std::move(ts));
  std::size_t count = 0;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) count += T.row(x, y).size();
  const auto& gam = j.at("gamma");
  if (gam.size() != count) throw InputError("gamma table does not match its tensors");
  for (const auto& e : gam)
    if (!(T.gamma(e[0].get<int>(), e[1].get<int>(), e[2].get<int>()) ==
          parse_field_scalar(e[3].get<std::string>(), g.field_ptr())))
      throw InputError("gamma table does not match its tensors");
  for (const auto& e : j.at("n_tilde"))
    if (!(T.n_tilde(e[0].get<int>()) == parse_field_scalar(e[1].get<std::string>(), g.field_ptr())))
      throw InputError("n-tilde does not match the tensors");
  if (j.at("blocks").get<std::vector<std::vector<int>>>() != T.blocks().blocks)
    throw InputError("blocks do not match the tensors");
  return T;
}

// ---------------------------------------------------------------- cell datum

inline bool operator==(const BMatrix& x, const BMatrix& y) {
  return x.beta == y.beta && x.det == y.det && x.source == y.source;
}

inline bool operator==(const CellElement& x, const CellElement& y) {
  return x.lambda == y.lambda && x.s == y.s && x.t == y.t && x.coeff == y.coeff;
}

inline bool operator==(const CellDatum& x, const CellDatum& y) {
  return x.labels == y.labels && x.dims == y.dims && x.a == y.a && x.below == y.below && x.B == y.B &&
         x.primes == y.primes && x.basis == y.basis;
}

// s and t are written 1-based.
inline Json to_json(const CellDatum& D) {
  Json lam = Json::array(), basis = Json::array(), hasse = Json::array();
  for (std::size_t l = 0; l < D.labels.size(); ++l)
    lam.push_back(Json{{"label", D.labels[l]},
                       {"dim", D.dims[l]},
                       {"a", to_json(D.a[l])},
                       {"B", to_json(D.B[l].beta)},
                       {"det_B", to_text(D.B[l].det)},
                       {"B_source", D.B[l].source}});
  for (auto [x, y] : detail::hasse_edges(D.below)) hasse.push_back(Json{D.labels[x], D.labels[y]});
  for (const auto& e : D.basis) {
    Json c = Json::array();
    for (std::size_t w = 0; w < e.coeff.size(); ++w)
      if (!e.coeff[w].is_zero()) c.push_back(Json{w, to_text(e.coeff[w])});
    basis.push_back(Json{{"lambda", D.labels[e.lambda]}, {"s", e.s + 1}, {"t", e.t + 1}, {"coefficients", c}});
  }
  return Json{{"lambda", lam}, {"order_hasse", hasse}, {"primes", D.primes}, {"basis", basis}};
}

inline CellDatum cell_datum_from_json(const Json& j, const CoxeterGroup& g) {
  const NumberField* field = g.field_ptr();
  CellDatum D;
  std::map<std::string, int> index;
  for (const auto& l : j.at("lambda")) {
    index[l.at("label").get<std::string>()] = static_cast<int>(D.labels.size());
    D.labels.push_back(l.at("label").get<std::string>());
    D.dims.push_back(l.at("dim").get<int>());
    D.a.push_back(exponent_from_json(l.at("a")));
    D.B.push_back({fmatrix_from_json(l.at("B"), field), parse_field_scalar(l.at("det_B").get<std::string>(), field),
                   l.at("B_source").get<std::string>()});
  }
  auto lookup = [&](const Json& x) {
    auto it = index.find(x.get<std::string>());
    if (it == index.end()) throw InputError("unknown label " + x.get<std::string>() + " in cell datum");
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("order_hasse")) edges.push_back({lookup(e[0]), lookup(e[1])});
  D.below = detail::closure_of(static_cast<int>(D.labels.size()), edges);
  D.primes = j.at("primes").get<std::vector<long>>();
  for (const auto& b : j.at("basis")) {
    CellElement e{lookup(b.at("lambda")), b.at("s").get<int>() - 1, b.at("t").get<int>() - 1,
                  std::vector<FieldScalar>(g.size())};
    for (const auto& c : b.at("coefficients"))
      e.coeff.at(c[0].get<int>()) = parse_field_scalar(c[1].get<std::string>(), field);
    D.basis.push_back(std::move(e));
  }
  return D;
}

inline Json to_json(const AJElem& e) {
  Json j = Json::array();
  for (const auto& [w, x] : e.c) j.push_back(Json{w, to_text(x)});
  return j;
}

inline AJElem aj_from_json(const Json& j, const NumberField* field, int rank) {
  AJElem e;
  for (const auto& t : j) e.add(t[0].get<int>(), parse_laurent(t[1].get<std::string>(), field, rank));
  return e;
}

inline Json to_json(const TCellDatum& D) {
  Json basis = Json::array();
  for (const auto& e : D.basis) {
    Json c = Json::array();
    for (std::size_t w = 0; w < e.h.c.size(); ++w)
      if (!e.h.c[w].is_zero()) c.push_back(Json{w, to_text(e.h.c[w])});
    basis.push_back(Json{{"lambda", D.labels[e.lambda]}, {"s", e.s + 1}, {"t", e.t + 1}, {"T_coefficients", c}});
  }
  return Json{{"labels", D.labels}, {"primes", D.primes}, {"basis", basis}};
}

}  // namespace heckecell
