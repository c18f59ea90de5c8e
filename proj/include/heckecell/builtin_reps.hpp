#pragma once

// Built-in representations: one-dimensional, dihedral, seminormal (types A
// and B), W-graphs and explicit matrices read from JSON.

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heckecell/reps.hpp"
#include "heckecell/text.hpp"

namespace heckecell {

using Partition = std::vector<int>;
// One partition per component; type A uses a single component.
using Multipartition = std::vector<Partition>;

inline std::string partition_text(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

inline std::string shape_text(const Multipartition& mp) {
  if (mp.size() == 1) return partition_text(mp[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < mp.size(); ++i) s += (i ? "," : "") + partition_text(mp[i]);
  return s + ")";
}

// Accepts "(2,1)", "2,1", "((1),(1))", "((),(2))".
inline Multipartition parse_shape(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto bad = [&]() { return InputError("invalid shape '" + text + "'"); };
  auto parse_part = [&](std::string body) {
    Partition p;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) throw bad();
      int k = std::stoi(tok);
      if (k == 0) continue;
      p.push_back(k);
    }
    if (!std::is_sorted(p.rbegin(), p.rend())) throw bad();
    return p;
  };
  if (t.size() >= 2 && t[0] == '(' && t[1] == '(') {
    if (t.back() != ')') throw bad();
    Multipartition mp;
    std::size_t i = 1;
    while (i < t.size() - 1) {
      if (t[i] != '(') throw bad();
      std::size_t j = t.find(')', i);
      if (j == std::string::npos) throw bad();
      mp.push_back(parse_part(t.substr(i + 1, j - i - 1)));
      i = j + 1;
      if (i < t.size() - 1) {
        if (t[i] != ',') throw bad();
        ++i;
      }
    }
    return mp;
  }
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw bad();
    t = t.substr(1, t.size() - 2);
  }
  return {parse_part(t)};
}

inline int shape_size(const Multipartition& mp) {
  int n = 0;
  for (const auto& p : mp)
    for (int k : p) n += k;
  return n;
}

inline std::vector<Partition> partitions_of(int n, int max_part = -1) {
  if (max_part < 0) max_part = n;
  if (n == 0) return {Partition{}};
  std::vector<Partition> out;
  for (int k = std::min(n, max_part); k >= 1; --k)
    for (auto rest : partitions_of(n - k, k)) {
      rest.insert(rest.begin(), k);
      out.push_back(rest);
    }
  return out;
}

namespace detail {

struct Cell {
  int comp, row, col;
  friend bool operator<(const Cell& a, const Cell& b) {
    return std::tie(a.comp, a.row, a.col) < std::tie(b.comp, b.row, b.col);
  }
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Standard tableaux of a multipartition; t[k] is the cell holding k+1.
inline std::vector<std::vector<Cell>> standard_tableaux(const Multipartition& mp) {
  std::vector<std::vector<Cell>> out;
  std::vector<std::vector<int>> filled(mp.size());
  for (std::size_t c = 0; c < mp.size(); ++c) filled[c].assign(mp[c].size(), 0);
  std::vector<Cell> cur;
  const int n = shape_size(mp);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = 0; c < mp.size(); ++c)
      for (std::size_t r = 0; r < mp[c].size(); ++r) {
        int col = filled[c][r];
        if (col >= mp[c][r]) continue;
        if (r > 0 && filled[c][r - 1] <= col) continue;
        cur.push_back({static_cast<int>(c), static_cast<int>(r), col});
        ++filled[c][r];
        self(self);
        --filled[c][r];
        cur.pop_back();
      }
  };
  rec(rec);
  return out;
}

}  // namespace detail

// T_s -> v_s for sign +1, -v_s^{-1} for sign -1; one sign per class.
inline MatrixRep rep_onedim(const HeckeAlgebra& H, const std::vector<int>& class_signs) {
  const CoxeterGroup& g = H.group();
  if (static_cast<int>(class_signs.size()) != g.num_classes())
    throw InputError("one sign per conjugacy class of generators is required");
  std::vector<KMatrix> gens;
  std::string label = "1[";
  for (int c = 0; c < g.num_classes(); ++c) {
    if (class_signs[c] != 1 && class_signs[c] != -1) throw InputError("signs must be +1 or -1");
    label += class_signs[c] > 0 ? '+' : '-';
  }
  label += "]";
  for (int s = 0; s < g.rank(); ++s) {
    KMatrix m(1, 1);
    m(0, 0) = class_signs[g.class_of(s)] > 0 ? KScalar(H.v(s)) : KScalar(-H.v_inv(s));
    gens.push_back(m);
  }
  return make_rep(label, "onedim", gens, H.gamma_rank());
}

inline MatrixRep rep_index(const HeckeAlgebra& H) {
  return rep_onedim(H, std::vector<int>(H.group().num_classes(), 1));
}
inline MatrixRep rep_sign(const HeckeAlgebra& H) {
  return rep_onedim(H, std::vector<int>(H.group().num_classes(), -1));
}

inline int dihedral_order(const CoxeterGroup& g) {
  if (g.rank() != 2) throw InputError("dihedral representations need a rank-2 group");
  return g.m(0, 1);
}

inline int dihedral_max_j(int m) { return m % 2 == 0 ? (m - 2) / 2 : (m - 1) / 2; }

// mu_j = v1 v2^{-1} + zeta^j + zeta^{-j} + v1^{-1} v2.
inline LaurentPoly dihedral_mu(const HeckeAlgebra& H, int j) {
  const CoxeterGroup& g = H.group();
  const int m = dihedral_order(g);
  const int k = H.gamma_rank();
  return H.v(0) * H.v_inv(1) + LaurentPoly::constant(k, g.two_cos(m, j)) + H.v_inv(0) * H.v(1);
}

// Generator 0 plays s1 and generator 1 plays s2.
//   T_s1 -> [[-v1^-1, 0], [mu, v1]],  T_s2 -> [[v2, 1], [0, -v2^-1]]
//   Omega = [[v1 mu (v2 + v2^-1), v1 mu], [v1 mu, v1 (v1 + v1^-1)]]
// The (2,2) entries carry v1, as the quadratic relation for T_s1 and the
// intertwining property require once v1 != v2.
inline MatrixRep rep_dihedral(const HeckeAlgebra& H, int j) {
  const CoxeterGroup& g = H.group();
  const int m = dihedral_order(g);
  if (j < 1 || j > dihedral_max_j(m))
    throw InputError("dihedral index j=" + std::to_string(j) + " out of range 1.." + std::to_string(dihedral_max_j(m)));
  const int k = H.gamma_rank();
  LaurentPoly mu = dihedral_mu(H, j);
  KMatrix t1(2, 2), t2(2, 2);
  t1(0, 0) = KScalar(-H.v_inv(0));
  t1(1, 0) = KScalar(mu);
  t1(1, 1) = KScalar(H.v(0));
  t2(0, 0) = KScalar(H.v(1));
  t2(0, 1) = KScalar(LaurentPoly::one(k));
  t2(1, 1) = KScalar(-H.v_inv(1));
  MatrixRep rep = make_rep("rho_" + std::to_string(j), "dihedral", {t1, t2}, k);
  LMatrix omega(2, 2);
  LaurentPoly v1mu = H.v(0) * mu;
  omega(0, 0) = v1mu * (H.v(1) + H.v_inv(1));
  omega(0, 1) = v1mu;
  omega(1, 0) = v1mu;
  omega(1, 1) = H.v(0) * (H.v(0) + H.v_inv(0));
  rep.known_gram = omega;
  return rep;
}

// Seminormal form for type A (one component) and type B (two components).
inline MatrixRep rep_seminormal(const HeckeAlgebra& H, const Multipartition& shape) {
  const CoxeterGroup& g = H.group();
  const std::string& name = g.name();
  const bool type_b = !name.empty() && name[0] == 'B';
  const bool type_a = !name.empty() && name[0] == 'A';
  if (!type_a && !type_b) throw InputError("seminormal representations exist for types A and B only");
  const int n = g.rank();
  const int k = H.gamma_rank();
  if (type_a && (shape.size() != 1 || shape_size(shape) != n + 1))
    throw InputError("invalid shape " + shape_text(shape) + " for " + name + ": need a partition of " + std::to_string(n + 1));
  if (type_b && (shape.size() != 2 || shape_size(shape) != n))
    throw InputError("invalid shape " + shape_text(shape) + " for " + name + ": need a bipartition of " + std::to_string(n));

  // Contents sign * eps^exp.
  const ExponentVec L0 = H.weights().values[0];
  const ExponentVec L1 = type_b ? H.weights().values[1] : L0;
  auto content = [&](const detail::Cell& c) -> LaurentPoly {
    ExponentVec e(k);
    for (int t = 0; t < 2 * (c.col - c.row); ++t) e += L1;
    for (int t = 0; t < 2 * (c.row - c.col); ++t) e -= L1;
    if (!type_b) return LaurentPoly::monomial(e);
    if (c.comp == 0) return LaurentPoly::monomial(e + L0);
    return LaurentPoly::monomial(e - L0, FieldScalar(-1));
  };

  auto tabs = detail::standard_tableaux(shape);
  const int d = static_cast<int>(tabs.size());
  std::map<std::vector<detail::Cell>, int> index;
  for (int i = 0; i < d; ++i) index[tabs[i]] = i;

  const KScalar one(LaurentPoly::one(k));
  std::vector<KMatrix> gens;
  for (int s = 0; s < n; ++s) {
    KMatrix m(d, d);
    const KScalar v(H.v(s)), vinv(H.v_inv(s));
    for (int x = 0; x < d; ++x) {
      const auto& t = tabs[x];
      if (type_b && s == 0) {
        m(x, x) = t[0].comp == 0 ? v : -vinv;
        continue;
      }
      // Entries i, i+1 (0-based positions) swapped by this generator.
      const int i = type_b ? s - 1 : s;
      const auto& a = t[i];
      const auto& b = t[i + 1];
      if (a.comp == b.comp && a.row == b.row) {
        m(x, x) = v;
        continue;
      }
      if (a.comp == b.comp && a.col == b.col) {
        m(x, x) = -vinv;
        continue;
      }
      LaurentPoly ca = content(a), cb = content(b);
      // r = c_i / c_{i+1}; both are monomials.
      LaurentPoly r = ca * LaurentPoly::monomial(-cb.terms()[0].exp, cb.terms()[0].coef.inverse());
      KScalar diag = KScalar(H.v_diff(s), LaurentPoly::one(k) - r);
      const auto& rt = r.terms()[0];
      LaurentPoly rinv = LaurentPoly::monomial(-rt.exp, rt.coef.inverse());
      KScalar diag_other = KScalar(H.v_diff(s), LaurentPoly::one(k) - rinv);
      auto u = t;
      std::swap(u[i], u[i + 1]);
      const int y = index.at(u);
      m(x, x) = diag;
      const bool first = std::tie(a.comp, a.row) < std::tie(b.comp, b.row);
      // Column x holds the image of e_x.
      m(y, x) = first ? one : one + diag * diag_other;
    }
    gens.push_back(m);
  }
  return make_rep(shape_text(shape), "seminormal", gens, k);
}

// W-graph data: I-sets per vertex (generator indices) and symmetric edge weights.
struct WGraph {
  std::vector<std::vector<int>> isets;
  struct Edge {
    int u, v;
    LaurentPoly weight;
  };
  std::vector<Edge> edges;
};

// s in I(x): T_s e_x = -v_s^{-1} e_x;
// otherwise T_s e_x = v_s e_x + sum over y with s in I(y) of mu(x,y) e_y.
inline MatrixRep rep_from_wgraph(const HeckeAlgebra& H, const WGraph& wg, std::string label) {
  const CoxeterGroup& g = H.group();
  const int d = static_cast<int>(wg.isets.size());
  if (d == 0) throw InputError("W-graph has no vertices");
  std::vector<std::vector<LaurentPoly>> mu(d, std::vector<LaurentPoly>(d));
  for (const auto& e : wg.edges) {
    if (e.u < 0 || e.u >= d || e.v < 0 || e.v >= d || e.u == e.v) throw InputError("W-graph edge has invalid endpoints");
    mu[e.u][e.v] += e.weight;
    mu[e.v][e.u] += e.weight;
  }
  std::vector<std::uint32_t> iset(d, 0);
  for (int x = 0; x < d; ++x)
    for (int s : wg.isets[x]) {
      if (s < 0 || s >= g.rank()) throw InputError("W-graph I-set names an unknown generator");
      iset[x] |= 1u << s;
    }
  std::vector<KMatrix> gens;
  for (int s = 0; s < g.rank(); ++s) {
    KMatrix m(d, d);
    for (int x = 0; x < d; ++x) {
      if ((iset[x] >> s) & 1u) {
        m(x, x) = KScalar(-H.v_inv(s));
        continue;
      }
      m(x, x) = KScalar(H.v(s));
      for (int y = 0; y < d; ++y)
        if (((iset[y] >> s) & 1u) && !mu[x][y].is_zero()) m(y, x) = KScalar(mu[x][y]);
    }
    gens.push_back(m);
  }
  return make_rep(std::move(label), "wgraph", gens, H.gamma_rank());
}

// Matrices of KScalar text, one per generator name.
inline nlohmann::json rep_to_json(const MatrixRep& rep, const CoxeterGroup& g) {
  nlohmann::json j;
  j["label"] = rep.label;
  j["dim"] = rep.dim;
  nlohmann::json gens = nlohmann::json::object();
  for (int s = 0; s < g.rank(); ++s) {
    KMatrix m = rep.gens[s].to_kmatrix();
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols; ++c) row.push_back(to_text(m(i, c)));
      rows.push_back(row);
    }
    gens[g.generator_names()[s]] = rows;
  }
  j["generators"] = gens;
  return j;
}

inline MatrixRep rep_from_json(const nlohmann::json& j, const HeckeAlgebra& H, bool validate = true) {
  const CoxeterGroup& g = H.group();
  const NumberField* field = g.field_ptr();
  const int k = H.gamma_rank();
  auto text_of = [](const nlohmann::json& x) -> std::string {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_number_integer()) return std::to_string(x.get<long>());
    throw InputError("matrix entries must be strings or integers");
  };
  MatrixRep rep;
  try {
    std::string label = j.value("label", std::string("rep"));
    if (j.contains("wgraph")) {
      const auto& w = j.at("wgraph");
      WGraph wg;
      for (const auto& vtx : w.at("vertices")) {
        std::vector<int> is;
        for (const auto& s : vtx.at("Iset")) is.push_back(g.generator_index(s.get<std::string>()));
        wg.isets.push_back(is);
      }
      if (w.contains("edges"))
        for (const auto& e : w.at("edges"))
          wg.edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                              e.contains("weight") ? parse_laurent(text_of(e.at("weight")), field, k)
                                                   : LaurentPoly::one(k)});
      rep = rep_from_wgraph(H, wg, label);
    } else {
      const auto& gj = j.at("generators");
      std::vector<KMatrix> gens;
      const int dim = j.at("dim").get<int>();
      if (dim <= 0) throw InputError("dim must be positive");
      for (int s = 0; s < g.rank(); ++s) {
        const std::string& nm = g.generator_names()[s];
        if (!gj.contains(nm)) throw InputError("missing matrix for generator " + nm);
        const auto& rows = gj.at(nm);
        if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
          throw InputError("matrix for " + nm + " must have " + std::to_string(dim) + " rows");
        KMatrix m(dim, dim);
        for (int i = 0; i < dim; ++i) {
          if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim)
            throw InputError("matrix for " + nm + " must be square");
          for (int c = 0; c < dim; ++c) m(i, c) = parse_kscalar(text_of(rows[i][c]), field, k);
        }
        gens.push_back(m);
      }
      if (static_cast<int>(gj.size()) != g.rank()) throw InputError("generator matrices name unknown generators");
      rep = make_rep(label, "explicit", gens, k);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed representation file: ") + e.what());
  }
  if (validate) {
    RelationReport r = validate_relations(rep, H);
    if (!r.ok) throw VerificationError(r.message);
  }
  return rep;
}

inline MatrixRep load_rep(const std::string& path, const HeckeAlgebra& H) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open representation file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("parse error in '" + path + "': " + e.what());
  }
  return rep_from_json(j, H);
}

// One representative per irreducible for the systems with a built-in family.
// H3 needs the W-graph of its 3-dimensional pair from a data file.
inline std::vector<MatrixRep> complete_family(const HeckeAlgebra& H) {
  const CoxeterGroup& g = H.group();
  const std::string& name = g.name();
  std::vector<MatrixRep> out;
  if (name[0] == 'A') {
    for (const auto& p : partitions_of(g.rank() + 1)) out.push_back(rep_seminormal(H, {p}));
    return out;
  }
  if (name[0] == 'B') {
    const int n = g.rank();
    for (int a = n; a >= 0; --a)
      for (const auto& p : partitions_of(a))
        for (const auto& q : partitions_of(n - a)) out.push_back(rep_seminormal(H, {p, q}));
    return out;
  }
  if (name.rfind("I2:", 0) == 0) {
    const int classes = g.num_classes();
    for (int mask = 0; mask < (1 << classes); ++mask) {
      std::vector<int> signs(classes);
      for (int c = 0; c < classes; ++c) signs[c] = (mask >> c) & 1 ? -1 : 1;
      out.push_back(rep_onedim(H, signs));
    }
    for (int j = 1; j <= dihedral_max_j(g.m(0, 1)); ++j) out.push_back(rep_dihedral(H, j));
    return out;
  }
  throw InputError("no built-in complete family for " + name + "; supply representation files");
}

}  // namespace heckecell
