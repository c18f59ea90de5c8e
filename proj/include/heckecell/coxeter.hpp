#pragma once

// Finite Coxeter groups: enumeration via the reflection representation,
// multiplication tables, descents, generator conjugacy and weight functions.

#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "heckecell/text.hpp"

namespace heckecell {

struct CoxeterMatrix {
  std::string name;  // e.g. "B3", or "custom"
  std::vector<std::string> generators;
  std::vector<std::vector<int>> m;

  int rank() const { return static_cast<int>(generators.size()); }
};

namespace detail {

inline CoxeterMatrix path_matrix(std::string name, int n, int first_index) {
  CoxeterMatrix cm;
  cm.name = std::move(name);
  cm.m.assign(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) {
    cm.generators.push_back("s" + std::to_string(i + first_index));
    cm.m[i][i] = 1;
    if (i + 1 < n) cm.m[i][i + 1] = cm.m[i + 1][i] = 3;
  }
  return cm;
}

// 2cos(2*pi*j/m) for the orders whose cosines are rational.
inline bool rational_two_cos(int m, long j, long& out) {
  static const std::unordered_map<int, std::vector<long>> table{
      {1, {2}}, {2, {2, -2}}, {3, {2, -1, -1}}, {4, {2, 0, -2, 0}}, {6, {2, 1, -1, -2, -1, 1}}};
  auto it = table.find(m);
  if (it == table.end()) return false;
  out = it->second[((j % m) + m) % m];
  return true;
}

}  // namespace detail

// Built-in names: "A1".."A4", "B2", "B3", "I2:m" (3 <= m <= 12), "H3".
// Larger A_n/B_n are accepted as well; they only take longer.
inline CoxeterMatrix coxeter_type(const std::string& name) {
  auto bad = [&]() { return InputError("unknown Coxeter type '" + name + "'"); };
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B') && name.find(':') == std::string::npos) {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (...) {
      throw bad();
    }
    if (name[0] == 'A') {
      if (n < 1 || n > 7) throw bad();
      return detail::path_matrix(name, n, 1);
    }
    if (n < 2 || n > 5) throw bad();
    CoxeterMatrix cm = detail::path_matrix(name, n, 0);
    cm.m[0][1] = cm.m[1][0] = 4;
    return cm;
  }
  if (name.rfind("I2:", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(name.substr(3));
    } catch (...) {
      throw bad();
    }
    if (m < 3 || m > 30) throw bad();
    CoxeterMatrix cm = detail::path_matrix(name, 2, 1);
    cm.m[0][1] = cm.m[1][0] = m;
    return cm;
  }
  if (name == "H3") {
    CoxeterMatrix cm = detail::path_matrix(name, 3, 1);
    cm.m[0][1] = cm.m[1][0] = 5;
    return cm;
  }
  throw bad();
}

class CoxeterGroup {
 public:
  static constexpr std::size_t kDefaultBound = 50000;
  static constexpr std::size_t kFullTableLimit = 2000;

  explicit CoxeterGroup(CoxeterMatrix cm, std::size_t bound = kDefaultBound) : cm_(std::move(cm)) {
    validate_matrix();
    conductor_ = 1;
    for (const auto& row : cm_.m)
      for (int m : row) {
        long dummy;
        if (!detail::rational_two_cos(m, 1, dummy)) conductor_ = std::lcm(conductor_, m);
      }
    field_ = &NumberField::real_cyclotomic(conductor_);
    enumerate(bound);
    compute_classes();
  }

  const CoxeterMatrix& matrix() const { return cm_; }
  const std::string& name() const { return cm_.name; }
  int rank() const { return cm_.rank(); }
  int m(int s, int t) const { return cm_.m[s][t]; }
  const std::vector<std::string>& generator_names() const { return cm_.generators; }
  int generator_index(const std::string& name) const {
    for (int i = 0; i < rank(); ++i)
      if (cm_.generators[i] == name) return i;
    throw InputError("unknown generator '" + name + "'");
  }

  // Conductor N of the coefficient field Q(2cos(2pi/N)); see two_cos.
  int conductor() const { return conductor_; }
  const NumberField& field() const { return *field_; }
  const NumberField* field_ptr() const { return field_->degree() > 1 ? field_ : nullptr; }

  // 2cos(2*pi*j/m) in the coefficient field; m must divide N or have a rational cosine.
  FieldScalar two_cos(int m, long j) const {
    long r;
    if (detail::rational_two_cos(m, j, r)) return FieldScalar(r);
    if (conductor_ % m != 0) throw InternalError("cosine outside the coefficient field");
    return FieldScalar::two_cos(*field_, j * (conductor_ / m));
  }

  int size() const { return static_cast<int>(length_.size()); }
  int identity() const { return 0; }
  int generator(int s) const { return gen_id_[s]; }
  int length(int w) const { return length_[w]; }
  const std::vector<int>& word(int w) const { return word_[w]; }
  int inverse(int w) const { return inverse_[w]; }
  int lmul(int s, int w) const { return lmul_[w * rank() + s]; }
  int rmul(int w, int s) const { return rmul_[w * rank() + s]; }
  int longest() const { return size() - 1; }
  int max_length() const { return length_.back(); }

  int mul(int x, int y) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(x) * size() + y];
    for (int s : word_[y]) x = rmul(x, s);
    return x;
  }

  int from_word(const std::vector<int>& w) const {
    int x = identity();
    for (int s : w) x = rmul(x, s);
    return x;
  }

  std::uint32_t left_descents(int w) const { return ldes_[w]; }
  std::uint32_t right_descents(int w) const { return rdes_[w]; }
  bool in_left_descent(int s, int w) const { return (ldes_[w] >> s) & 1u; }
  bool in_right_descent(int w, int s) const { return (rdes_[w] >> s) & 1u; }

  // Generator conjugacy classes, numbered by first appearance when scanning
  // generators from last to first.
  int num_classes() const { return num_classes_; }
  int class_of(int s) const { return class_of_[s]; }

  // Bruhat order via the lifting property.
  bool bruhat_le(int y, int w) const {
    if (length_[y] > length_[w]) return false;
    if (y == w) return true;
    if (w == identity()) return false;
    int s = word_[w][0];
    int sw = lmul(s, w);
    if (in_left_descent(s, y)) return bruhat_le(lmul(s, y), sw);
    return bruhat_le(y, sw);
  }

  std::string word_string(int w) const {
    if (word_[w].empty()) return "1";
    std::string out;
    for (int s : word_[w]) out += cm_.generators[s];
    return out;
  }

  std::vector<int> parse_word(const std::string& text) const {
    std::vector<int> out;
    if (text == "1" || text.empty()) return out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      int best = -1;
      std::size_t best_len = 0;
      for (int i = 0; i < rank(); ++i) {
        const auto& g = cm_.generators[i];
        if (text.compare(pos, g.size(), g) == 0 && g.size() > best_len) {
          best = i;
          best_len = g.size();
        }
      }
      if (best < 0) throw InputError("cannot parse word '" + text + "'");
      out.push_back(best);
      pos += best_len;
    }
    return out;
  }

 private:
  void validate_matrix() {
    const int n = cm_.rank();
    if (n < 1 || n > 30) throw InputError("Coxeter rank must be between 1 and 30");
    if (static_cast<int>(cm_.m.size()) != n) throw InputError("Coxeter matrix has wrong size");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(cm_.m[i].size()) != n) throw InputError("Coxeter matrix has wrong size");
      if (cm_.m[i][i] != 1) throw InputError("Coxeter matrix must have 1 on the diagonal");
      for (int j = 0; j < n; ++j) {
        if (cm_.m[i][j] != cm_.m[j][i]) throw InputError("Coxeter matrix must be symmetric");
        if (i != j && (cm_.m[i][j] < 2 || cm_.m[i][j] > 60))
          throw InputError("Coxeter matrix entries must lie in 2..60 off the diagonal");
      }
    }
    // Finite Coxeter graphs are forests; the reflection matrices below rely on it.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (cm_.m[i][j] >= 3) {
          int a = find(i), b = find(j);
          if (a == b) throw Error("group not finite or bound too small");
          parent[a] = b;
        }
  }

  using Matrix = std::vector<FieldScalar>;

  Matrix matmul(const Matrix& a, const Matrix& b) const {
    const int n = rank();
    Matrix c(n * n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (a[i * n + k].is_zero()) continue;
        for (int j = 0; j < n; ++j)
          if (!b[k * n + j].is_zero()) c[i * n + j] += a[i * n + k] * b[k * n + j];
      }
    return c;
  }

  static std::string key(const Matrix& a) {
    std::string k;
    for (const auto& x : a) {
      k += to_text(x);
      k += '|';
    }
    return k;
  }

  // Non-symmetric Cartan matrix: A_ts = -1, A_st = -(2 + 2cos(2pi/m)) for s < t.
  std::vector<Matrix> reflections() const {
    const int n = rank();
    std::vector<Matrix> out;
    for (int s = 0; s < n; ++s) {
      Matrix r(n * n);
      for (int i = 0; i < n; ++i) r[i * n + i] = FieldScalar(1);
      for (int t = 0; t < n; ++t) {
        FieldScalar a;
        if (t == s) {
          a = FieldScalar(2);
        } else if (cm_.m[s][t] != 2) {
          if (s < t)
            a = -(FieldScalar(2) + two_cos(cm_.m[s][t], 1));
          else
            a = FieldScalar(-1);
        }
        r[s * n + t] -= a;
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  void enumerate(std::size_t bound) {
    const int n = rank();
    const std::vector<Matrix> gens = reflections();
    std::vector<Matrix> mats;
    std::unordered_map<std::string, int> index;
    Matrix id(n * n);
    for (int i = 0; i < n; ++i) id[i * n + i] = FieldScalar(1);
    mats.push_back(id);
    index.emplace(key(id), 0);
    length_.push_back(0);
    word_.emplace_back();
    // BFS; processing ids in order and generators in increasing order
    // assigns ShortLex-least words and ShortLex-sorted ids.
    for (std::size_t w = 0; w < mats.size(); ++w) {
      for (int s = 0; s < n; ++s) {
        Matrix prod = matmul(mats[w], gens[s]);
        std::string k = key(prod);
        auto it = index.find(k);
        int id_ws;
        if (it == index.end()) {
          if (mats.size() >= bound) throw Error("group not finite or bound too small");
          id_ws = static_cast<int>(mats.size());
          index.emplace(std::move(k), id_ws);
          mats.push_back(std::move(prod));
          length_.push_back(length_[w] + 1);
          auto wd = word_[w];
          wd.push_back(s);
          word_.push_back(std::move(wd));
        } else {
          id_ws = it->second;
        }
        rmul_.resize(mats.size() * n, -1);
        rmul_[w * n + s] = id_ws;
      }
    }
    const int N = size();
    rmul_.resize(static_cast<std::size_t>(N) * n);
    lmul_.assign(static_cast<std::size_t>(N) * n, -1);
    for (int w = 0; w < N; ++w)
      for (int s = 0; s < n; ++s) lmul_[w * n + s] = index.at(key(matmul(gens[s], mats[w])));
    gen_id_.resize(n);
    for (int s = 0; s < n; ++s) gen_id_[s] = rmul(0, s);
    inverse_.resize(N);
    for (int w = 0; w < N; ++w) {
      int x = 0;
      for (auto it = word_[w].rbegin(); it != word_[w].rend(); ++it) x = rmul(x, *it);
      inverse_[w] = x;
    }
    ldes_.assign(N, 0);
    rdes_.assign(N, 0);
    for (int w = 0; w < N; ++w)
      for (int s = 0; s < n; ++s) {
        if (length_[lmul(s, w)] < length_[w]) ldes_[w] |= 1u << s;
        if (length_[rmul(w, s)] < length_[w]) rdes_[w] |= 1u << s;
      }
    if (static_cast<std::size_t>(N) <= kFullTableLimit) {
      table_.resize(static_cast<std::size_t>(N) * N);
      for (int x = 0; x < N; ++x) {
        table_[static_cast<std::size_t>(x) * N] = x;
        for (int y = 1; y < N; ++y) {
          int prefix = rmul(y, word_[y].back());  // y with its last letter removed
          table_[static_cast<std::size_t>(x) * N + y] = rmul(table_[static_cast<std::size_t>(x) * N + prefix], word_[y].back());
        }
      }
    }
  }

  void compute_classes() {
    const int n = rank();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t)
        if (cm_.m[s][t] % 2 == 1) parent[find(s)] = find(t);
    std::vector<int> label(n, -1);
    class_of_.assign(n, -1);
    num_classes_ = 0;
    for (int s = n - 1; s >= 0; --s) {
      int r = find(s);
      if (label[r] < 0) label[r] = num_classes_++;
      class_of_[s] = label[r];
    }
  }

  CoxeterMatrix cm_;
  int conductor_ = 1;
  const NumberField* field_ = nullptr;
  std::vector<int> length_;
  std::vector<std::vector<int>> word_;
  std::vector<int> rmul_, lmul_, gen_id_, inverse_;
  std::vector<std::uint32_t> ldes_, rdes_;
  std::vector<int> table_;
  std::vector<int> class_of_;
  int num_classes_ = 0;
};

// A weight function, recorded by its values on the generators.
struct WeightFunction {
  int rank = 1;  // rank of Gamma
  std::vector<ExponentVec> values;

  ExponentVec of(const CoxeterGroup& g, int w) const {
    ExponentVec r(rank);
    for (int s : g.word(w)) r += values[s];
    return r;
  }
};

inline WeightFunction weight_universal(const CoxeterGroup& g) {
  WeightFunction L;
  L.rank = g.num_classes();
  for (int s = 0; s < g.rank(); ++s) L.values.push_back(ExponentVec::unit(L.rank, g.class_of(s)));
  return L;
}

inline WeightFunction weight_equal(const CoxeterGroup& g) {
  WeightFunction L;
  L.rank = 1;
  L.values.assign(g.rank(), ExponentVec{1});
  return L;
}

struct WeightReport {
  bool ok = true;
  std::string message;
};

inline WeightReport validate_weight(const CoxeterGroup& g, const WeightFunction& L, const MonomialOrder& ord) {
  if (static_cast<int>(L.values.size()) != g.rank()) return {false, "weight function has wrong number of values"};
  if (ord.rank() != L.rank) return {false, "monomial order rank differs from weight rank"};
  for (int s = 0; s < g.rank(); ++s) {
    if (L.values[s].rank() != L.rank) return {false, "weight vector has wrong rank"};
    for (int t = 0; t < g.rank(); ++t)
      if (g.class_of(s) == g.class_of(t) && !(L.values[s] == L.values[t]))
        return {false, "conjugate generators with unequal weights"};
  }
  for (int s = 0; s < g.rank(); ++s)
    if (!ord.positive(L.values[s])) return {false, "L(s) > 0 fails"};
  return {};
}

}  // namespace heckecell
