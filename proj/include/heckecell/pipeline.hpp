#pragma once

// Job configuration and the staged pipeline kl -> reps -> jring -> cell,
// with JSON artifacts, a findings file and a text report.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "heckecell/io.hpp"

namespace heckecell {

inline const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> s{"kl", "reps", "jring", "cell"};
  return s;
}

// Verification suites and the stage that runs each one.
inline const std::vector<std::pair<std::string, std::string>>& suite_stages() {
  static const std::vector<std::pair<std::string, std::string>> s{
      {"relations", "reps"}, {"schur", "reps"}, {"ring", "jring"},  {"rho-bar", "jring"},   {"compare-kl", "jring"},
      {"cell", "cell"},      {"phi", "cell"},   {"p15", "cell"},    {"specialize", "cell"}};
  return s;
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);)
    if (!trim(part).empty()) out.push_back(trim(part));
  return out;
}

inline int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (...) {
  }
  throw InputError("expected an integer, got '" + s + "'");
}

// "a,b;c,d" -> [[a,b],[c,d]]
inline Json vectors_from_text(const std::string& s) {
  Json out = Json::array();
  for (const auto& v : split(s, ';')) {
    Json row = Json::array();
    for (const auto& x : split(v, ',')) row.push_back(to_int(x));
    out.push_back(row);
  }
  return out;
}

}  // namespace detail

// "B3", "I2:7", or {"name", "generators", "m"} with an explicit Coxeter matrix.
inline CoxeterMatrix system_from_json(const Json& j) {
  if (j.is_string()) return coxeter_type(j.get<std::string>());
  if (!j.is_object() || !j.contains("m")) throw InputError("system must be a type name or an object with a matrix 'm'");
  CoxeterMatrix cm;
  cm.name = j.value("name", std::string("custom"));
  try {
    cm.m = j.at("m").get<std::vector<std::vector<int>>>();
  } catch (const Json::exception&) {
    throw InputError("Coxeter matrix must be a square array of integers");
  }
  const int n = static_cast<int>(cm.m.size());
  if (n == 0) throw InputError("Coxeter matrix is empty");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cm.m[i].size()) != n) throw InputError("Coxeter matrix is not square");
    for (int k = 0; k < n; ++k) {
      if (cm.m[i][k] != cm.m[k][i]) throw InputError("Coxeter matrix is not symmetric");
      if ((i == k) != (cm.m[i][k] == 1) || cm.m[i][k] < 1) throw InputError("invalid Coxeter matrix entry");
    }
  }
  if (j.contains("generators")) {
    cm.generators = j.at("generators").get<std::vector<std::string>>();
    if (static_cast<int>(cm.generators.size()) != n) throw InputError("generator list has the wrong length");
  } else {
    for (int i = 0; i < n; ++i) cm.generators.push_back("s" + std::to_string(i + 1));
  }
  return cm;
}

// "equal", "universal", "2;1", "1,0;0,1", or the same as JSON arrays.
inline WeightFunction weights_from_json(const Json& j, const CoxeterGroup& g) {
  Json v = j;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "equal") return weight_equal(g);
    if (s == "universal") return weight_universal(g);
    v = detail::vectors_from_text(s);
  }
  if (!v.is_array() || static_cast<int>(v.size()) != g.rank())
    throw InputError("weights need one entry per generator (" + std::to_string(g.rank()) + ")");
  WeightFunction L;
  L.rank = -1;
  for (const auto& x : v) {
    std::vector<int> e;
    if (x.is_number_integer())
      e.push_back(x.get<int>());
    else if (x.is_array())
      for (const auto& c : x) e.push_back(c.get<int>());
    else
      throw InputError("weight entries must be integers or integer arrays");
    if (L.rank < 0) L.rank = static_cast<int>(e.size());
    if (static_cast<int>(e.size()) != L.rank || e.empty() || L.rank > kMaxRank)
      throw InputError("weight vectors must share one rank between 1 and " + std::to_string(kMaxRank));
    L.values.push_back(ExponentVec(e));
  }
  return L;
}

// "natural", "reverse", "1,0", or a JSON priority list.
inline MonomialOrder order_from_json(const Json& j, int rank) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "natural") return MonomialOrder::natural(rank);
    if (s == "reverse") {
      std::vector<int> p;
      for (int i = rank - 1; i >= 0; --i) p.push_back(i);
      return MonomialOrder(p);
    }
    std::vector<int> p;
    for (const auto& x : detail::split(s, ',')) p.push_back(detail::to_int(x));
    return MonomialOrder(p);
  }
  if (j.is_array()) return MonomialOrder(j.get<std::vector<int>>());
  throw InputError("order must be 'natural', 'reverse' or a priority list");
}

struct JobConfig {
  Json system = "A1";
  Json weights = "equal";
  Json order = "natural";
  std::vector<std::string> reps;  // representation files; empty means the built-in family
  std::vector<std::string> stages = stage_names();
  std::vector<std::string> verify = {"all"};
  std::optional<Json> target;  // weights for the specialization suite
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;  // artifact directory; empty writes nothing
  int exhaustive_limit = 16;
  long random_triples = 10000;
  long p15_samples = 100000;
  long phi_samples = 2000;

  bool has_stage(const std::string& s) const { return std::find(stages.begin(), stages.end(), s) != stages.end(); }
  bool verifies(const std::string& s) const { return std::find(verify.begin(), verify.end(), s) != verify.end(); }

  // Closes the stage list under dependencies, expands "all"/"none" and checks names and files.
  void normalize() {
    std::set<std::string> st(stages.begin(), stages.end());
    for (const auto& s : st)
      if (std::find(stage_names().begin(), stage_names().end(), s) == stage_names().end())
        throw InputError("unknown stage '" + s + "'");
    if (st.count("cell")) st.insert("jring");
    if (st.count("jring")) st.insert({"reps", "kl"});
    stages.clear();
    for (const auto& s : stage_names())
      if (st.count(s)) stages.push_back(s);
    std::set<std::string> v(verify.begin(), verify.end());
    if (v.count("all")) {
      v.erase("all");
      for (const auto& [s, stage] : suite_stages()) v.insert(s);
    }
    if (v.count("none")) v.clear();
    verify.clear();
    for (const auto& [s, stage] : suite_stages()) {
      if (v.count(s) && has_stage(stage) && (s != "specialize" || target)) verify.push_back(s);
      v.erase(s);
    }
    if (!v.empty()) throw InputError("unknown verification suite '" + *v.begin() + "'");
    for (const auto& f : reps)
      if (!std::filesystem::exists(f)) throw InputError("representation file '" + f + "' does not exist");
    if (jobs < 1) throw InputError("jobs must be positive");
  }

  static JobConfig from_json(const Json& j) {
    JobConfig c;
    try {
      for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const Json& v = it.value();
        if (k == "system")
          c.system = v;
        else if (k == "weights")
          c.weights = v;
        else if (k == "order")
          c.order = v;
        else if (k == "reps")
          c.reps = v.is_string() ? (v.get<std::string>() == "builtin" ? std::vector<std::string>{}
                                                                      : detail::split(v.get<std::string>(), ','))
                                 : v.get<std::vector<std::string>>();
        else if (k == "stages")
          c.stages = v.is_string() ? detail::split(v.get<std::string>(), ',') : v.get<std::vector<std::string>>();
        else if (k == "verify")
          c.verify = v.is_string() ? detail::split(v.get<std::string>(), ',') : v.get<std::vector<std::string>>();
        else if (k == "target")
          c.target = v;
        else if (k == "seed")
          c.seed = v.get<std::uint64_t>();
        else if (k == "jobs")
          c.jobs = v.get<int>();
        else if (k == "out")
          c.out = v.get<std::string>();
        else if (k == "exhaustive_limit")
          c.exhaustive_limit = v.get<int>();
        else if (k == "random_triples")
          c.random_triples = v.get<long>();
        else if (k == "p15_samples")
          c.p15_samples = v.get<long>();
        else if (k == "phi_samples")
          c.phi_samples = v.get<long>();
        else
          throw InputError("unknown config key '" + k + "'");
      }
    } catch (const Json::exception& e) {
      throw InputError(std::string("malformed config: ") + e.what());
    }
    return c;
  }

  Json to_json() const {
    Json j{{"system", system},
           {"weights", weights},
           {"order", order},
           {"reps", reps},
           {"stages", stages},
           {"verify", verify},
           {"seed", seed},
           {"jobs", jobs},
           {"exhaustive_limit", exhaustive_limit},
           {"random_triples", random_triples},
           {"p15_samples", p15_samples},
           {"phi_samples", phi_samples}};
    if (target) j["target"] = *target;
    return j;
  }
};

inline JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InputError("parse error in '" + path + "': " + e.what());
  }
  return JobConfig::from_json(j);
}

struct StageCheck {
  std::string stage;
  CheckResult result;
};

class Pipeline {
 public:
  explicit Pipeline(JobConfig cfg) : cfg_(std::move(cfg)), par_(1) {
    cfg_.normalize();
    par_ = Parallel(cfg_.jobs);
    g_ = std::make_unique<CoxeterGroup>(system_from_json(cfg_.system));
    WeightFunction L = weights_from_json(cfg_.weights, *g_);
    ord_ = order_from_json(cfg_.order, L.rank);
    WeightReport wr = validate_weight(*g_, L, ord_);
    if (!wr.ok) throw InputError("invalid weights: " + wr.message);
    H_ = std::make_unique<HeckeAlgebra>(*g_, L);
    if (cfg_.target) {
      target_ = weights_from_json(*cfg_.target, *g_);
      for (int s = 0; s < g_->rank(); ++s)
        for (int t = 0; t < g_->rank(); ++t)
          if (g_->class_of(s) == g_->class_of(t) && !(target_->values[s] == target_->values[t]))
            throw InputError("target weights differ on conjugate generators");
    }
  }

  const JobConfig& config() const { return cfg_; }
  const CoxeterGroup& group() const { return *g_; }
  const HeckeAlgebra& algebra() const { return *H_; }
  const MonomialOrder& order() const { return ord_; }
  const Parallel& parallel() const { return par_; }
  const std::vector<StageCheck>& checks() const { return checks_; }
  bool halted() const { return halted_; }
  bool failed() const {
    return std::any_of(checks_.begin(), checks_.end(), [](const StageCheck& c) { return !c.result.ok(); });
  }

  const KLBasis* kl() const { return kl_.get(); }
  const HTable* htable() const { return ht_.get(); }
  const AFunction* afunction() const { return af_ ? &*af_ : nullptr; }
  const LRPreorder* lr() const { return P_ ? &*P_ : nullptr; }
  const std::vector<MatrixRep>& input_reps() const { return input_; }
  const LeadingFamily* family() const { return fam_ ? &*fam_ : nullptr; }
  const GammaTable* gamma() const { return T_.get(); }
  const CellDatum* datum() const { return D_ ? &*D_ : nullptr; }
  const TCellDatum* specialized() const { return spec_ ? &*spec_ : nullptr; }
  const std::vector<AJElem>& phi() const { return phi_; }

  // Runs every configured stage, writes artifacts and returns 0 or 2.
  int run() {
    for (const auto& s : cfg_.stages) {
      if (halted_) break;
      run_stage(s);
    }
    write_artifacts();
    return failed() ? 2 : 0;
  }

  void run_stage(const std::string& s) {
    if (s == "kl")
      run_kl();
    else if (s == "reps")
      run_reps();
    else if (s == "jring")
      run_jring();
    else if (s == "cell")
      run_cell();
  }

  void run_kl() {
    if (kl_) return;
    kl_ = std::make_unique<KLBasis>(*H_, ord_, par_);
    ht_ = std::make_unique<HTable>(*kl_);
    ht_->fill_all(par_);
    af_ = a_function(*ht_, par_);
    P_ = lr_preorder(*ht_);
  }

  // Loads and validates the representations without building anything else.
  void load_reps() {
    if (loaded_) return;
    loaded_ = true;
    if (cfg_.reps.empty()) {
      input_ = complete_family(*H_);
    } else {
      for (const auto& f : cfg_.reps) input_.push_back(read_rep_unvalidated(f));
    }
    if (cfg_.verifies("relations") || !cfg_.reps.empty()) {
      detail::CheckRecorder rec("relations");
      for (const auto& r : input_) {
        RelationReport rr = validate_relations(r, *H_);
        rec.check(rr.ok, [&] { return r.label + ": " + rr.message; });
      }
      record("reps", rec.take());
      if (failed()) halted_ = true;
    }
  }

  void run_reps() {
    if (fam_ || halted_) return;
    load_reps();
    if (halted_) return;
    if (!guard("reps", "leading coefficients", [&] { fam_ = leading_family(*H_, ord_, input_, par_); })) return;
    if (cfg_.verifies("schur")) {
      guard("reps", "schur relations", [&] {
        SchurReport r = verify_schur_leading(fam_->tensors, *g_, par_);
        CheckResult c;
        c.name = "schur relations";
        long sq = 0;
        for (const auto& t : fam_->tensors) sq += static_cast<long>(t.dim) * t.dim;
        c.checked = sq * sq + static_cast<long>(g_->size()) * g_->size();
        c.violations = r.violations;
        c.samples = r.samples;
        record("reps", c);
      }, false);
    }
  }

  void run_jring() {
    if (T_ || halted_) return;
    run_reps();
    if (halted_) return;
    if (!guard("jring", "gamma table", [&] { T_ = std::make_unique<GammaTable>(*g_, fam_->tensors, par_); })) return;
    if (cfg_.verifies("ring")) {
      RingCheckOptions opt;
      opt.exhaustive_limit = cfg_.exhaustive_limit;
      opt.random_triples = cfg_.random_triples;
      opt.seed = cfg_.seed;
      for (auto& c : verify_ring(*T_, opt, par_).checks) record("jring", c);
    }
    if (cfg_.verifies("rho-bar")) record("jring", verify_rho_bar(*T_, 20, 2000, cfg_.seed, par_));
    if (cfg_.verifies("compare-kl")) {
      run_kl();
      KLComparison k = compare_gamma_kl(*T_, *ht_, *af_, par_);
      record("jring", k.gamma);
      record("jring", k.a_values);
    }
  }

  void run_cell() {
    if (D_ || halted_) return;
    run_jring();
    if (halted_) return;
    run_kl();
    if (!guard("cell", "cellular basis", [&] { D_ = cellular_basis(*fam_, *T_, *P_, *H_, ord_); })) return;
    phi_.assign(g_->size(), AJElem());
    par_.for_each(g_->size(), [&](int w) { phi_[w] = lusztig_phi(*T_, *ht_, *P_, w); });
    if (cfg_.verifies("cell")) {
      record("cell", verify_lambda_order(T_->blocks(), *P_, static_cast<int>(D_->labels.size())));
      CellReport r = verify_cell_datum(*D_, *ht_, *T_, par_);
      for (auto* c : {&r.c1, &r.c2, &r.c3, &r.blocks}) record("cell", *c);
    }
    if (cfg_.verifies("phi")) {
      PhiReport r = verify_phi(*T_, *ht_, *P_, cfg_.exhaustive_limit, cfg_.phi_samples, cfg_.seed, par_);
      for (auto* c : {&r.unital, &r.multiplicative, &r.filtration}) record("cell", *c);
    }
    if (cfg_.verifies("p15"))
      record("cell", verify_p15_tilde(*T_, *ht_, *P_, cfg_.exhaustive_limit, cfg_.p15_samples, cfg_.seed, par_));
    if (cfg_.verifies("specialize")) {
      guard("cell", "specialization", [&] {
        target_H_ = std::make_unique<HeckeAlgebra>(*g_, *target_);
        spec_ = specialize_weight(*D_, *kl_, *target_H_);
        CellReport r = verify_t_cell_datum(*spec_, *target_H_, par_);
        for (auto* c : {&r.c1, &r.c2, &r.c3}) {
          c->name = "specialized " + c->name;
          record("cell", *c);
        }
      }, false);
    }
  }

  // ------------------------------------------------------------ artifacts

  Json header(const std::string& stage) const {
    return Json{{"schema", kSchema}, {"stage", stage}, {"system", system_json(*H_, ord_)}, {"seed", cfg_.seed}};
  }

  Json checks_json(const std::string& stage) const {
    Json j = Json::array();
    for (const auto& c : checks_)
      if (c.stage == stage) j.push_back(to_json(c.result));
    return j;
  }

  Json kl_artifact() const {
    Json j = header("kl");
    j["tables"] = to_json(kl_dump(*ht_, *af_, *P_));
    return j;
  }

  Json reps_artifact() const {
    Json j = header("reps");
    Json reps = Json::array();
    for (std::size_t i = 0; i < input_.size(); ++i) {
      Json r{{"label", input_[i].label}, {"kind", input_[i].kind}, {"dim", input_[i].dim}};
      if (fam_) {
        r["rebalanced"] = static_cast<bool>(fam_->rebalanced[i]);
        r["schur"] = to_json(fam_->schur[i]);
        r["balanced"] = rep_to_json(fam_->reps[i], *g_);
      }
      reps.push_back(r);
    }
    j["representations"] = reps;
    j["checks"] = checks_json("reps");
    return j;
  }

  Json jring_artifact() const {
    Json j = header("jring");
    j["table"] = to_json(*T_);
    j["checks"] = checks_json("jring");
    return j;
  }

  Json cell_artifact() const {
    Json j = header("cell");
    j["datum"] = to_json(*D_);
    Json phi = Json::array();
    for (int w = 0; w < static_cast<int>(phi_.size()); ++w) phi.push_back(Json{{"w", w}, {"image", to_json(phi_[w])}});
    j["phi"] = phi;
    if (spec_) {
      Json w = Json::array();
      for (const auto& v : target_->values) w.push_back(to_json(v));
      j["specialized"] = to_json(*spec_);
      j["specialized"]["target_weights"] = w;
    }
    j["checks"] = checks_json("cell");
    return j;
  }

  Json findings_artifact() const {
    Json f = Json::array(), all = Json::array();
    for (const auto& c : checks_) {
      all.push_back(Json{{"stage", c.stage},
                         {"name", c.result.name},
                         {"checked", c.result.checked},
                         {"violations", c.result.violations}});
      if (!c.result.ok())
        f.push_back(Json{{"stage", c.stage},
                         {"check", c.result.name},
                         {"violations", c.result.violations},
                         {"samples", c.result.samples}});
    }
    return Json{{"schema", kSchema},   {"status", failed() ? "fail" : "pass"}, {"exit_code", failed() ? 2 : 0},
                {"halted", halted_},   {"config", cfg_.to_json()},             {"findings", f},
                {"checks", all}};
  }

  void write_artifacts() const {
    if (cfg_.out.empty()) return;
    std::filesystem::create_directories(cfg_.out);
    if (ht_) write("kl.json", kl_artifact());
    if (loaded_) write("reps.json", reps_artifact());
    if (T_) write("jring.json", jring_artifact());
    if (D_) write("cell.json", cell_artifact());
    write("findings.json", findings_artifact());
  }

  void write(const std::string& name, const Json& j) const {
    std::ofstream out(std::filesystem::path(cfg_.out) / name);
    if (!out) throw InputError("cannot write artifact " + name + " in '" + cfg_.out + "'");
    out << j.dump(2) << "\n";
  }

 private:
  void record(const std::string& stage, CheckResult c) { checks_.push_back({stage, std::move(c)}); }

  // Runs fn; a verification error becomes a finding and, if halt, stops the pipeline.
  template <class Fn>
  bool guard(const std::string& stage, const std::string& name, Fn&& fn, bool halt = true) {
    try {
      fn();
      return true;
    } catch (const VerificationError& e) {
      CheckResult c;
      c.name = name;
      c.checked = 1;
      c.violations = 1;
      c.samples.push_back(e.what());
      record(stage, c);
      if (halt) halted_ = true;
      return false;
    }
  }

  MatrixRep read_rep_unvalidated(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open representation file '" + path + "'");
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw InputError("parse error in '" + path + "': " + e.what());
    }
    return rep_from_json(j, *H_, false);
  }

  JobConfig cfg_;
  Parallel par_;
  std::unique_ptr<CoxeterGroup> g_;
  std::unique_ptr<HeckeAlgebra> H_;
  MonomialOrder ord_;
  std::optional<WeightFunction> target_;
  std::unique_ptr<HeckeAlgebra> target_H_;
  std::unique_ptr<KLBasis> kl_;
  std::unique_ptr<HTable> ht_;
  std::optional<AFunction> af_;
  std::optional<LRPreorder> P_;
  bool loaded_ = false;
  std::vector<MatrixRep> input_;
  std::optional<LeadingFamily> fam_;
  std::unique_ptr<GammaTable> T_;
  std::optional<CellDatum> D_;
  std::optional<TCellDatum> spec_;
  std::vector<AJElem> phi_;
  std::vector<StageCheck> checks_;
  bool halted_ = false;
};

// ---------------------------------------------------------------- report

namespace detail {

inline Json read_artifact(const std::filesystem::path& dir, const std::string& name) {
  std::ifstream in(dir / name);
  if (!in) throw InputError("missing artifact " + name + " in '" + dir.string() + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InputError("unreadable artifact " + name + ": " + e.what());
  }
  if (j.value("schema", std::string()) != kSchema) throw InputError("artifact " + name + " has an unknown schema");
  return j;
}

inline std::string exps_text(const Json& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i].get<int>());
  return s + ")";
}

}  // namespace detail

// Human-readable summary from artifact JSON; absent stages are skipped.
inline std::string report_from(const Json& findings, const std::optional<Json>& reps, const std::optional<Json>& jring,
                               const std::optional<Json>& cell) {
  std::ostringstream o;
  const Json* any = reps ? &*reps : jring ? &*jring : cell ? &*cell : nullptr;
  if (any) {
    const Json& sys = any->at("system");
    o << "system " << sys.at("name").get<std::string>() << ", |W| = " << sys.at("order").get<int>() << ", weights";
    for (const auto& w : sys.at("weights")) o << " " << detail::exps_text(w);
    o << ", order priority " << detail::exps_text(sys.at("monomial_order")) << "\n";
  }
  if (reps) {
    o << "representations (label, dim, a, f):\n";
    for (const auto& r : reps->at("representations")) {
      o << "  " << r.at("label").get<std::string>() << "  " << r.at("dim").get<int>();
      if (r.contains("schur"))
        o << "  a=" << detail::exps_text(r.at("schur").at("a")) << "  f=" << r.at("schur").at("f").get<std::string>();
      o << "\n";
    }
  }
  if (jring) {
    const Json& t = jring->at("table");
    o << "L-blocks:";
    for (const auto& b : t.at("blocks")) {
      o << " {";
      for (std::size_t i = 0; i < b.size(); ++i) o << (i ? "," : "") << b[i].get<int>();
      o << "}";
    }
    o << "\n|D~| = " << t.at("d_set").size() << "\n";
  }
  if (cell) {
    o << "primes inverted in R: {";
    const auto& p = cell->at("datum").at("primes");
    for (std::size_t i = 0; i < p.size(); ++i) o << (i ? "," : "") << p[i].get<long>();
    o << "}\n";
  }
  o << "checks:\n";
  for (const auto& c : findings.at("checks")) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-6s %-30s %10ld checked %6ld violations  %s\n",
                  c.at("stage").get<std::string>().c_str(), c.at("name").get<std::string>().c_str(),
                  c.at("checked").get<long>(), c.at("violations").get<long>(),
                  c.at("violations").get<long>() == 0 ? "PASS" : "FAIL");
    o << line;
  }
  o << "status: " << findings.at("status").get<std::string>() << "\n";
  return o.str();
}

inline std::string report_text(const Pipeline& p) {
  Json f = p.findings_artifact();
  std::optional<Json> reps, jring, cell;
  if (p.family()) reps = p.reps_artifact();
  if (p.gamma()) jring = p.jring_artifact();
  if (p.datum()) cell = p.cell_artifact();
  return report_from(f, reps, jring, cell);
}

// Reads an artifact directory; artifacts of enabled stages must be present.
inline std::string report_text(const std::string& dir) {
  Json findings = detail::read_artifact(dir, "findings.json");
  const auto stages = findings.at("config").at("stages").get<std::vector<std::string>>();
  const bool halted = findings.at("halted").get<bool>();
  auto load = [&](const std::string& stage) -> std::optional<Json> {
    if (std::find(stages.begin(), stages.end(), stage) == stages.end()) return std::nullopt;
    std::filesystem::path f = std::filesystem::path(dir) / (stage + ".json");
    if (halted && !std::filesystem::exists(f)) return std::nullopt;
    return detail::read_artifact(dir, stage + ".json");
  };
  return report_from(findings, load("reps"), load("jring"), load("cell"));
}

}  // namespace heckecell
