// heckecell: command-line front end for the kl -> reps -> jring -> cell pipeline.
// Exit codes: 0 success, 2 verification failure, 3 input error, 1 internal error.

#include <CLI11.hpp>

#include <iostream>

#include "heckecell/pipeline.hpp"

using namespace heckecell;

namespace {

struct Flags {
  std::string config, system, weights, order, stages, verify, target, out;
  std::vector<std::string> reps;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::vector<std::string> files;  // positional rep files for `rep`
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON job config; flags override its keys");
  app->add_option("--system", f.system, "Coxeter type: A1..A7, B2..B5, I2:m, H3");
  app->add_option("--weights", f.weights, "equal | universal | per-generator vectors, e.g. '2;1' or '1,0;0,1'");
  app->add_option("--order", f.order, "natural | reverse | coordinate priority list, e.g. '1,0'");
  app->add_option("--reps", f.reps, "representation files (default: built-in family)")->delimiter(',');
  app->add_option("--stages", f.stages, "comma list of kl,reps,jring,cell");
  app->add_option("--verify", f.verify, "all | none | comma list of suites");
  app->add_option("--seed", f.seed, "seed for sampled checks");
  app->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--out", f.out, "artifact directory");
}

JobConfig make_config(const CLI::App* app, const Flags& f) {
  JobConfig c = f.config.empty() ? JobConfig{} : load_config(f.config);
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--system")) c.system = f.system;
  if (given("--weights")) c.weights = f.weights;
  if (given("--order")) c.order = f.order;
  if (given("--reps")) c.reps = f.reps;
  if (!f.files.empty()) c.reps = f.files;
  if (given("--stages")) c.stages = detail::split(f.stages, ',');
  if (given("--verify")) c.verify = detail::split(f.verify, ',');
  if (given("--seed")) c.seed = f.seed;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--out")) c.out = f.out;
  if (!f.target.empty()) c.target = f.target;
  return c;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int finish(Pipeline& p) {
  p.write_artifacts();
  for (const auto& c : p.checks())
    if (!c.result.ok())
      std::cerr << "FAIL " << c.stage << "/" << c.result.name << ": "
                << (c.result.samples.empty() ? "" : c.result.samples.front()) << "\n";
  return p.failed() ? 2 : 0;
}

Json checks_of(const Pipeline& p) {
  Json j = Json::array();
  for (const auto& c : p.checks()) {
    Json r = to_json(c.result);
    r["stage"] = c.stage;
    j.push_back(r);
  }
  return j;
}

// Runs `stages` with the suites in `verify` and hands the pipeline to emit.
template <class Emit>
int run_sub(const CLI::App* app, const Flags& f, std::vector<std::string> stages, std::vector<std::string> verify,
            Emit&& emit) {
  JobConfig c = make_config(app, f);
  c.stages = std::move(stages);
  if (!app->count("--verify")) c.verify = std::move(verify);
  Pipeline p(std::move(c));
  for (const auto& s : p.config().stages) {
    if (p.halted()) break;
    p.run_stage(s);
  }
  if (!p.halted()) emit(p);
  return finish(p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic Hecke algebras, leading matrix coefficients and cellular bases"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "run the configured pipeline and print a summary");
  add_common(run, f);
  run->add_option("--target", f.target, "target weights for the specialization suite");

  auto* report = app.add_subcommand("report", "summarize an artifact directory");
  std::string report_dir;
  report->add_option("--out,dir", report_dir, "artifact directory")->required();

  auto* kl_table = app.add_subcommand("kl-table", "print the Kazhdan-Lusztig polynomials p_{y,w}");
  auto* h_table = app.add_subcommand("h-table", "print the structure constants h_{x,y,z}");
  auto* cells = app.add_subcommand("cells", "print a(z), the two-sided cells and their order");
  for (auto* s : {kl_table, h_table, cells}) add_common(s, f);

  auto* rep = app.add_subcommand("rep", "representation tools");
  rep->require_subcommand(1);
  auto* rep_validate = rep->add_subcommand("validate", "check quadratic and braid relations");
  auto* rep_schur = rep->add_subcommand("schur", "Schur elements, a-values and f-values");
  auto* rep_balance = rep->add_subcommand("balance", "balanced versions of the representations");
  auto* rep_leading = rep->add_subcommand("leading", "leading matrix coefficients");
  for (auto* s : {rep_validate, rep_schur, rep_balance, rep_leading}) {
    add_common(s, f);
    s->add_option("files", f.files, "representation files");
  }

  auto* jring = app.add_subcommand("jring", "the ring J~ built from leading coefficients");
  jring->require_subcommand(1);
  auto* jr_build = jring->add_subcommand("build", "print the gamma~ table");
  auto* jr_verify = jring->add_subcommand("verify", "ring axioms, Schur relations and rho-bar");
  auto* jr_compare = jring->add_subcommand("compare-kl", "compare gamma~ with gamma from the KL side");
  auto* jr_blocks = jring->add_subcommand("blocks", "print L-blocks, D~ and n~");
  for (auto* s : {jr_build, jr_verify, jr_compare, jr_blocks}) add_common(s, f);

  auto* cell = app.add_subcommand("cell", "cell datum, Lusztig's homomorphism and specialization");
  cell->require_subcommand(1);
  auto* c_build = cell->add_subcommand("build", "print the cell datum");
  auto* c_verify = cell->add_subcommand("verify", "axioms (C1)-(C3), lambda order and P15~");
  auto* c_phi = cell->add_subcommand("phi", "print phi(C_w) and check the homomorphism");
  auto* c_spec = cell->add_subcommand("specialize", "specialize the weights and re-check the axioms");
  for (auto* s : {c_build, c_verify, c_phi, c_spec}) add_common(s, f);
  c_spec->add_option("--target", f.target, "target weights, e.g. equal or '3;1'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (run->parsed()) {
      Pipeline p(make_config(run, f));
      int code = p.run();
      std::cout << report_text(p);
      for (const auto& c : p.checks())
        if (!c.result.ok())
          std::cerr << "FAIL " << c.stage << "/" << c.result.name << ": "
                    << (c.result.samples.empty() ? "" : c.result.samples.front()) << "\n";
      return code;
    }
    if (report->parsed()) {
      std::cout << report_text(report_dir);
      return 0;
    }
    for (auto* s : {kl_table, h_table, cells})
      if (s->parsed())
        return run_sub(s, f, {"kl"}, {}, [&](Pipeline& p) {
          Json t = to_json(kl_dump(*p.htable(), *p.afunction(), *p.lr()));
          Json out{{"schema", kSchema}, {"system", system_json(p.algebra(), p.order())}, {"elements", t["elements"]}};
          if (s == kl_table) out["kl_polynomials"] = t["kl_polynomials"];
          if (s == h_table) out["h"] = t["h"];
          if (s == cells)
            for (const char* k : {"a", "cells", "cell_order"}) out[k] = t[k];
          print_json(out);
        });

    if (rep_validate->parsed()) {
      JobConfig c = make_config(rep_validate, f);
      c.stages = {"reps"};
      c.verify = {"relations"};
      Pipeline p(std::move(c));
      p.load_reps();
      Json out = Json::array();
      const auto& reps = p.input_reps();
      for (const auto& r : reps) {
        RelationReport rr = validate_relations(r, p.algebra());
        out.push_back(Json{{"label", r.label}, {"ok", rr.ok}, {"message", rr.message}});
      }
      print_json(out);
      return finish(p);
    }
    if (rep_schur->parsed())
      return run_sub(rep_schur, f, {"reps"}, {"relations"}, [](Pipeline& p) {
        Json out = Json::array();
        for (std::size_t i = 0; i < p.input_reps().size(); ++i) {
          Json r = to_json(p.family()->schur[i]);
          r["label"] = p.input_reps()[i].label;
          r["dim"] = p.input_reps()[i].dim;
          out.push_back(r);
        }
        print_json(out);
      });
    if (rep_balance->parsed())
      return run_sub(rep_balance, f, {"reps"}, {"relations"}, [](Pipeline& p) {
        Json out = Json::array();
        for (std::size_t i = 0; i < p.input_reps().size(); ++i) {
          Json r = rep_to_json(p.family()->reps[i], p.group());
          r["rebalanced"] = static_cast<bool>(p.family()->rebalanced[i]);
          out.push_back(r);
        }
        print_json(out);
      });
    if (rep_leading->parsed())
      return run_sub(rep_leading, f, {"reps"}, {"relations"}, [](Pipeline& p) {
        Json out = Json::array();
        for (const auto& t : p.family()->tensors) out.push_back(to_json(t, p.group()));
        print_json(out);
      });

    if (jr_build->parsed())
      return run_sub(jr_build, f, {"jring"}, {}, [](Pipeline& p) { print_json(p.jring_artifact()); });
    if (jr_verify->parsed())
      return run_sub(jr_verify, f, {"jring"}, {"relations", "schur", "ring", "rho-bar"},
                     [](Pipeline& p) { std::cout << report_text(p); });
    if (jr_compare->parsed())
      return run_sub(jr_compare, f, {"jring"}, {"compare-kl"}, [](Pipeline& p) { std::cout << report_text(p); });
    if (jr_blocks->parsed())
      return run_sub(jr_blocks, f, {"jring"}, {}, [](Pipeline& p) {
        const GammaTable& T = *p.gamma();
        Json nt = Json::array(), labels = Json::array();
        for (int d : T.d_set()) nt.push_back(Json{d, to_text(T.n_tilde(d))});
        for (const auto& t : T.tensors()) labels.push_back(t.label);
        print_json(Json{{"elements", element_words(p.group())},
                        {"blocks", T.blocks().blocks},
                        {"labels", labels},
                        {"block_of_rep", T.blocks().block_of_rep},
                        {"d_set", T.d_set()},
                        {"n_tilde", nt}});
      });

    if (c_build->parsed())
      return run_sub(c_build, f, {"cell"}, {}, [](Pipeline& p) { print_json(p.cell_artifact()); });
    if (c_verify->parsed())
      return run_sub(c_verify, f, {"cell"}, {"cell", "p15"}, [](Pipeline& p) { std::cout << report_text(p); });
    if (c_phi->parsed())
      return run_sub(c_phi, f, {"cell"}, {"phi"}, [](Pipeline& p) {
        Json phi = Json::array();
        for (int w = 0; w < p.group().size(); ++w)
          phi.push_back(Json{{"w", p.group().word_string(w)}, {"image", to_json(p.phi()[w])}});
        print_json(Json{{"elements", element_words(p.group())}, {"phi", phi}, {"checks", checks_of(p)}});
      });
    if (c_spec->parsed())
      return run_sub(c_spec, f, {"cell"}, {"specialize"}, [](Pipeline& p) {
        Json out{{"checks", checks_of(p)}};
        if (p.specialized()) out["specialized"] = to_json(*p.specialized());
        print_json(out);
      });
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
