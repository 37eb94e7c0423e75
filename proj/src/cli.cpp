#include "delkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "delkit/error.hpp"
#include "delkit/gen.hpp"
#include "delkit/kripke.hpp"
#include "delkit/mcheck.hpp"
#include "delkit/model_json.hpp"
#include "delkit/parser.hpp"
#include "delkit/reduce.hpp"
#include "delkit/tableau.hpp"

namespace delkit::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Bad input that is neither a parse nor a model error (missing file, flag).
class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write file");
  return out;
}

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out) : c_(config), out_(out) {}

  int run() {
    using C = RunConfig::Command;
    switch (c_.command) {
      case C::Mc: return mc();
      case C::Sat: return sat();
      case C::Valid: return valid();
      case C::Translate: return translate();
      case C::GenQbf: return gen_qbf();
      case C::GenTiling: return gen_tiling();
      case C::OracleQbf: return oracle_qbf();
      case C::OracleTiling: return oracle_tiling();
    }
    return kUsage;
  }

 private:
  Formula formula() {
    for (const auto& p : c_.event_paths) load_event_file(p, env_);
    std::string text, source;
    if (c_.formula) {
      text = *c_.formula;
      source = "formula";
    } else if (c_.formula_path) {
      text = read_text(*c_.formula_path);
      source = c_.formula_path->string();
    } else {
      throw InputError("a formula is required (-f TEXT or -F FILE)");
    }
    try {
      return parse_formula(text, env_);
    } catch (const ParseError& e) {
      throw Error(source + ": " + e.what());
    }
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

  // Text: the verdict line, then "key: value" stats under --stats.
  int report(const std::string& verdict, const std::string& engine, json stats, int code,
             json extra = json::object()) {
    if (c_.stats) stats["ms"] = elapsed_ms();
    if (c_.json) {
      json j = {{"verdict", verdict}, {"engine", engine}, {"stats", stats}};
      for (auto& [k, v] : extra.items()) j[k] = v;
      out_ << j.dump() << '\n';
    } else {
      out_ << verdict << '\n';
      if (c_.stats) {
        for (auto& [k, v] : stats.items()) out_ << k << ": " << v.dump() << '\n';
      }
    }
    return code;
  }

  int mc() {
    if (!c_.model_path) throw InputError("mc requires a model (-m FILE)");
    PointedModel pm = load_model_file(*c_.model_path);
    if (c_.point) {
      auto w = pm.model.find_world(*c_.point);
      if (!w) throw InputError("model has no world '" + *c_.point + "'");
      pm.point = *w;
    }
    Formula f = formula();
    start_ = Clock::now();
    const std::uint64_t before = product_worlds_built();
    bool verdict = false;
    json stats;
    if (c_.engine == RunConfig::Engine::Pspace) {
      std::ofstream trace;
      MCheckOptions options;
      options.debug = c_.debug;
      options.depth_limit = c_.depth_limit;
      if (c_.trace_path) {
        trace = open_output(*c_.trace_path);
        options.trace = &trace;
      }
      MCheckStats s;
      verdict = model_check(pm, f, options, &s);
      stats = {{"calls", s.calls}, {"peak_depth", s.peak_depth}};
      if (c_.debug) stats["measure_checks"] = s.measure_checks;
    } else {
      verdict = eval(pm, f);
      stats = json::object();
    }
    stats["product_worlds"] = product_worlds_built() - before;
    return report(verdict ? "true" : "false",
                  c_.engine == RunConfig::Engine::Pspace ? "pspace" : "naive", stats,
                  verdict ? kTrue : kFalse);
  }

  tableau::Options tableau_options(std::ofstream& dump) const {
    tableau::Options o;
    o.max_rule_applications = c_.steps;
    o.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(c_.seconds * 1000));
    o.debug = c_.debug;
    if (c_.dump_path) {
      dump = open_output(*c_.dump_path);
      o.dump = &dump;
    }
    return o;
  }

  static json tableau_stats(const tableau::Stats& s) {
    return {{"rule_apps", s.rule_applications},
            {"branches", s.branches},
            {"closed_branches", s.closed_branches},
            {"labels", s.labels}};
  }

  json write_model(const PointedModel& m) {
    json j = model_to_json(m.model, m.point);
    if (c_.output) write_json_file(*c_.output, j);
    return j;
  }

  int sat() {
    Formula f = formula();
    start_ = Clock::now();
    std::ofstream dump;
    auto r = tableau::is_satisfiable(f, tableau_options(dump));
    json stats = tableau_stats(r.stats);
    switch (r.verdict) {
      case tableau::Verdict::Satisfiable: {
        if (!r.verified) throw InvariantViolation("extracted model does not satisfy the formula");
        json m = write_model(*r.model);
        return report("SAT", "tableau", stats, kTrue, {{"model", m}});
      }
      case tableau::Verdict::Unsatisfiable:
        return report("UNSAT", "tableau", stats, kFalse);
      case tableau::Verdict::ResourceLimit:
        break;
    }
    return report("UNKNOWN", "tableau", stats, kBudget);
  }

  int valid() {
    Formula f = formula();
    start_ = Clock::now();
    std::ofstream dump;
    auto r = tableau::is_valid(f, tableau_options(dump));
    json stats = tableau_stats(r.stats);
    switch (r.verdict) {
      case tableau::ValidityResult::Verdict::Valid:
        return report("valid", "tableau", stats, kTrue);
      case tableau::ValidityResult::Verdict::Invalid: {
        json m = write_model(*r.countermodel);
        return report("invalid", "tableau", stats, kFalse, {{"countermodel", m}});
      }
      case tableau::ValidityResult::Verdict::ResourceLimit:
        break;
    }
    return report("unknown", "tableau", stats, kBudget);
  }

  int translate() {
    Formula f = formula();
    start_ = Clock::now();
    TranslationReport r = translate_with_report(f);
    if (c_.simplify) {
      r.output = simplify(r.output);
      r.output_size = r.output.size();
    }
    std::string text = to_string(r.output);
    json stats = {{"input_size", r.input_size}, {"output_size", r.output_size}};
    if (c_.json) return report(text, "reduce", stats, kTrue);
    out_ << text << '\n'
         << "input_size: " << r.input_size << '\n'
         << "output_size: " << r.output_size << '\n';
    if (c_.stats) out_ << "ms: " << elapsed_ms() << '\n';
    return kTrue;
  }

  std::string qbf_text() const {
    std::error_code ec;
    if (std::filesystem::is_regular_file(c_.instance, ec)) return read_text(c_.instance);
    return c_.instance;
  }

  gen::TilingInstance tiling() const {
    try {
      return gen::tiling_from_json(read_json_file(c_.instance), c_.n);
    } catch (const ModelError& e) {
      std::string what = e.what();
      if (what.rfind(c_.instance, 0) == 0) throw;
      throw ModelError(c_.instance + ": " + what);
    }
  }

  int gen_qbf() {
    if (!c_.output) throw InputError("gen qbf requires an output directory (-o DIR)");
    gen::QbfInstance q = gen::parse_qbf(qbf_text());
    gen::QbfReduction r = gen::qbf_reduce(q);
    json manifest = {{"kind", "qbf"},
                     {"k", q.k},
                     {"instance", gen::to_string(q)},
                     {"agent", gen::kQbfAgent},
                     {"worlds", r.model.model.world_count()},
                     {"event_models", r.event_models.size()},
                     {"formula_size", r.goal.size()},
                     {"encoded_size", gen::encoded_size(r)}};
    gen::write_bundle(*c_.output, r.model, r.event_models, r.goal, manifest);
    out_ << "wrote " << c_.output->string() << '\n';
    return kTrue;
  }

  int gen_tiling() {
    if (!c_.output) throw InputError("gen tiling requires an output directory (-o DIR)");
    gen::TilingInstance t = tiling();
    gen::TilingReduction r = gen::tiling_reduce(t);
    std::optional<PointedModel> witness;
    try {
      if (auto grid = gen::tiling_brute(t)) witness = gen::witness_model(t, *grid);
    } catch (const BudgetExceeded&) {
    }
    json manifest = {{"kind", "tiling"},
                     {"n", t.n},
                     {"k", t.k()},
                     {"instance", gen::tiling_to_json(t)},
                     {"event_models", r.event_models.size()},
                     {"formula_size", r.formula.size()},
                     {"witness", witness.has_value()}};
    gen::write_bundle(*c_.output, witness, r.event_models, r.formula, manifest);
    out_ << "wrote " << c_.output->string() << '\n';
    return kTrue;
  }

  int oracle_qbf() {
    gen::QbfInstance q = gen::parse_qbf(qbf_text());
    bool v = gen::qbf_brute(q);
    out_ << (v ? "true" : "false") << '\n';
    return v ? kTrue : kFalse;
  }

  int oracle_tiling() {
    gen::TilingInstance t = tiling();
    auto grid = gen::tiling_brute(t);
    if (!grid) {
      out_ << "none\n";
      return kFalse;
    }
    // Top row first.
    const std::size_t side = grid->size();
    for (std::size_t y = side; y-- > 0;) {
      for (std::size_t x = 0; x < side; ++x) out_ << (x ? " " : "") << t.tiles[(*grid)[x][y]].id;
      out_ << '\n';
    }
    return kTrue;
  }

  const RunConfig& c_;
  std::ostream& out_;
  EventEnv env_;
  Clock::time_point start_ = Clock::now();
};

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return Session(config, out).run();
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checking, satisfiability and instance generation for DEL", "delkit"};
  app.require_subcommand(1);
  RunConfig c;
  using C = RunConfig::Command;
  std::string engine = "pspace";

  auto formula_options = [&](CLI::App* sub) {
    sub->add_option("-e,--events", c.event_paths, "Event-model file (repeatable)");
    auto* f = sub->add_option("-f,--formula", c.formula, "Formula text");
    auto* file = sub->add_option("-F,--formula-file", c.formula_path, "File holding the formula");
    f->excludes(file);
    sub->add_flag("--json", c.json, "Machine-readable report");
    sub->add_flag("--stats", c.stats, "Include statistics and timing");
  };
  auto tableau_options = [&](CLI::App* sub) {
    formula_options(sub);
    sub->add_option("--steps", c.steps, "Rule-application budget")->capture_default_str();
    sub->add_option("--seconds", c.seconds, "Wall-clock budget")->capture_default_str();
    sub->add_option("--dump-tableau", c.dump_path, "Write one line per rule application");
    sub->add_option("-o,--output", c.output, "Write the extracted model as JSON");
    sub->add_flag("--debug", c.debug, "Check the termination measure at every rule");
  };

  auto* mc = app.add_subcommand("mc", "Model check a formula at a pointed model");
  formula_options(mc);
  mc->add_option("-m,--model", c.model_path, "Epistemic-model file")->required();
  mc->add_option("--point", c.point, "World to check at (default: the file's point)");
  mc->add_option("--engine", engine, "pspace or naive")
      ->check(CLI::IsMember({"pspace", "naive"}))
      ->capture_default_str();
  mc->add_option("--trace", c.trace_path, "Write one line per recursive call");
  mc->add_option("--depth-limit", c.depth_limit, "Recursion limit")->capture_default_str();
  mc->add_flag("--debug", c.debug, "Check call preconditions and measure descent");

  auto* sat = app.add_subcommand("sat", "Decide satisfiability with the tableau");
  tableau_options(sat);
  auto* valid = app.add_subcommand("valid", "Decide validity with the tableau");
  tableau_options(valid);

  auto* tr = app.add_subcommand("translate", "Eliminate dynamic modalities");
  formula_options(tr);
  tr->add_flag("--simplify", c.simplify, "Fold constants in the output");

  auto* gen = app.add_subcommand("gen", "Generate hardness instances");
  gen->require_subcommand(1);
  auto* gen_qbf = gen->add_subcommand("qbf", "QBF to model checking");
  gen_qbf->add_option("instance", c.instance, "QBF text or file")->required();
  gen_qbf->add_option("-o,--output", c.output, "Bundle directory")->required();
  auto* gen_tiling = gen->add_subcommand("tiling", "Tiling to satisfiability");
  gen_tiling->add_option("instance", c.instance, "Tiling JSON file")->required();
  gen_tiling->add_option("--n", c.n, "Grid exponent (k = 2^n)");
  gen_tiling->add_option("-o,--output", c.output, "Bundle directory")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force verdicts");
  oracle->require_subcommand(1);
  auto* oracle_qbf = oracle->add_subcommand("qbf", "Evaluate a QBF");
  oracle_qbf->add_option("instance", c.instance, "QBF text or file")->required();
  auto* oracle_tiling = oracle->add_subcommand("tiling", "Search for a tiling");
  oracle_tiling->add_option("instance", c.instance, "Tiling JSON file")->required();
  oracle_tiling->add_option("--n", c.n, "Grid exponent (k = 2^n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kUsage;
  }

  if (*mc) c.command = C::Mc;
  if (*sat) c.command = C::Sat;
  if (*valid) c.command = C::Valid;
  if (*tr) c.command = C::Translate;
  if (*gen_qbf) c.command = C::GenQbf;
  if (*gen_tiling) c.command = C::GenTiling;
  if (*oracle_qbf) c.command = C::OracleQbf;
  if (*oracle_tiling) c.command = C::OracleTiling;
  c.engine = engine == "naive" ? RunConfig::Engine::Naive : RunConfig::Engine::Pspace;
  return run(c, out, err);
}

}  // namespace delkit::cli
