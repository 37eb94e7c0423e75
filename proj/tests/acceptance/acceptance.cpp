// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "delkit/error.hpp"
#include "delkit/gen.hpp"
#include "delkit/kripke.hpp"
#include "delkit/mcheck.hpp"
#include "delkit/parser.hpp"
#include "delkit/reduce.hpp"
#include "delkit/tableau.hpp"
#include "support.hpp"

using namespace delkit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every check below runs with the termination assertions switched on.
MCheckOptions mc_debug() {
  MCheckOptions o;
  o.debug = true;
  return o;
}

tableau::Options tab_debug() {
  tableau::Options o;
  o.debug = true;
  return o;
}

std::uint64_t g_mc_checks = 0;
std::uint64_t g_tab_checks = 0;
std::uint64_t g_invariant_failures = 0;

bool checked_mc(const PointedModel& m, const Formula& f, const EventSequence& h = {}) {
  MCheckStats s;
  bool v = m_check(m.model, m.point, h, f, mc_debug(), &s);
  g_mc_checks += s.measure_checks;
  return v;
}

tableau::SatResult checked_sat(const Formula& f) {
  auto r = tableau::is_satisfiable(f, tab_debug());
  g_tab_checks += r.stats.measure_checks;
  return r;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Truth at every world of every model with 1..2 worlds over the given
// signature, by the reference evaluator.
bool valid_on_tiny_models(const Formula& f, const std::vector<std::string>& atoms,
                          const std::vector<std::string>& agents) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::size_t rbits = n * n;
    const std::size_t bits = agents.size() * rbits + atoms.size() * n;
    std::vector<std::string> worlds;
    for (std::size_t w = 0; w < n; ++w) worlds.push_back("w" + std::to_string(w));
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      EpistemicModel::Relations rel;
      EpistemicModel::Valuation val;
      std::size_t bit = 0;
      for (const auto& a : agents) {
        auto& pairs = rel[a];
        for (std::size_t w = 0; w < n; ++w)
          for (std::size_t v = 0; v < n; ++v, ++bit)
            if ((code >> bit) & 1) pairs.emplace_back(w, v);
      }
      for (const auto& p : atoms) {
        auto& ws = val[p];
        for (std::size_t w = 0; w < n; ++w, ++bit)
          if ((code >> bit) & 1) ws.push_back(w);
      }
      EpistemicModel m(worlds, std::move(rel), std::move(val));
      for (std::size_t w = 0; w < n; ++w)
        if (!eval(m, w, f)) return false;
    }
  }
  return true;
}

std::vector<std::string> sorted(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

// ---- criteria ---------------------------------------------------------------

Outcome example_truths() {
  auto w = testing::wellington();
  PointedModel m = w.at_w();
  EventSequence h1{PointedEvent{w.e1, 0}};
  EventSequence h12{PointedEvent{w.e1, 0}, PointedEvent{w.e2, 0}};
  struct Case {
    const EventSequence* history;
    const char* text;
  };
  const EventSequence none;
  const std::vector<Case> cases{
      {&none, "p & B{1} p"},
      {&none, "~B{2} p"},
      {&none, "B{1} ~B{2} p"},
      {&h1, "p & B{2} p & ~B{1} B{2} p"},
      {&h12, "p & B{2} p & B{1} B{2} p & ~B{2} B{1} B{2} p"},
      {&none, "~[E1#w1][E2#w2] B{2} B{1} B{2} p"},
  };
  Outcome out;
  int n = 0;
  for (const auto& c : cases) {
    Formula f = w.parse(c.text);
    // eval on the pointed model reached by explicit product update.
    PointedModel at = m;
    for (const auto& step : *c.history) {
      auto pu = product_update(at.model, *step.model);
      if (!pu || !pu->find(at.point, step.event)) return {false, "history not executable"};
      at = PointedModel{pu->model, *pu->find(at.point, step.event)};
    }
    // The same facts as dynamic formulas over the original model.
    Formula dyn = f;
    for (auto it = c.history->rbegin(); it != c.history->rend(); ++it)
      dyn = Formula::dyn_box(Program::pointed(it->model, it->event), dyn);
    bool ok = eval(at, f) && checked_mc(m, f, *c.history) && eval(m, dyn) && checked_mc(m, dyn);
    if (!ok) {
      out.pass = false;
      out.detail += std::string(" failed: ") + c.text;
    }
    ++n;
  }
  out.detail = std::to_string(n) + " facts under eval and m_check" + out.detail;
  return out;
}

Outcome example_sat() {
  auto w = testing::wellington();
  Formula f = w.parse("~[E1#w1][E2#w2] B{2} B{1} B{2} p");
  auto r = checked_sat(f);
  if (r.verdict != tableau::Verdict::Satisfiable || !r.model) return {false, "not SAT"};
  bool ok = eval(*r.model, f) && r.verified;
  return {ok, "SAT, extracted model with " + std::to_string(r.model->model.world_count()) +
                  " worlds " + (ok ? "verifies" : "does not verify")};
}

Outcome differential_mcheck() {
  testing::Generator g(1001, testing::Bounds{});
  std::size_t agree = 0, total = 500, truths = 0, dynamic = 0;
  for (std::size_t i = 0; i < total; ++i) {
    PointedModel m = g.pointed_model();
    Formula f = g.formula();
    dynamic += !is_static(f);
    bool a = checked_mc(m, f);
    bool b = eval(m, f);
    agree += a == b;
    truths += a;
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree (" +
                              std::to_string(truths) + " true, " +
                              std::to_string(dynamic) + " dynamic)"};
}

Outcome translation_oracle() {
  testing::Generator g(2002, testing::Bounds{});
  std::size_t ok = 0, total = 200;
  std::uint64_t in = 0, out = 0;
  for (std::size_t i = 0; i < total; ++i) {
    PointedModel m = g.pointed_model();
    Formula f = g.formula();
    auto r = translate_with_report(f);
    in += r.input_size;
    out += r.output_size;
    ok += is_static(r.output) && eval(m, f) == eval(m, r.output);
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                           " equivalent and event-free; mean size " + std::to_string(in / total) +
                           " -> " + std::to_string(out / total)};
}

struct Corpus {
  std::vector<Formula> formulas;
  std::vector<tableau::SatResult> results;
};

Corpus& corpus() {
  static Corpus c = [] {
    Corpus c;
    testing::Bounds b;
    b.max_size = 15;
    testing::Generator g(3003, b);
    for (int i = 0; i < 300; ++i) c.formulas.push_back(g.formula());
    return c;
  }();
  return c;
}

Outcome tableau_soundness() {
  Corpus& c = corpus();
  std::size_t sat = 0, sat_ok = 0, valid = 0, valid_ok = 0, limits = 0, dynamic = 0;
  for (const auto& f : c.formulas) {
    dynamic += !is_static(f);
    auto r = checked_sat(f);
    if (r.verdict == tableau::Verdict::ResourceLimit) ++limits;
    if (r.verdict == tableau::Verdict::Satisfiable) {
      ++sat;
      sat_ok += r.model && eval(*r.model, f);
    }
    c.results.push_back(std::move(r));

    auto v = tableau::is_valid(f, tab_debug());
    g_tab_checks += v.stats.measure_checks;
    if (v.verdict == tableau::ValidityResult::Verdict::ResourceLimit) ++limits;
    if (v.verdict != tableau::ValidityResult::Verdict::Valid) continue;
    ++valid;
    // Three-world sweep of the equivalent static formula, plus the reference
    // evaluator on the formula itself over all one- and two-world models.
    Formula t = translate(f);
    auto atoms = sorted(atoms_of(t));
    auto agents = sorted(agents_of(t));
    bool swept = testing::SmallSweep(t, atoms, agents).valid_everywhere();
    auto fa = atoms_of(f);
    for (const auto& e : event_models_of(f)) collect_atoms(*e, fa);
    auto fg = agents_of(f);
    for (const auto& e : event_models_of(f)) collect_agents(*e, fg);
    bool direct = valid_on_tiny_models(f, sorted(fa), sorted(fg));
    valid_ok += swept && direct;
  }
  bool pass = sat == sat_ok && valid == valid_ok && limits == 0;
  return {pass, std::to_string(dynamic) + " dynamic; " + std::to_string(sat_ok) + "/" +
                    std::to_string(sat) + " SAT models verify, " +
                    std::to_string(valid_ok) + "/" + std::to_string(valid) +
                    " valid formulas hold on all models up to 3 worlds, " +
                    std::to_string(limits) + " budget hits"};
}

Outcome tableau_translation_agreement() {
  Corpus& c = corpus();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < c.formulas.size(); ++i) {
    auto t = checked_sat(translate(c.formulas[i]));
    agree += t.verdict == c.results.at(i).verdict && t.verdict != tableau::Verdict::ResourceLimit;
  }
  return {agree == c.formulas.size(),
          std::to_string(agree) + "/" + std::to_string(c.formulas.size()) + " verdicts agree"};
}

Formula random_matrix(std::mt19937_64& rng, std::size_t vars, int depth) {
  std::uniform_int_distribution<int> pick(0, 4);
  int r = depth <= 0 ? 0 : pick(rng);
  switch (r) {
    case 0: {
      std::uniform_int_distribution<std::size_t> v(1, vars);
      return Formula::atom("p" + std::to_string(v(rng)));
    }
    case 1:
      return Formula::negation(random_matrix(rng, vars, depth - 1));
    case 2:
      return Formula::conjunction(random_matrix(rng, vars, depth - 1),
                                  random_matrix(rng, vars, depth - 1));
    case 3:
      return Formula::disjunction(random_matrix(rng, vars, depth - 1),
                                  random_matrix(rng, vars, depth - 1));
    default:
      return Formula::equivalence(random_matrix(rng, vars, depth - 1),
                                  random_matrix(rng, vars, depth - 1));
  }
}

Outcome qbf_end_to_end() {
  // One template per two-variable truth table.
  const std::vector<std::string> k1{
      "p1 & ~p1",   "p1 & p2",    "p1 & ~p2",  "p1",          "~p1 & p2",     "p2",
      "~(p1 <-> p2)", "p1 | p2",  "~(p1 | p2)", "p1 <-> p2",  "~p2",          "p1 | ~p2",
      "~p1",        "~p1 | p2",   "~(p1 & p2)", "p1 | ~p1"};
  std::vector<gen::QbfInstance> cases;
  std::set<unsigned> tables;
  for (const auto& m : k1) {
    auto q = gen::parse_qbf("A p1 E p2 : " + m);
    unsigned table = 0;
    for (unsigned a = 0; a < 4; ++a) table |= unsigned{gen::eval_matrix(q.matrix, a)} << a;
    tables.insert(table);
    cases.push_back(q);
  }
  std::mt19937_64 rng(4004);
  for (int i = 0; i < 50; ++i) {
    gen::QbfInstance q;
    q.k = 2;
    q.matrix = random_matrix(rng, 4, 4);
    cases.push_back(q);
  }
  std::size_t agree = 0, trues = 0;
  double slowest = 0;
  std::uint64_t built = 0;
  for (const auto& q : cases) {
    auto r = gen::qbf_reduce(q);
    std::uint64_t mark = product_worlds_built();
    auto t = Clock::now();
    bool v = checked_mc(r.model, r.goal);
    if (q.k == 2) slowest = std::max(slowest, seconds_since(t));
    built += product_worlds_built() - mark;
    bool expected = gen::qbf_brute(q);
    agree += v == expected;
    trues += expected;
  }
  bool pass = agree == cases.size() && tables.size() == 16 && slowest < 10.0 && built == 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", slowest);
  return {pass, std::to_string(agree) + "/" + std::to_string(cases.size()) + " agree (" +
                    std::to_string(trues) + " true, " + std::to_string(tables.size()) +
                    " distinct k=1 tables), slowest k=2 " + buf + " s, " +
                    std::to_string(built) + " product worlds"};
}

bool reaches(const EpistemicModel& m, WorldIndex from, std::size_t length) {
  std::set<WorldIndex> frontier{from};
  for (std::size_t s = 0; s < length && !frontier.empty(); ++s) {
    std::set<WorldIndex> next;
    for (WorldIndex w : frontier)
      for (WorldIndex v : m.successors(gen::kQbfAgent, w)) next.insert(v);
    frontier = std::move(next);
  }
  return !frontier.empty();
}

std::optional<PointedModel> step(const PointedModel& m, const EventModel& e) {
  auto pu = product_update(m.model, e);
  if (!pu) return std::nullopt;
  auto at = pu->find(m.point, 0);
  if (!at) return std::nullopt;
  return PointedModel{pu->model, *at};
}

Outcome qbf_invariants() {
  std::size_t inv = 0, inv_total = 0, neutral = 0, enc = 0, enc_total = 0;
  for (std::size_t k = 1; k <= 2; ++k) {
    PointedModel chain{gen::qbf_chain(k), 0};
    std::vector<EventModelPtr> pool{gen::qbf_loop_model()};
    for (std::size_t i = 1; i <= 2 * k; ++i) pool.push_back(gen::qbf_event_model(i));
    for (const auto& a : pool) {
      auto one = step(chain, *a);
      ++inv_total;
      inv += one && reaches(one->model, one->point, 2 * k + 1);
      for (const auto& b : pool) {
        ++inv_total;
        auto two = one ? step(*one, *b) : std::nullopt;
        inv += two && reaches(two->model, two->point, 2 * k + 1);
      }
    }
    auto looped = step(chain, *gen::qbf_loop_model());
    neutral += looped && bounded_bisimilar(chain.model, chain.point, looped->model,
                                           looped->point, 2 * k + 2);
    for (std::size_t i = 1; i <= 2 * k; ++i) {
      ++enc_total;
      auto up = step(chain, *gen::qbf_event_model(i));
      enc += !eval(chain, gen::qbf_atom(i)) && up && eval(*up, gen::qbf_atom(i));
    }
  }
  bool pass = inv == inv_total && neutral == 2 && enc == enc_total;
  return {pass, "Inv " + std::to_string(inv) + "/" + std::to_string(inv_total) + ", neutral " +
                    std::to_string(neutral) + "/2, encoding " + std::to_string(enc) + "/" +
                    std::to_string(enc_total)};
}

const char* kMono =
    R"({"tiles":[{"id":"t1","left":"r","right":"r","up":"g","down":"g"}],"t0":"t1","n":1})";
const char* kBad =
    R"({"tiles":[{"id":"t1","left":"r","right":"r","up":"g","down":"b"}],"t0":"t1","n":1})";

Outcome tiling_witness() {
  auto mono = gen::tiling_from_json(nlohmann::json::parse(kMono));
  auto grid = gen::tiling_brute(mono);
  if (!grid) return {false, "no tiling found for the monochrome instance"};
  PointedModel w = gen::witness_model(mono, *grid);
  auto r = gen::tiling_reduce(mono);
  bool holds = checked_mc(w, r.formula);
  bool none = !gen::tiling_brute(gen::tiling_from_json(nlohmann::json::parse(kBad)));
  return {holds && none, std::string("witness with ") + std::to_string(w.model.world_count()) +
                             " worlds " + (holds ? "satisfies" : "fails") + " the formula (size " +
                             std::to_string(r.formula.size()) + "); bad instance " +
                             (none ? "has no tiling" : "tiles")};
}

}  // namespace

int main(int argc, char** argv) {
  bool stretch = !(argc > 1 && std::string(argv[1]) == "--no-stretch");
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "examples exact", 1.0, example_truths},
      {2, "example tableau", 5.0, example_sat},
      {3, "differential model checking", 60.0, differential_mcheck},
      {4, "translation oracle", 60.0, translation_oracle},
      {5, "tableau soundness", 300.0, tableau_soundness},
      {6, "tableau/translation agreement", 300.0, tableau_translation_agreement},
      {7, "qbf end-to-end", 600.0, qbf_end_to_end},
      {8, "qbf invariants", 60.0, qbf_invariants},
      {9, "tiling witness", 120.0, tiling_witness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const InvariantViolation& e) {
      ++g_invariant_failures;
      o = {false, std::string("invariant violation: ") + e.what()};
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = seconds_since(t);
    if (s >= c.limit) {
      o.pass = false;
      o.detail += " (over the time limit)";
    }
    failures += !o.pass;
    std::printf("%s criterion %2d  %-30s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  bool measured = g_mc_checks > 0 && g_tab_checks > 0 && g_invariant_failures == 0;
  failures += !measured;
  std::printf("%s criterion 10  %-30s %8s    %llu call-measure checks, %llu term-measure checks, "
              "%llu violations\n",
              measured ? "PASS" : "FAIL", "termination instrumentation", "-",
              static_cast<unsigned long long>(g_mc_checks),
              static_cast<unsigned long long>(g_tab_checks),
              static_cast<unsigned long long>(g_invariant_failures));

  if (stretch) {
    auto mono = gen::tiling_from_json(nlohmann::json::parse(kMono));
    tableau::Options o;
    o.time_limit = std::chrono::minutes(10);
    o.max_rule_applications = ~std::uint64_t{0};
    auto t = Clock::now();
    auto r = tableau::is_satisfiable(gen::tiling_reduce(mono).formula, o);
    const char* v = r.verdict == tableau::Verdict::Satisfiable     ? "SAT"
                    : r.verdict == tableau::Verdict::Unsatisfiable ? "UNSAT"
                                                                   : "resource limit";
    bool verified = r.model && eval(*r.model, gen::tiling_reduce(mono).formula);
    std::printf("INFO stretch tableau on the n=1 tiling formula: %s%s after %llu rule "
                "applications, %.1f s (not counted)\n",
                v, verified ? ", model verifies" : "",
                static_cast<unsigned long long>(r.stats.rule_applications), seconds_since(t));
  }
  return failures == 0 ? 0 : 1;
}
