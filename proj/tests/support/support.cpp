#include "support.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace delkit::testing {

Wellington wellington() {
  EpistemicModel m({"w", "u"},
                   EpistemicModel::NamedRelations{{"1", {{"w", "w"}, {"u", "u"}}},
                                                  {"2", {{"w", "w"}, {"w", "u"}}}},
                   EpistemicModel::NamedValuation{{"p", {"w"}}});
  auto p = Formula::atom("p");
  auto e1 = std::make_shared<const EventModel>(
      "E1", std::vector<std::string>{"w1", "u1"},
      EventModel::NamedRelations{{"1", {{"w1", "u1"}, {"u1", "u1"}}},
                                 {"2", {{"w1", "w1"}, {"u1", "u1"}}}},
      std::map<std::string, Formula, std::less<>>{{"w1", p}, {"u1", Formula::top()}});
  auto e2 = std::make_shared<const EventModel>(
      "E2", std::vector<std::string>{"w2", "u2"},
      EventModel::NamedRelations{{"1", {{"w2", "w2"}, {"u2", "u2"}}},
                                 {"2", {{"w2", "u2"}, {"u2", "u2"}}}},
      std::map<std::string, Formula, std::less<>>{{"w2", Formula::box("2", p)},
                                                  {"u2", Formula::top()}});
  EventEnv env{{"E1", e1}, {"E2", e2}};
  WorldIndex w = *m.find_world("w"), u = *m.find_world("u");
  return Wellington{std::move(m), w, u, e1, e2, std::move(env)};
}

// ---- Generator ------------------------------------------------------------

std::size_t Generator::below(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

EpistemicModel Generator::model() {
  const std::size_t n = 1 + below(b_.max_worlds);
  std::vector<std::string> worlds;
  for (std::size_t i = 0; i < n; ++i) worlds.push_back("w" + std::to_string(i));
  EpistemicModel::Relations rel;
  for (const auto& a : b_.agents) {
    auto& pairs = rel[a];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (chance(b_.edge_rate)) pairs.emplace_back(i, j);
      }
    }
  }
  EpistemicModel::Valuation val;
  for (const auto& p : b_.atoms) {
    auto& ext = val[p];
    for (std::size_t i = 0; i < n; ++i) {
      if (chance(0.5)) ext.push_back(i);
    }
  }
  return EpistemicModel(std::move(worlds), std::move(rel), std::move(val));
}

PointedModel Generator::pointed_model() {
  EpistemicModel m = model();
  WorldIndex w = below(m.world_count());
  return PointedModel{std::move(m), w};
}

EventModelPtr Generator::event_model(const std::string& name) {
  const std::size_t n = 1 + below(b_.max_events);
  std::vector<std::string> events;
  std::map<std::string, Formula, std::less<>> pre;
  for (std::size_t i = 0; i < n; ++i) {
    events.push_back("e" + std::to_string(i));
    pre.emplace(events.back(), static_formula(1 + below(3)));
  }
  EventModel::NamedRelations rel;
  for (const auto& a : b_.agents) {
    auto& pairs = rel[a];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (chance(0.4)) pairs.emplace_back(events[i], events[j]);
      }
    }
  }
  return std::make_shared<const EventModel>(name, std::move(events), rel, pre);
}

Formula Generator::static_formula(std::uint64_t budget) {
  std::size_t unions = 0;
  return grow(budget, 0, unions);
}

Formula Generator::formula() {
  for (int attempt = 0;; ++attempt) {
    pool_.clear();
    env_.clear();
    const std::size_t models = 1 + below(2);
    for (std::size_t i = 0; i < models; ++i) {
      auto e = event_model("E" + std::to_string(i));
      pool_.push_back(e);
      env_.emplace(e->name(), e);
    }
    std::size_t unions = b_.max_unions;
    Formula f = grow(1 + below(b_.max_size), b_.max_dynamic_depth, unions);
    if (f.size() <= b_.max_size && dynamic_depth(f) <= b_.max_dynamic_depth &&
        choice_count(f) <= b_.max_unions) {
      return f;
    }
    if (attempt > 1000) throw std::runtime_error("formula generator cannot meet its bounds");
  }
}

Program Generator::pointed() {
  if (chance(b_.announcement_rate)) {
    return Program::pointed(EventModel::announcement(static_formula(1 + below(2))), 0);
  }
  const auto& e = pool_[below(pool_.size())];
  return Program::pointed(e, below(e->event_count()));
}

Program Generator::program(std::size_t& unions) {
  if (unions > 0 && chance(0.3)) {
    --unions;
    Program left = program(unions);
    return Program::choice(left, program(unions));
  }
  return pointed();
}

Formula Generator::grow(std::uint64_t budget, std::size_t dyn, std::size_t& unions) {
  const auto& atoms = b_.atoms;
  const auto& agents = b_.agents;
  if (budget <= 1) {
    std::size_t r = below(10);
    if (r == 0) return Formula::top();
    if (r == 1) return Formula::bot();
    return Formula::atom(atoms[below(atoms.size())]);
  }
  const bool dynamic = dyn > 0 && !pool_.empty() && budget >= 4;
  switch (below(dynamic ? 5 : 4)) {
    case 0:
      return Formula::negation(grow(budget - 1, dyn, unions));
    case 1: {
      if (budget < 3) return Formula::negation(grow(budget - 1, dyn, unions));
      std::uint64_t left = 1 + below(budget - 2);
      Formula l = grow(left, dyn, unions);
      return Formula::conjunction(l, grow(budget - 1 - left, dyn, unions));
    }
    case 2:
    case 3:
      return Formula::box(agents[below(agents.size())], grow(budget - 1, dyn, unions));
    default: {
      Program p = program(unions);
      std::uint64_t used = 1 + p.size();
      std::uint64_t rest = used < budget ? budget - used : 1;
      return Formula::dyn_box(p, grow(rest, dyn - 1, unions));
    }
  }
}

// ---- oracles --------------------------------------------------------------

namespace {

EpistemicModel restrict_to(const EpistemicModel& m, const std::vector<WorldIndex>& keep) {
  std::vector<std::string> worlds;
  std::vector<long> pos(m.world_count(), -1);
  for (WorldIndex w : keep) {
    pos[w] = static_cast<long>(worlds.size());
    worlds.push_back(m.world_name(w));
  }
  EpistemicModel::Relations rel;
  for (const auto& [a, pairs] : m.relations()) {
    auto& out = rel[a];
    for (auto [x, y] : pairs) {
      if (pos[x] >= 0 && pos[y] >= 0) out.emplace_back(pos[x], pos[y]);
    }
  }
  EpistemicModel::Valuation val;
  for (const auto& [p, ext] : m.valuation()) {
    auto& out = val[p];
    for (WorldIndex x : ext) {
      if (pos[x] >= 0) out.push_back(pos[x]);
    }
  }
  return EpistemicModel(std::move(worlds), std::move(rel), std::move(val));
}

bool announced(const EpistemicModel& m, WorldIndex w, const Program& p, const Formula& body) {
  if (!p.is_pointed()) return announced(m, w, p.left(), body) && announced(m, w, p.right(), body);
  if (!p.model()->is_announcement()) throw std::logic_error("only announcements supported");
  const Formula& pre = p.model()->precondition(0);
  if (!eval_by_restriction(m, w, pre)) return true;
  std::vector<WorldIndex> keep;
  WorldIndex at = 0;
  for (WorldIndex v = 0; v < m.world_count(); ++v) {
    if (eval_by_restriction(m, v, pre)) {
      if (v == w) at = keep.size();
      keep.push_back(v);
    }
  }
  return eval_by_restriction(restrict_to(m, keep), at, body);
}

}  // namespace

bool eval_by_restriction(const EpistemicModel& m, WorldIndex w, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return m.holds(f.name(), w);
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Not:
      return !eval_by_restriction(m, w, f.operand());
    case FormulaKind::And:
      return eval_by_restriction(m, w, f.left()) && eval_by_restriction(m, w, f.right());
    case FormulaKind::Box:
      for (WorldIndex v : m.successors(f.name(), w)) {
        if (!eval_by_restriction(m, v, f.operand())) return false;
      }
      return true;
    case FormulaKind::DynBox:
      return announced(m, w, f.program(), f.operand());
  }
  return false;
}

std::optional<EpistemicModel> naive_product(
    const EpistemicModel& m, const EventModel& e,
    std::vector<std::pair<WorldIndex, EventIndex>>& origin) {
  origin.clear();
  for (WorldIndex w = 0; w < m.world_count(); ++w) {
    for (EventIndex x = 0; x < e.event_count(); ++x) {
      if (eval(m, w, e.precondition(x))) origin.emplace_back(w, x);
    }
  }
  if (origin.empty()) return std::nullopt;
  std::vector<std::string> names;
  for (auto [w, x] : origin) names.push_back(m.world_name(w) + "|" + e.event_name(x));
  std::set<std::string> agents;
  for (const auto& a : m.agents()) agents.insert(a);
  EpistemicModel::Relations rel;
  for (const auto& a : agents) {
    auto& out = rel[a];
    for (std::size_t i = 0; i < origin.size(); ++i) {
      for (std::size_t j = 0; j < origin.size(); ++j) {
        auto ws = m.successors(a, origin[i].first);
        auto xs = e.successors(a, origin[i].second);
        bool world_edge = std::find(ws.begin(), ws.end(), origin[j].first) != ws.end();
        bool event_edge = std::find(xs.begin(), xs.end(), origin[j].second) != xs.end();
        if (world_edge && event_edge) out.emplace_back(i, j);
      }
    }
  }
  EpistemicModel::Valuation val;
  for (const auto& p : m.atoms()) {
    auto& out = val[p];
    for (std::size_t i = 0; i < origin.size(); ++i) {
      if (m.holds(p, origin[i].first)) out.push_back(i);
    }
  }
  return EpistemicModel(std::move(names), std::move(rel), std::move(val));
}

// ---- SmallSweep -----------------------------------------------------------

SmallSweep::SmallSweep(const Formula& f, std::vector<std::string> atoms,
                       std::vector<std::string> agents)
    : atoms_(std::move(atoms)), agents_(std::move(agents)) {
  compile(f);
}

std::size_t SmallSweep::compile(const Formula& f) {
  auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) throw std::logic_error("symbol outside the sweep signature: " + s);
    return static_cast<std::size_t>(it - v.begin());
  };
  Op op{};
  switch (f.kind()) {
    case FormulaKind::Atom:
      op = {Op::Atom, index_of(atoms_, f.name()), 0};
      break;
    case FormulaKind::Top:
      op = {Op::Top, 0, 0};
      break;
    case FormulaKind::Bot:
      op = {Op::Bot, 0, 0};
      break;
    case FormulaKind::Not:
      op = {Op::Not, compile(f.operand()), 0};
      break;
    case FormulaKind::And: {
      std::size_t l = compile(f.left());
      op = {Op::And, l, compile(f.right())};
      break;
    }
    case FormulaKind::Box: {
      std::size_t body = compile(f.operand());
      op = {Op::Box, body, index_of(agents_, f.name())};
      break;
    }
    case FormulaKind::DynBox:
      throw std::logic_error("SmallSweep takes static formulas");
  }
  ops_.push_back(op);
  return ops_.size() - 1;
}

bool SmallSweep::valid_everywhere(std::uint64_t* models_checked) const {
  std::uint64_t checked = 0;
  std::vector<std::uint8_t> slot(ops_.size());
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t rbits = n * n;
    const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1);
    // box[rel][ext]: worlds all of whose successors lie in ext.
    std::vector<std::array<std::uint8_t, 8>> box(std::size_t{1} << rbits);
    for (std::size_t rel = 0; rel < box.size(); ++rel) {
      for (std::size_t ext = 0; ext <= full; ++ext) {
        std::uint8_t out = 0;
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::size_t v = 0; v < n; ++v) {
            if (((rel >> (w * n + v)) & 1) && !((ext >> v) & 1)) ok = false;
          }
          if (ok) out |= static_cast<std::uint8_t>(1u << w);
        }
        box[rel][ext] = out;
      }
    }
    const std::size_t bits = agents_.size() * rbits + atoms_.size() * n;
    const std::uint64_t total = std::uint64_t{1} << bits;
    const std::uint64_t rmask = (std::uint64_t{1} << rbits) - 1;
    const std::size_t vshift = agents_.size() * rbits;
    for (std::uint64_t code = 0; code < total; ++code) {
      ++checked;
      for (std::size_t i = 0; i < ops_.size(); ++i) {
        const Op& op = ops_[i];
        switch (op.kind) {
          case Op::Atom:
            slot[i] = static_cast<std::uint8_t>((code >> (vshift + op.a * n)) & full);
            break;
          case Op::Top:
            slot[i] = full;
            break;
          case Op::Bot:
            slot[i] = 0;
            break;
          case Op::Not:
            slot[i] = static_cast<std::uint8_t>(~slot[op.a] & full);
            break;
          case Op::And:
            slot[i] = slot[op.a] & slot[op.b];
            break;
          case Op::Box:
            slot[i] = box[(code >> (op.b * rbits)) & rmask][slot[op.a]];
            break;
        }
      }
      if (slot.back() != full) {
        if (models_checked) *models_checked = checked;
        return false;
      }
    }
  }
  if (models_checked) *models_checked = checked;
  return true;
}

}  // namespace delkit::testing
