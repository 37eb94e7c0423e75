#include "delkit/kripke.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <tuple>

#include "delkit/error.hpp"

namespace delkit {

namespace {

std::atomic<std::uint64_t> g_product_worlds{0};

}  // namespace

EpistemicModel::EpistemicModel(std::vector<std::string> worlds, const NamedRelations& relations,
                               const NamedValuation& valuation)
    : worlds_(std::move(worlds)) {
  for (WorldIndex w = 0; w < worlds_.size(); ++w) {
    if (worlds_[w].empty()) throw ModelError("empty world id");
    if (!index_.emplace(worlds_[w], w).second) {
      throw ModelError("duplicate world '" + worlds_[w] + "'");
    }
  }
  auto lookup = [this](const std::string& id, const std::string& context) {
    auto it = index_.find(id);
    if (it == index_.end()) throw ModelError(context + " mentions unknown world '" + id + "'");
    return it->second;
  };
  for (const auto& [agent, pairs] : relations) {
    auto& out = relations_[agent];
    for (const auto& [from, to] : pairs) {
      out.emplace_back(lookup(from, "relation of agent '" + agent + "'"),
                       lookup(to, "relation of agent '" + agent + "'"));
    }
  }
  for (const auto& [atom, ws] : valuation) {
    auto& out = valuation_[atom];
    for (const auto& w : ws) out.push_back(lookup(w, "valuation of '" + atom + "'"));
  }
  finish();
}

EpistemicModel::EpistemicModel(std::vector<std::string> worlds, Relations relations,
                               Valuation valuation)
    : worlds_(std::move(worlds)), relations_(std::move(relations)), valuation_(std::move(valuation)) {
  for (WorldIndex w = 0; w < worlds_.size(); ++w) {
    if (!index_.emplace(worlds_[w], w).second) {
      throw ModelError("duplicate world '" + worlds_[w] + "'");
    }
  }
  for (const auto& [agent, pairs] : relations_) {
    for (const auto& [from, to] : pairs) {
      if (from >= worlds_.size() || to >= worlds_.size()) {
        throw ModelError("relation of agent '" + agent + "' out of range");
      }
    }
  }
  for (const auto& [atom, ws] : valuation_) {
    for (auto w : ws) {
      if (w >= worlds_.size()) throw ModelError("valuation of '" + atom + "' out of range");
    }
  }
  finish();
}

void EpistemicModel::finish() {
  if (worlds_.empty()) throw ModelError("epistemic model has no worlds");
  for (auto& [agent, pairs] : relations_) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    auto& adj = adjacency_[agent];
    adj.assign(worlds_.size(), {});
    for (const auto& [from, to] : pairs) adj[from].push_back(to);
  }
  for (auto& [atom, ws] : valuation_) {
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    auto& t = truth_[atom];
    t.assign(worlds_.size(), 0);
    for (auto w : ws) t[w] = 1;
  }
}

std::optional<WorldIndex> EpistemicModel::find_world(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const WorldIndex> EpistemicModel::successors(std::string_view agent,
                                                       WorldIndex w) const {
  auto it = adjacency_.find(agent);
  if (it == adjacency_.end()) return {};
  return it->second.at(w);
}

bool EpistemicModel::holds(std::string_view atom, WorldIndex w) const {
  auto it = truth_.find(atom);
  return it != truth_.end() && it->second.at(w) != 0;
}

std::vector<std::string> EpistemicModel::agents() const {
  std::vector<std::string> out;
  for (const auto& [agent, pairs] : relations_) {
    if (!pairs.empty()) out.push_back(agent);
  }
  return out;
}

std::vector<std::string> EpistemicModel::atoms() const {
  std::vector<std::string> out;
  for (const auto& [atom, ws] : valuation_) {
    if (!ws.empty()) out.push_back(atom);
  }
  return out;
}

std::uint64_t EpistemicModel::size(const std::set<std::string>& atoms) const {
  std::uint64_t n = worlds_.size();
  for (const auto& [agent, pairs] : relations_) n += pairs.size();
  for (const auto& atom : atoms) {
    auto it = valuation_.find(atom);
    if (it != valuation_.end()) n += it->second.size();
  }
  return n;
}

std::optional<WorldIndex> ProductUpdate::find(WorldIndex w, EventIndex e) const {
  auto it = std::lower_bound(origin.begin(), origin.end(), std::make_pair(w, e));
  if (it == origin.end() || *it != std::make_pair(w, e)) return std::nullopt;
  return static_cast<WorldIndex>(it - origin.begin());
}

std::optional<ProductUpdate> product_update(const EpistemicModel& m, const EventModel& e) {
  std::vector<std::pair<WorldIndex, EventIndex>> origin;
  for (WorldIndex w = 0; w < m.world_count(); ++w) {
    for (EventIndex ev = 0; ev < e.event_count(); ++ev) {
      if (eval(m, w, e.precondition(ev))) origin.emplace_back(w, ev);
    }
  }
  if (origin.empty()) return std::nullopt;
  g_product_worlds.fetch_add(origin.size(), std::memory_order_relaxed);

  std::vector<std::string> names;
  names.reserve(origin.size());
  for (const auto& [w, ev] : origin) names.push_back(m.world_name(w) + "|" + e.event_name(ev));

  auto index_of = [&](WorldIndex w, EventIndex ev) -> std::optional<WorldIndex> {
    auto it = std::lower_bound(origin.begin(), origin.end(), std::make_pair(w, ev));
    if (it == origin.end() || *it != std::make_pair(w, ev)) return std::nullopt;
    return static_cast<WorldIndex>(it - origin.begin());
  };

  EpistemicModel::Relations relations;
  for (const auto& [agent, pairs] : m.relations()) {
    auto& out = relations[agent];
    for (WorldIndex i = 0; i < origin.size(); ++i) {
      const auto [w, ev] = origin[i];
      for (WorldIndex v : m.successors(agent, w)) {
        for (EventIndex f : e.successors(agent, ev)) {
          if (auto j = index_of(v, f)) out.emplace_back(i, *j);
        }
      }
    }
  }
  EpistemicModel::Valuation valuation;
  for (const auto& [atom, ws] : m.valuation()) {
    auto& out = valuation[atom];
    for (WorldIndex i = 0; i < origin.size(); ++i) {
      if (m.holds(atom, origin[i].first)) out.push_back(i);
    }
  }
  return ProductUpdate{EpistemicModel(std::move(names), std::move(relations), std::move(valuation)),
                       std::move(origin)};
}

namespace {

bool eval_box(const EpistemicModel& m, WorldIndex w, const Program& p, const Formula& body) {
  if (!p.is_pointed()) {
    return eval_box(m, w, p.left(), body) && eval_box(m, w, p.right(), body);
  }
  const EventModel& e = *p.model();
  if (!eval(m, w, e.precondition(p.event()))) return true;
  auto product = product_update(m, e);
  auto at = product->find(w, p.event());
  return eval(product->model, *at, body);
}

}  // namespace

bool eval(const EpistemicModel& m, WorldIndex w, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return m.holds(f.name(), w);
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Not:
      return !eval(m, w, f.operand());
    case FormulaKind::And:
      return eval(m, w, f.left()) && eval(m, w, f.right());
    case FormulaKind::Box:
      for (WorldIndex v : m.successors(f.name(), w)) {
        if (!eval(m, v, f.operand())) return false;
      }
      return true;
    case FormulaKind::DynBox:
      return eval_box(m, w, f.program(), f.operand());
  }
  return false;
}

bool executable(const PointedModel& pm, const PointedEvent& event) {
  return eval(pm.model, pm.point, event.precondition());
}

namespace {

class Bisimulation {
 public:
  Bisimulation(const EpistemicModel& a, const EpistemicModel& b) : a_(a), b_(b) {
    std::set<std::string> agents, atoms;
    for (const auto& x : a.agents()) agents.insert(x);
    for (const auto& x : b.agents()) agents.insert(x);
    for (const auto& x : a.atoms()) atoms.insert(x);
    for (const auto& x : b.atoms()) atoms.insert(x);
    agents_.assign(agents.begin(), agents.end());
    atoms_.assign(atoms.begin(), atoms.end());
  }

  bool related(WorldIndex x, WorldIndex y, std::size_t depth) {
    auto key = std::make_tuple(x, y, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = compute(x, y, depth);
    memo_.emplace(key, ok);
    return ok;
  }

 private:
  bool compute(WorldIndex x, WorldIndex y, std::size_t depth) {
    for (const auto& p : atoms_) {
      if (a_.holds(p, x) != b_.holds(p, y)) return false;
    }
    if (depth == 0) return true;
    for (const auto& agent : agents_) {
      auto xs = a_.successors(agent, x);
      auto ys = b_.successors(agent, y);
      for (WorldIndex x1 : xs) {
        bool matched = std::any_of(ys.begin(), ys.end(),
                                   [&](WorldIndex y1) { return related(x1, y1, depth - 1); });
        if (!matched) return false;
      }
      for (WorldIndex y1 : ys) {
        bool matched = std::any_of(xs.begin(), xs.end(),
                                   [&](WorldIndex x1) { return related(x1, y1, depth - 1); });
        if (!matched) return false;
      }
    }
    return true;
  }

  const EpistemicModel& a_;
  const EpistemicModel& b_;
  std::vector<std::string> agents_;
  std::vector<std::string> atoms_;
  std::map<std::tuple<WorldIndex, WorldIndex, std::size_t>, bool> memo_;
};

}  // namespace

bool bounded_bisimilar(const EpistemicModel& a, WorldIndex pa, const EpistemicModel& b,
                       WorldIndex pb, std::size_t depth) {
  return Bisimulation(a, b).related(pa, pb, depth);
}

std::uint64_t product_worlds_built() { return g_product_worlds.load(std::memory_order_relaxed); }

}  // namespace delkit
