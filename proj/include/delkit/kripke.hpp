#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "delkit/event_model.hpp"
#include "delkit/formula.hpp"

namespace delkit {

using WorldIndex = std::size_t;

// Finite epistemic model (W, R, V). Agents and atoms without an entry have an
// empty relation / extension.
class EpistemicModel {
 public:
  using NamedRelations =
      std::map<std::string, std::vector<std::pair<std::string, std::string>>, std::less<>>;
  using NamedValuation = std::map<std::string, std::vector<std::string>, std::less<>>;
  using Relations =
      std::map<std::string, std::vector<std::pair<WorldIndex, WorldIndex>>, std::less<>>;
  using Valuation = std::map<std::string, std::vector<WorldIndex>, std::less<>>;

  // Throws ModelError on an empty world set, duplicate ids or dangling references.
  EpistemicModel(std::vector<std::string> worlds, const NamedRelations& relations,
                 const NamedValuation& valuation);
  EpistemicModel(std::vector<std::string> worlds, Relations relations, Valuation valuation);

  std::size_t world_count() const { return worlds_.size(); }
  const std::string& world_name(WorldIndex w) const { return worlds_.at(w); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  std::optional<WorldIndex> find_world(std::string_view id) const;

  std::span<const WorldIndex> successors(std::string_view agent, WorldIndex w) const;
  bool holds(std::string_view atom, WorldIndex w) const;

  const Relations& relations() const { return relations_; }
  const Valuation& valuation() const { return valuation_; }
  std::vector<std::string> agents() const;
  std::vector<std::string> atoms() const;

  // card(W) + sum of card(R_a) + sum of card(V(p)) over the given atoms.
  std::uint64_t size(const std::set<std::string>& atoms) const;

 private:
  void finish();

  std::vector<std::string> worlds_;
  std::map<std::string, WorldIndex, std::less<>> index_;
  Relations relations_;
  Valuation valuation_;
  std::map<std::string, std::vector<std::vector<WorldIndex>>, std::less<>> adjacency_;
  std::map<std::string, std::vector<char>, std::less<>> truth_;
};

struct PointedModel {
  EpistemicModel model;
  WorldIndex point = 0;
};

// Result of M ⊗ E: the surviving pairs, in lexicographic (world, event) order.
// World names are "w|e".
struct ProductUpdate {
  EpistemicModel model;
  std::vector<std::pair<WorldIndex, EventIndex>> origin;

  std::optional<WorldIndex> find(WorldIndex w, EventIndex e) const;
};

// Naive reference semantics. Dynamic modalities materialize product models.
bool eval(const EpistemicModel& m, WorldIndex w, const Formula& f);
inline bool eval(const PointedModel& pm, const Formula& f) { return eval(pm.model, pm.point, f); }

// Whether Pre(e) holds at the point.
bool executable(const PointedModel& pm, const PointedEvent& event);

// nullopt is the empty product (no (w, e) pair survives).
std::optional<ProductUpdate> product_update(const EpistemicModel& m, const EventModel& e);

// Depth-d bisimilarity of two pointed models, over the union of their atoms
// and agents.
bool bounded_bisimilar(const EpistemicModel& a, WorldIndex pa, const EpistemicModel& b,
                       WorldIndex pb, std::size_t depth);

// Total number of product worlds ever built by product_update in this process.
std::uint64_t product_worlds_built();

}  // namespace delkit
