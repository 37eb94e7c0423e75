#pragma once

// Hardness-instance generators and brute-force oracles.
//
// QBF: the truth of ∀p1∃p2…∀p(2k-1)∃p(2k) ψ as a model-checking instance on
// a chain, with p_i read as "a dead-end a-path of length exactly i from the
// point" and each quantifier simulated by a (co-)box over M'_i ∪ M'_loop.
//
// Tiling: a (k+1)×(k+1) grid problem, k = 2^n, as a satisfiability instance
// whose models embed two copies of the tiling at the leaves of a binary tree
// of depth 4n.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "delkit/event_model.hpp"
#include "delkit/formula.hpp"
#include "delkit/kripke.hpp"

namespace delkit::gen {

inline const std::string kQbfAgent = "a";

// ---- QBF ------------------------------------------------------------------

struct QbfInstance {
  std::size_t k = 1;
  // Propositional formula over p1..p(2k).
  Formula matrix = Formula::top();
};

// "A p1 E p2 ... A p(2k-1) E p(2k) : <matrix>". Throws ParseError on syntax
// errors, a broken alternation, or a matrix that is not propositional over
// the quantified atoms.
QbfInstance parse_qbf(std::string_view text);
std::string to_string(const QbfInstance& q);

// Edge set of M'_i around its extra event w_loop.
enum class QbfEdges {
  // Chain plus (w0, w_loop) and (wi, w_loop), no loop at w_loop.
  Listed,
  // As Listed, with a loop at w_loop.
  ListedWithLoop,
  // Chain plus (w0, w_loop) and a loop at w_loop; wi is a dead end.
  Chain,
};

struct QbfReduction {
  PointedModel model;
  // M'_1 .. M'_(2k), then M'_loop.
  std::vector<EventModelPtr> event_models;
  // ψ with p_i replaced by <B_a>^i B_a bot.
  Formula matrix;
  Formula goal;

  const EventModelPtr& loop() const { return event_models.back(); }
};

// Chain model w0 -> ... -> w(2k+1), empty valuation.
EpistemicModel qbf_chain(std::size_t k);
EventModelPtr qbf_event_model(std::size_t i, QbfEdges edges = QbfEdges::Chain);
EventModelPtr qbf_loop_model();
// <B_a>^i B_a bot
Formula qbf_atom(std::size_t i);

QbfReduction qbf_reduce(const QbfInstance& q, QbfEdges edges = QbfEdges::Chain);

// Sum of the chain model size, all event-model sizes and |goal|.
std::uint64_t encoded_size(const QbfReduction& r);

// All 2^(2k) assignments, alternating. Throws BudgetExceeded when 2k > 24.
bool qbf_brute(const QbfInstance& q);

// Evaluates a propositional formula; bit i-1 of `assignment` is p_i.
bool eval_matrix(const Formula& matrix, std::uint64_t assignment);

// ---- tiling ---------------------------------------------------------------

struct TileType {
  std::string id;
  std::string left, right, up, down;
};

struct TilingInstance {
  std::vector<TileType> tiles;
  std::size_t t0 = 0;
  std::size_t n = 1;

  std::size_t k() const { return std::size_t{1} << n; }
};

// grid[x][y] is a tile index.
using Grid = std::vector<std::vector<std::size_t>>;

// {"tiles": [{"id", "left", "right", "up", "down"}, ...], "t0": id, "n": 1}.
// "n" is optional and overridden by `n` when given.
TilingInstance tiling_from_json(const nlohmann::json& j, std::optional<std::size_t> n = {});
nlohmann::json tiling_to_json(const TilingInstance& t);

struct TilingReduction {
  // Conjunction of the parts below, in order.
  Formula formula = Formula::top();
  // Named conjuncts: "all-valuations", "some-tile", "one-tile", "same-tile",
  // "first-position", "second-position", "origin", "vertical", "horizontal".
  std::vector<std::pair<std::string, Formula>> parts;
  // For each coordinate atom p_l: the probe for p_l, then for ~p_l.
  std::vector<EventModelPtr> event_models;
  std::vector<std::string> atoms;

  Formula part(std::string_view name) const;
};

std::string coordinate_atom(std::size_t l);
std::string first_tile_atom(const TileType& t);
std::string second_tile_atom(const TileType& t);

TilingReduction tiling_reduce(const TilingInstance& t);

// Backtracking over the (k+1)×(k+1) grid. Throws BudgetExceeded after
// `max_nodes` placements.
std::optional<Grid> tiling_brute(const TilingInstance& t, std::uint64_t max_nodes = 10'000'000);

// Checks τ(0,0) = t0 and both adjacency constraints on the whole grid.
bool valid_tiling(const TilingInstance& t, const Grid& grid);

// Binary tree of depth 4n; leaf atoms decode (x1, y1, x2, y2) most
// significant bit first and carry the tiles of τ at those coordinates.
// Throws ContractViolation when τ is not a valid tiling of at least a k×k grid.
PointedModel witness_model(const TilingInstance& t, const Grid& grid);

// ---- bundles --------------------------------------------------------------

// Writes model.json (if any), events.json, formula.txt and manifest.json.
void write_bundle(const std::filesystem::path& dir, const std::optional<PointedModel>& model,
                  const std::vector<EventModelPtr>& events, const Formula& formula,
                  const nlohmann::json& manifest);

}  // namespace delkit::gen
