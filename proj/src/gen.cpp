#include "delkit/gen.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "delkit/error.hpp"
#include "delkit/model_json.hpp"
#include "delkit/parser.hpp"

namespace delkit::gen {

namespace {

std::string qbf_var(std::size_t i) { return "p" + std::to_string(i); }

Formula substitute_atoms(const Formula& f, const std::function<Formula(const std::string&)>& sub) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return sub(f.name());
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Not:
      return Formula::negation(substitute_atoms(f.operand(), sub));
    case FormulaKind::And:
      return Formula::conjunction(substitute_atoms(f.left(), sub),
                                  substitute_atoms(f.right(), sub));
    default:
      throw ContractViolation("matrix must be propositional");
  }
}

EventModelPtr chain_event_model(std::string name, std::size_t length,
                                std::vector<std::pair<std::string, std::string>> extra,
                                std::vector<std::string> extra_events, const Formula& last_pre) {
  std::vector<std::string> events;
  std::map<std::string, Formula, std::less<>> pre;
  EventModel::NamedRelations rel;
  auto& a = rel[kQbfAgent];
  for (std::size_t j = 0; j <= length; ++j) {
    events.push_back("w" + std::to_string(j));
    pre.emplace(events.back(), j == length ? last_pre : Formula::top());
    if (j > 0) a.emplace_back(events[j - 1], events[j]);
  }
  for (auto& e : extra_events) {
    pre.emplace(e, Formula::top());
    events.push_back(std::move(e));
  }
  for (auto& edge : extra) a.push_back(std::move(edge));
  return std::make_shared<const EventModel>(std::move(name), std::move(events), rel, pre);
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

// ---- QBF ------------------------------------------------------------------

QbfInstance parse_qbf(std::string_view text) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected ':' after quantifier prefix", 0);
  std::string_view prefix = text.substr(0, colon);
  std::size_t pos = 0;
  std::vector<std::pair<std::string, std::size_t>> tokens;
  while (pos < prefix.size()) {
    if (std::isspace(static_cast<unsigned char>(prefix[pos]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    while (pos < prefix.size() && !std::isspace(static_cast<unsigned char>(prefix[pos]))) ++pos;
    tokens.emplace_back(std::string(prefix.substr(start, pos - start)), start);
  }
  if (tokens.empty() || tokens.size() % 4 != 0) {
    throw ParseError("prefix must be 'A p1 E p2 ...' with an even number of variables", 0);
  }
  QbfInstance q;
  q.k = tokens.size() / 4;
  for (std::size_t v = 0; v < tokens.size() / 2; ++v) {
    const auto& [quant, qpos] = tokens[2 * v];
    const auto& [var, vpos] = tokens[2 * v + 1];
    const char* want = v % 2 == 0 ? "A" : "E";
    if (quant != want) {
      throw ParseError(std::string("expected quantifier '") + want + "' (strict alternation)", qpos);
    }
    if (var != qbf_var(v + 1)) throw ParseError("expected variable '" + qbf_var(v + 1) + "'", vpos);
  }
  try {
    q.matrix = parse_formula(text.substr(colon + 1));
  } catch (const ParseError& e) {
    throw ParseError("in matrix: " + std::string(e.what()), colon + 1 + e.position());
  }
  if (!agents_of(q.matrix).empty() || !is_static(q.matrix)) {
    throw ParseError("matrix must be propositional", colon + 1);
  }
  for (const auto& atom : atoms_of(q.matrix)) {
    bool known = false;
    for (std::size_t i = 1; i <= 2 * q.k; ++i) known = known || atom == qbf_var(i);
    if (!known) throw ParseError("matrix uses unquantified atom '" + atom + "'", colon + 1);
  }
  return q;
}

std::string to_string(const QbfInstance& q) {
  std::string out;
  for (std::size_t i = 1; i <= 2 * q.k; ++i) out += (i % 2 ? "A " : "E ") + qbf_var(i) + " ";
  return out + ": " + delkit::to_string(q.matrix);
}

EpistemicModel qbf_chain(std::size_t k) {
  std::vector<std::string> worlds;
  EpistemicModel::Relations rel;
  auto& a = rel[kQbfAgent];
  for (std::size_t j = 0; j <= 2 * k + 1; ++j) {
    worlds.push_back("w" + std::to_string(j));
    if (j > 0) a.emplace_back(j - 1, j);
  }
  return EpistemicModel(std::move(worlds), std::move(rel), {});
}

EventModelPtr qbf_event_model(std::size_t i, QbfEdges edges) {
  const std::string last = "w" + std::to_string(i);
  std::vector<std::pair<std::string, std::string>> extra{{"w0", "wloop"}};
  if (edges != QbfEdges::Chain) extra.emplace_back(last, "wloop");
  if (edges != QbfEdges::Listed) extra.emplace_back("wloop", "wloop");
  return chain_event_model("M" + std::to_string(i), i, std::move(extra), {"wloop"},
                           Formula::top());
}

EventModelPtr qbf_loop_model() {
  EventModel::NamedRelations rel{{kQbfAgent, {{"w0", "w0"}}}};
  return std::make_shared<const EventModel>("Mloop", std::vector<std::string>{"w0"}, rel,
                                            std::map<std::string, Formula, std::less<>>{
                                                {"w0", Formula::top()}});
}

Formula qbf_atom(std::size_t i) {
  return Formula::diamonds(kQbfAgent, i, Formula::box(kQbfAgent, Formula::bot()));
}

QbfReduction qbf_reduce(const QbfInstance& q, QbfEdges edges) {
  const std::size_t vars = 2 * q.k;
  std::vector<EventModelPtr> models;
  for (std::size_t i = 1; i <= vars; ++i) models.push_back(qbf_event_model(i, edges));
  models.push_back(qbf_loop_model());

  Formula matrix = substitute_atoms(q.matrix, [&](const std::string& name) {
    for (std::size_t i = 1; i <= vars; ++i) {
      if (name == qbf_var(i)) return qbf_atom(i);
    }
    throw ContractViolation("matrix uses unquantified atom '" + name + "'");
  });

  Formula goal = matrix;
  for (std::size_t i = vars; i >= 1; --i) {
    Program choice = Program::choice(Program::pointed(models[i - 1], 0),
                                     Program::pointed(models.back(), 0));
    goal = i % 2 ? Formula::dyn_box(choice, goal) : Formula::dyn_diamond(choice, goal);
  }
  return QbfReduction{PointedModel{qbf_chain(q.k), 0}, std::move(models), matrix, goal};
}

std::uint64_t encoded_size(const QbfReduction& r) {
  std::uint64_t n = r.model.model.size({}) + r.goal.size();
  for (const auto& e : r.event_models) n += e->size();
  return n;
}

bool eval_matrix(const Formula& matrix, std::uint64_t assignment) {
  switch (matrix.kind()) {
    case FormulaKind::Atom: {
      const std::string& name = matrix.name();
      if (name.size() < 2 || name[0] != 'p') throw ContractViolation("not a QBF variable: " + name);
      std::size_t i = std::stoul(name.substr(1));
      if (i == 0 || i > 64) throw ContractViolation("not a QBF variable: " + name);
      return (assignment >> (i - 1)) & 1u;
    }
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Not:
      return !eval_matrix(matrix.operand(), assignment);
    case FormulaKind::And:
      return eval_matrix(matrix.left(), assignment) && eval_matrix(matrix.right(), assignment);
    default:
      throw ContractViolation("matrix must be propositional");
  }
}

bool qbf_brute(const QbfInstance& q) {
  const std::size_t vars = 2 * q.k;
  if (vars > 24) throw BudgetExceeded("brute-force QBF limited to 24 variables");
  std::function<bool(std::size_t, std::uint64_t)> solve = [&](std::size_t i, std::uint64_t a) {
    if (i > vars) return eval_matrix(q.matrix, a);
    bool f = solve(i + 1, a);
    bool t = solve(i + 1, a | (std::uint64_t{1} << (i - 1)));
    return i % 2 ? (f && t) : (f || t);
  };
  return solve(1, 0);
}

// ---- tiling ---------------------------------------------------------------

TilingInstance tiling_from_json(const nlohmann::json& j, std::optional<std::size_t> n) {
  TilingInstance t;
  try {
    std::set<std::string> seen;
    for (const auto& tile : j.at("tiles")) {
      TileType tt{tile.at("id").get<std::string>(), tile.at("left").get<std::string>(),
                  tile.at("right").get<std::string>(), tile.at("up").get<std::string>(),
                  tile.at("down").get<std::string>()};
      if (!valid_id(tt.id)) throw ModelError("tile id '" + tt.id + "' is not an identifier");
      if (!seen.insert(tt.id).second) throw ModelError("duplicate tile id '" + tt.id + "'");
      t.tiles.push_back(std::move(tt));
    }
    if (t.tiles.empty()) throw ModelError("no tiles");
    std::string t0 = j.at("t0").get<std::string>();
    bool found = false;
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
      if (t.tiles[i].id == t0) {
        t.t0 = i;
        found = true;
      }
    }
    if (!found) throw ModelError("t0 '" + t0 + "' is not a tile");
    t.n = n ? *n : j.value("n", std::size_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed tiling instance: ") + e.what());
  }
  if (t.n == 0 || t.n > 8) throw ModelError("n must be between 1 and 8");
  return t;
}

nlohmann::json tiling_to_json(const TilingInstance& t) {
  nlohmann::json tiles = nlohmann::json::array();
  for (const auto& tile : t.tiles) {
    tiles.push_back({{"id", tile.id},
                     {"left", tile.left},
                     {"right", tile.right},
                     {"up", tile.up},
                     {"down", tile.down}});
  }
  return {{"tiles", tiles}, {"t0", t.tiles.at(t.t0).id}, {"n", t.n}};
}

std::string coordinate_atom(std::size_t l) { return "p" + std::to_string(l); }
std::string first_tile_atom(const TileType& t) { return "one_" + t.id; }
std::string second_tile_atom(const TileType& t) { return "two_" + t.id; }

Formula TilingReduction::part(std::string_view name) const {
  for (const auto& [n, f] : parts) {
    if (n == name) return f;
  }
  throw ContractViolation("no tiling conjunct named '" + std::string(name) + "'");
}

TilingReduction tiling_reduce(const TilingInstance& t) {
  using F = Formula;
  const std::size_t n = t.n;
  const std::size_t m = 4 * n;
  const std::string& a = kQbfAgent;
  auto p = [](std::size_t i) { return F::atom(coordinate_atom(i)); };
  auto iff = [&](std::size_t i, std::size_t j) { return F::equivalence(p(i), p(j)); };
  auto leaves = [&](F f) { return F::boxes(a, m, std::move(f)); };

  // Coordinate comparisons over bits [lo, lo + n) against [lo + 2n, lo + 3n).
  auto equal = [&](std::size_t lo) {
    std::vector<F> parts;
    for (std::size_t i = lo; i < lo + n; ++i) parts.push_back(iff(i, i + 2 * n));
    return F::conjunction_of(parts);
  };
  auto successor = [&](std::size_t lo) {
    std::vector<F> cases;
    for (std::size_t i = lo; i < lo + n; ++i) {
      std::vector<F> parts;
      for (std::size_t j = lo; j < i; ++j) parts.push_back(iff(j + 2 * n, j));
      parts.push_back(F::negation(p(i + 2 * n)));
      parts.push_back(p(i));
      for (std::size_t j = i + 1; j < lo + n; ++j) {
        parts.push_back(F::conjunction(p(j + 2 * n), F::negation(p(j))));
      }
      cases.push_back(F::conjunction_of(parts));
    }
    return F::disjunction_of(cases);
  };

  std::vector<F> one, two;
  for (const auto& tile : t.tiles) {
    one.push_back(F::atom(first_tile_atom(tile)));
    two.push_back(F::atom(second_tile_atom(tile)));
  }

  TilingReduction r;
  for (std::size_t l = 0; l < m; ++l) r.atoms.push_back(coordinate_atom(l));
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    r.atoms.push_back(first_tile_atom(t.tiles[i]));
    r.atoms.push_back(second_tile_atom(t.tiles[i]));
  }

  {
    std::vector<F> levels;
    for (std::size_t l = 0; l < m; ++l) {
      std::vector<F> parts{F::diamond(a, p(l)), F::diamond(a, F::negation(p(l)))};
      for (std::size_t i = 0; i < l; ++i) {
        parts.push_back(F::conjunction(F::implication(p(i), F::box(a, p(i))),
                                       F::implication(F::negation(p(i)),
                                                      F::box(a, F::negation(p(i))))));
      }
      levels.push_back(F::boxes(a, l, F::conjunction_of(parts)));
    }
    r.parts.emplace_back("all-valuations", F::conjunction_of(levels));
  }

  r.parts.emplace_back("some-tile",
                       leaves(F::conjunction(F::disjunction_of(one), F::disjunction_of(two))));
  {
    std::vector<F> parts;
    for (std::size_t i = 0; i < one.size(); ++i) {
      for (std::size_t j = 0; j < one.size(); ++j) {
        if (i == j) continue;
        parts.push_back(F::conjunction(F::implication(one[i], F::negation(one[j])),
                                       F::implication(two[i], F::negation(two[j]))));
      }
    }
    r.parts.emplace_back("one-tile", leaves(F::conjunction_of(parts)));
  }
  {
    std::vector<F> parts;
    for (std::size_t i = 0; i < one.size(); ++i) parts.push_back(F::equivalence(one[i], two[i]));
    r.parts.emplace_back(
        "same-tile",
        leaves(F::implication(F::conjunction(equal(0), equal(n)), F::conjunction_of(parts))));
  }

  for (std::size_t l = 0; l < m; ++l) {
    for (bool positive : {true, false}) {
      std::string name = (positive ? "P" : "N") + std::to_string(l);
      F literal = positive ? p(l) : F::negation(p(l));
      r.event_models.push_back(chain_event_model(name, m, {}, {}, literal));
    }
  }
  auto probe = [&](std::size_t from, std::size_t to, const std::vector<F>& tiles) {
    std::vector<F> options;
    for (const auto& tile : tiles) options.push_back(leaves(tile));
    F body = F::disjunction_of(options);
    for (std::size_t l = to; l-- > from;) {
      body = F::dyn_box(Program::choice(Program::pointed(r.event_models[2 * l], 0),
                                        Program::pointed(r.event_models[2 * l + 1], 0)),
                        body);
    }
    return body;
  };
  r.parts.emplace_back("first-position", probe(0, 2 * n, one));
  r.parts.emplace_back("second-position", probe(2 * n, m, two));

  {
    std::vector<F> zeros;
    for (std::size_t i = 0; i < m; ++i) zeros.push_back(F::negation(p(i)));
    r.parts.emplace_back("origin", leaves(F::implication(F::conjunction_of(zeros), one[t.t0])));
  }
  // The first tiling's tile t sits above (resp. right of) the second's t'.
  auto neighbours = [&](F guard, auto match) {
    std::vector<F> parts;
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
      std::vector<F> fits;
      for (std::size_t j = 0; j < t.tiles.size(); ++j) {
        if (match(t.tiles[i], t.tiles[j])) fits.push_back(two[j]);
      }
      parts.push_back(F::implication(one[i], F::disjunction_of(fits)));
    }
    return leaves(F::implication(std::move(guard), F::conjunction_of(parts)));
  };
  r.parts.emplace_back("vertical",
                       neighbours(F::conjunction(equal(0), successor(n)),
                                  [](const TileType& upper, const TileType& lower) {
                                    return lower.up == upper.down;
                                  }));
  r.parts.emplace_back("horizontal",
                       neighbours(F::conjunction(successor(0), equal(n)),
                                  [](const TileType& right, const TileType& left) {
                                    return left.right == right.left;
                                  }));

  std::vector<F> all;
  for (const auto& part : r.parts) all.push_back(part.second);
  r.formula = F::conjunction_of(all);
  return r;
}

bool valid_tiling(const TilingInstance& t, const Grid& grid) {
  const std::size_t side = grid.size();
  if (side == 0 || grid[0].empty() || grid[0][0] != t.t0) return false;
  for (const auto& column : grid) {
    if (column.size() != side) return false;
    for (std::size_t tile : column) {
      if (tile >= t.tiles.size()) return false;
    }
  }
  for (std::size_t x = 0; x < side; ++x) {
    for (std::size_t y = 0; y < side; ++y) {
      const TileType& here = t.tiles[grid[x][y]];
      if (y + 1 < side && here.up != t.tiles[grid[x][y + 1]].down) return false;
      if (x + 1 < side && here.right != t.tiles[grid[x + 1][y]].left) return false;
    }
  }
  return true;
}

std::optional<Grid> tiling_brute(const TilingInstance& t, std::uint64_t max_nodes) {
  const std::size_t side = t.k() + 1;
  Grid grid(side, std::vector<std::size_t>(side, 0));
  std::uint64_t nodes = 0;
  // Cells in row-major order from (0,0); each cell must match the tile to
  // its left and the tile below it.
  std::function<bool(std::size_t)> place = [&](std::size_t cell) {
    if (cell == side * side) return true;
    const std::size_t x = cell % side, y = cell / side;
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
      if (cell == 0 && i != t.t0) continue;
      const TileType& tile = t.tiles[i];
      if (x > 0 && t.tiles[grid[x - 1][y]].right != tile.left) continue;
      if (y > 0 && t.tiles[grid[x][y - 1]].up != tile.down) continue;
      if (++nodes > max_nodes) throw BudgetExceeded("tiling search exceeded node budget");
      grid[x][y] = i;
      if (place(cell + 1)) return true;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return grid;
}

PointedModel witness_model(const TilingInstance& t, const Grid& grid) {
  const std::size_t n = t.n;
  const std::size_t m = 4 * n;
  if (grid.size() < t.k() || !valid_tiling(t, grid)) {
    throw ContractViolation("witness_model needs a valid tiling of at least the k x k grid");
  }
  std::vector<std::string> worlds;
  EpistemicModel::Relations rel;
  EpistemicModel::Valuation val;
  auto& edges = rel[kQbfAgent];
  // Node (d, bits) has index 2^d - 1 + bits, bits read most significant first.
  auto index = [](std::size_t d, std::size_t bits) { return (std::size_t{1} << d) - 1 + bits; };
  auto decode = [](std::size_t bits, std::size_t from, std::size_t count, std::size_t total) {
    return (bits >> (total - from - count)) & ((std::size_t{1} << count) - 1);
  };
  for (std::size_t d = 0; d <= m; ++d) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << d); ++bits) {
      std::string name = "n";
      for (std::size_t i = 0; i < d; ++i) name += ((bits >> (d - 1 - i)) & 1) ? '1' : '0';
      worlds.push_back(name);
      const std::size_t w = index(d, bits);
      for (std::size_t i = 0; i < d; ++i) {
        if ((bits >> (d - 1 - i)) & 1) val[coordinate_atom(i)].push_back(w);
      }
      if (d < m) {
        edges.emplace_back(w, index(d + 1, bits << 1));
        edges.emplace_back(w, index(d + 1, (bits << 1) | 1));
      } else {
        const std::size_t x1 = decode(bits, 0, n, m), y1 = decode(bits, n, n, m);
        const std::size_t x2 = decode(bits, 2 * n, n, m), y2 = decode(bits, 3 * n, n, m);
        val[first_tile_atom(t.tiles[grid[x1][y1]])].push_back(w);
        val[second_tile_atom(t.tiles[grid[x2][y2]])].push_back(w);
      }
    }
  }
  return PointedModel{EpistemicModel(std::move(worlds), std::move(rel), std::move(val)), 0};
}

// ---- bundles --------------------------------------------------------------

void write_bundle(const std::filesystem::path& dir, const std::optional<PointedModel>& model,
                  const std::vector<EventModelPtr>& events, const Formula& formula,
                  const nlohmann::json& manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ModelError(dir.string() + ": " + ec.message());
  if (model) write_json_file(dir / "model.json", model_to_json(model->model, model->point));
  nlohmann::json all = nlohmann::json::array();
  for (const auto& e : events) all.push_back(event_model_to_json(*e, 0));
  write_json_file(dir / "events.json", all);
  std::ofstream out(dir / "formula.txt");
  if (!out) throw ModelError((dir / "formula.txt").string() + ": cannot write");
  out << delkit::to_string(formula) << '\n';
  write_json_file(dir / "manifest.json", manifest);
}

}  // namespace delkit::gen
