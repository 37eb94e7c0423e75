#include "delkit/model_json.hpp"

#include <fstream>
#include <set>

#include "delkit/error.hpp"

namespace delkit {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const char* field) {
  if (!j.is_array()) throw ModelError(std::string("'") + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ModelError(std::string("'") + field + "' must contain strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::map<std::string, std::vector<std::pair<std::string, std::string>>, std::less<>>
relation_map(const json& j, const std::optional<std::set<std::string>>& agents) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>, std::less<>> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw ModelError("'relations' must be an object");
  for (const auto& [agent, pairs] : j.items()) {
    if (agents && !agents->count(agent)) {
      throw ModelError("relation for agent '" + agent + "' not listed in 'agents'");
    }
    auto& dst = out[agent];
    if (!pairs.is_array()) throw ModelError("relation of '" + agent + "' must be an array");
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        throw ModelError("relation pairs of '" + agent + "' must be [from, to] strings");
      }
      dst.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  return out;
}

std::optional<std::set<std::string>> agent_set(const json& j) {
  if (!j.contains("agents")) return std::nullopt;
  auto list = string_list(j.at("agents"), "agents");
  return std::set<std::string>(list.begin(), list.end());
}

}  // namespace

PointedModel model_from_json(const json& j) {
  if (!j.is_object()) throw ModelError("epistemic model must be a JSON object");
  if (!j.contains("worlds")) throw ModelError("epistemic model lacks 'worlds'");
  auto worlds = string_list(j.at("worlds"), "worlds");
  auto relations = relation_map(j.value("relations", json()), agent_set(j));
  EpistemicModel::NamedValuation valuation;
  if (j.contains("valuation")) {
    const auto& v = j.at("valuation");
    if (!v.is_object()) throw ModelError("'valuation' must be an object");
    for (const auto& [atom, ws] : v.items()) valuation[atom] = string_list(ws, "valuation");
  }
  EpistemicModel m(std::move(worlds), relations, valuation);
  WorldIndex point = 0;
  if (j.contains("point")) {
    if (!j.at("point").is_string()) throw ModelError("'point' must be a string");
    auto p = m.find_world(j.at("point").get<std::string>());
    if (!p) throw ModelError("'point' is not a world");
    point = *p;
  }
  return PointedModel{std::move(m), point};
}

LoadedEventModel event_model_from_json(const json& j, const EventEnv& env) {
  if (!j.is_object()) throw ModelError("event model must be a JSON object");
  if (!j.contains("name") || !j.at("name").is_string()) {
    throw ModelError("event model lacks a string 'name'");
  }
  std::string name = j.at("name").get<std::string>();
  if (!j.contains("events")) throw ModelError("event model '" + name + "' lacks 'events'");
  auto events = string_list(j.at("events"), "events");
  auto relations = relation_map(j.value("relations", json()), agent_set(j));
  std::map<std::string, Formula, std::less<>> pre;
  if (j.contains("pre")) {
    const auto& p = j.at("pre");
    if (!p.is_object()) throw ModelError("'pre' of '" + name + "' must be an object");
    for (const auto& [event, text] : p.items()) {
      if (!text.is_string()) throw ModelError("precondition of '" + event + "' must be a string");
      try {
        pre.emplace(event, parse_formula(text.get<std::string>(), env));
      } catch (const ParseError& e) {
        throw ModelError("precondition of '" + name + "#" + event + "': " + e.what());
      }
    }
  }
  auto model = std::make_shared<const EventModel>(name, std::move(events), relations, pre);
  LoadedEventModel out{model, std::nullopt};
  if (j.contains("point")) {
    if (!j.at("point").is_string()) throw ModelError("'point' must be a string");
    auto p = model->find_event(j.at("point").get<std::string>());
    if (!p) throw ModelError("'point' of '" + name + "' is not an event");
    out.point = *p;
  }
  return out;
}

json model_to_json(const EpistemicModel& m, std::optional<WorldIndex> point) {
  json j;
  j["agents"] = m.agents();
  j["worlds"] = m.worlds();
  json rel = json::object();
  for (const auto& [agent, pairs] : m.relations()) {
    if (pairs.empty()) continue;
    json list = json::array();
    for (const auto& [from, to] : pairs) list.push_back({m.world_name(from), m.world_name(to)});
    rel[agent] = std::move(list);
  }
  j["relations"] = std::move(rel);
  json val = json::object();
  for (const auto& [atom, ws] : m.valuation()) {
    if (ws.empty()) continue;
    json list = json::array();
    for (auto w : ws) list.push_back(m.world_name(w));
    val[atom] = std::move(list);
  }
  j["valuation"] = std::move(val);
  if (point) j["point"] = m.world_name(*point);
  return j;
}

json event_model_to_json(const EventModel& e, std::optional<EventIndex> point) {
  if (e.is_announcement()) throw ContractViolation("announcement models have no file form");
  json j;
  j["name"] = e.name();
  j["agents"] = e.agents();
  std::vector<std::string> events;
  for (EventIndex i = 0; i < e.event_count(); ++i) events.push_back(e.event_name(i));
  j["events"] = events;
  json rel = json::object();
  for (const auto& [agent, pairs] : e.relations()) {
    if (pairs.empty()) continue;
    json list = json::array();
    for (const auto& [from, to] : pairs) list.push_back({e.event_name(from), e.event_name(to)});
    rel[agent] = std::move(list);
  }
  j["relations"] = std::move(rel);
  json pre = json::object();
  for (EventIndex i = 0; i < e.event_count(); ++i) pre[e.event_name(i)] = to_string(e.precondition(i));
  j["pre"] = std::move(pre);
  if (point) j["point"] = e.event_name(*point);
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte));
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ModelError(path.string() + ": cannot write file");
  out << j.dump(2) << '\n';
}

PointedModel load_model_file(const std::filesystem::path& path) {
  json j = read_json_file(path);
  try {
    return model_from_json(j);
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

std::vector<LoadedEventModel> load_event_file(const std::filesystem::path& path, EventEnv& env) {
  json j = read_json_file(path);
  std::vector<LoadedEventModel> out;
  try {
    if (j.is_array()) {
      for (const auto& item : j) {
        out.push_back(event_model_from_json(item, env));
        env[out.back().model->name()] = out.back().model;
      }
    } else {
      out.push_back(event_model_from_json(j, env));
      env[out.back().model->name()] = out.back().model;
    }
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace delkit
