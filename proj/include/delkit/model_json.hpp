#pragma once

// JSON files for epistemic and event models.
//
//   {"agents": [...], "worlds": [...], "relations": {"a": [["w","v"], ...]},
//    "valuation": {"p": ["w", ...]}, "point": "w"}
//
//   {"name": "E1", "agents": [...], "events": [...], "relations": {...},
//    "pre": {"w1": "<formula>"}, "point": "w1"}
//
// An event-model file holds one such object or an array of them; formulas in
// "pre" may use models defined earlier in the same file or environment.

#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "delkit/kripke.hpp"
#include "delkit/parser.hpp"

namespace delkit {

struct LoadedEventModel {
  EventModelPtr model;
  std::optional<EventIndex> point;
};

// Both throw ModelError; "point" defaults to the first world when absent.
PointedModel model_from_json(const nlohmann::json& j);
LoadedEventModel event_model_from_json(const nlohmann::json& j, const EventEnv& env);

nlohmann::json model_to_json(const EpistemicModel& m, std::optional<WorldIndex> point);
nlohmann::json event_model_to_json(const EventModel& e, std::optional<EventIndex> point = {});

PointedModel load_model_file(const std::filesystem::path& path);
// Adds every model in the file to `env` (in file order) and returns them.
std::vector<LoadedEventModel> load_event_file(const std::filesystem::path& path, EventEnv& env);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace delkit
