#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "delkit/formula.hpp"

namespace delkit {

// Finite event model (W', R', Pre). Agents without a relation entry have an
// empty accessibility relation. Announcement models are the exception: their
// single event is reflexive for every agent, whichever agents exist.
class EventModel {
 public:
  using NamedRelations =
      std::map<std::string, std::vector<std::pair<std::string, std::string>>, std::less<>>;

  EventModel(std::string name, std::vector<std::string> events, const NamedRelations& relations,
             const std::map<std::string, Formula, std::less<>>& preconditions);

  // Single event "e" with the given precondition, reflexive for all agents.
  static EventModelPtr announcement(Formula precondition);

  const std::string& name() const { return name_; }
  std::size_t event_count() const { return events_.size(); }
  const std::string& event_name(EventIndex e) const { return events_.at(e); }
  std::optional<EventIndex> find_event(std::string_view id) const;
  const Formula& precondition(EventIndex e) const { return pre_.at(e); }
  std::span<const EventIndex> successors(std::string_view agent, EventIndex e) const;

  bool is_announcement() const { return announcement_; }
  // Sorted, duplicate-free pair sets per agent (empty for announcements).
  const std::map<std::string, std::vector<std::pair<EventIndex, EventIndex>>, std::less<>>&
  relations() const {
    return relations_;
  }
  std::vector<std::string> agents() const;

  // card(W') + sum over agents of card(R'_a) + sum over events of |Pre|.
  // An announcement's universal loop counts as a single pair.
  std::uint64_t size() const { return size_; }

  // Same name, events, relations and structurally equal preconditions.
  friend bool operator==(const EventModel& a, const EventModel& b);

 private:
  EventModel() = default;
  void finish();

  std::string name_;
  std::vector<std::string> events_;
  std::vector<Formula> pre_;
  std::map<std::string, std::vector<std::pair<EventIndex, EventIndex>>, std::less<>> relations_;
  std::map<std::string, std::vector<std::vector<EventIndex>>, std::less<>> adjacency_;
  std::vector<std::vector<EventIndex>> self_;
  bool announcement_ = false;
  std::uint64_t size_ = 0;
};

// A pointed event model (E, e); also one step of an event history.
struct PointedEvent {
  EventModelPtr model;
  EventIndex event = 0;

  const Formula& precondition() const { return model->precondition(event); }
  friend bool operator==(const PointedEvent& a, const PointedEvent& b);
};

using EventSequence = std::vector<PointedEvent>;

}  // namespace delkit
