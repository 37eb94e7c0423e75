#include "delkit/event_model.hpp"

#include <algorithm>

#include "delkit/error.hpp"

namespace delkit {

EventModel::EventModel(std::string name, std::vector<std::string> events,
                       const NamedRelations& relations,
                       const std::map<std::string, Formula, std::less<>>& preconditions)
    : name_(std::move(name)), events_(std::move(events)) {
  if (events_.empty()) throw ModelError("event model '" + name_ + "' has no events");
  std::map<std::string, EventIndex, std::less<>> index;
  for (EventIndex e = 0; e < events_.size(); ++e) {
    if (events_[e].empty()) throw ModelError("event model '" + name_ + "' has an empty event id");
    if (!index.emplace(events_[e], e).second) {
      throw ModelError("event model '" + name_ + "' repeats event '" + events_[e] + "'");
    }
  }
  for (const auto& [event, pre] : preconditions) {
    if (!index.count(event)) {
      throw ModelError("precondition for unknown event '" + event + "' in '" + name_ + "'");
    }
  }
  pre_.reserve(events_.size());
  for (const auto& e : events_) {
    auto it = preconditions.find(e);
    if (it == preconditions.end()) {
      throw ModelError("event '" + e + "' of '" + name_ + "' has no precondition");
    }
    pre_.push_back(it->second);
  }
  for (const auto& [agent, pairs] : relations) {
    auto& out = relations_[agent];
    for (const auto& [from, to] : pairs) {
      auto f = index.find(from);
      auto t = index.find(to);
      if (f == index.end() || t == index.end()) {
        throw ModelError("relation of agent '" + agent + "' in '" + name_ +
                         "' mentions unknown event");
      }
      out.emplace_back(f->second, t->second);
    }
  }
  finish();
}

EventModelPtr EventModel::announcement(Formula precondition) {
  auto m = std::shared_ptr<EventModel>(new EventModel());
  m->name_ = "!";
  m->events_ = {"e"};
  m->pre_ = {std::move(precondition)};
  m->announcement_ = true;
  m->finish();
  return m;
}

void EventModel::finish() {
  for (auto& [agent, pairs] : relations_) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    auto& adj = adjacency_[agent];
    adj.assign(events_.size(), {});
    for (const auto& [from, to] : pairs) adj[from].push_back(to);
  }
  self_.resize(events_.size());
  for (EventIndex e = 0; e < events_.size(); ++e) self_[e] = {e};

  size_ = events_.size();
  if (announcement_) {
    size_ += 1;
  } else {
    for (const auto& [agent, pairs] : relations_) size_ += pairs.size();
  }
  for (const auto& p : pre_) size_ += p.size();
}

std::optional<EventIndex> EventModel::find_event(std::string_view id) const {
  for (EventIndex e = 0; e < events_.size(); ++e) {
    if (events_[e] == id) return e;
  }
  return std::nullopt;
}

std::span<const EventIndex> EventModel::successors(std::string_view agent, EventIndex e) const {
  if (announcement_) return self_.at(e);
  auto it = adjacency_.find(agent);
  if (it == adjacency_.end()) return {};
  return it->second.at(e);
}

std::vector<std::string> EventModel::agents() const {
  std::vector<std::string> out;
  for (const auto& [agent, pairs] : relations_) {
    if (!pairs.empty()) out.push_back(agent);
  }
  return out;
}

bool operator==(const EventModel& a, const EventModel& b) {
  if (&a == &b) return true;
  if (a.announcement_ != b.announcement_ || a.name_ != b.name_ || a.events_ != b.events_ ||
      a.size_ != b.size_) {
    return false;
  }
  // Relations compared modulo agents whose pair set is empty.
  auto nonempty = [](const auto& rel) {
    std::vector<std::pair<std::string, std::vector<std::pair<EventIndex, EventIndex>>>> out;
    for (const auto& [agent, pairs] : rel) {
      if (!pairs.empty()) out.emplace_back(agent, pairs);
    }
    return out;
  };
  if (nonempty(a.relations_) != nonempty(b.relations_)) return false;
  return a.pre_ == b.pre_;
}

bool operator==(const PointedEvent& a, const PointedEvent& b) {
  return a.event == b.event && (a.model == b.model || *a.model == *b.model);
}

}  // namespace delkit
