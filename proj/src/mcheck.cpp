#include "delkit/mcheck.hpp"

#include <pthread.h>

#include <exception>
#include <functional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>

#include "delkit/error.hpp"

namespace delkit {

namespace {

using History = std::span<const PointedEvent>;

class Checker {
 public:
  Checker(const EpistemicModel& m, const MCheckOptions& options, MCheckStats& stats)
      : m_(m), options_(options), stats_(stats) {}

  bool formula(WorldIndex w, History h, const Formula& f, std::size_t depth,
               std::uint64_t parent) {
    enter(w, h, depth, parent, [&] { return measure(h, f); }, tag(f));
    switch (f.kind()) {
      case FormulaKind::Atom:
        return m_.holds(f.name(), w);
      case FormulaKind::Top:
        return true;
      case FormulaKind::Bot:
        return false;
      case FormulaKind::Not:
        return !formula(w, h, f.operand(), depth + 1, current_);
      case FormulaKind::And: {
        std::uint64_t here = current_;
        return formula(w, h, f.left(), depth + 1, here) &&
               formula(w, h, f.right(), depth + 1, here);
      }
      case FormulaKind::Box:
        return belief(w, h, f.name(), f.operand(), depth);
      case FormulaKind::DynBox:
        return boxed_body(w, h, f.program(), f.operand(), depth, current_);
    }
    return false;
  }

 private:
  // [π]ψ given as (program, body), so choice branches need no new formula nodes.
  bool boxed(WorldIndex w, History h, const Program& p, const Formula& body, std::size_t depth,
             std::uint64_t parent) {
    enter(w, h, depth, parent, [&] { return measure(h, p, body); },
          p.is_pointed() ? "dyn" : "choice");
    return boxed_body(w, h, p, body, depth, current_);
  }

  bool boxed_body(WorldIndex w, History h, const Program& p, const Formula& body,
                  std::size_t depth, std::uint64_t here) {
    if (!p.is_pointed()) {
      return boxed(w, h, p.left(), body, depth + 1, here) &&
             boxed(w, h, p.right(), body, depth + 1, here);
    }
    if (!formula(w, h, p.model()->precondition(p.event()), depth + 1, here)) return true;
    std::vector<PointedEvent> extended(h.begin(), h.end());
    extended.push_back(PointedEvent{p.model(), p.event()});
    return formula(w, extended, body, depth + 1, here);
  }

  // B_a ψ: every a-successor u of w, combined with every successor event
  // tuple whose prefixes are executable at u, must satisfy ψ. Tuples are
  // enumerated in lexicographic order with prefix pruning.
  bool belief(WorldIndex w, History h, const std::string& agent, const Formula& body,
              std::size_t depth) {
    const std::uint64_t here = current_;
    const std::size_t n = h.size();
    std::vector<std::span<const EventIndex>> candidates(n);
    for (std::size_t j = 0; j < n; ++j) {
      candidates[j] = h[j].model->successors(agent, h[j].event);
      if (candidates[j].empty()) return true;
    }
    std::vector<PointedEvent> tuple(n);
    std::vector<std::size_t> next(n + 1, 0);
    for (WorldIndex u : m_.successors(agent, w)) {
      std::size_t level = 0;
      next[0] = 0;
      while (true) {
        if (level == n) {
          if (!formula(u, tuple, body, depth + 1, here)) return false;
          if (n == 0) break;
          --level;
          continue;
        }
        if (next[level] == candidates[level].size()) {
          if (level == 0) break;
          --level;
          continue;
        }
        tuple[level] = PointedEvent{h[level].model, candidates[level][next[level]++]};
        History prefix(tuple.data(), level);
        if (formula(u, prefix, tuple[level].precondition(), depth + 1, here)) {
          ++level;
          if (level < n) next[level] = 0;
        }
      }
    }
    return true;
  }

  template <class MeasureFn>
  void enter(WorldIndex w, History h, std::size_t depth, std::uint64_t parent,
             MeasureFn&& measure_fn, const char* tag) {
    ++stats_.calls;
    if (depth > stats_.peak_depth) stats_.peak_depth = depth;
    if (depth > options_.depth_limit) {
      throw BudgetExceeded("model checker exceeded depth limit " +
                           std::to_string(options_.depth_limit));
    }
    if (!options_.debug && !options_.trace) return;
    current_ = measure_fn();
    if (options_.debug) {
      if (parent != 0) {
        ++stats_.measure_checks;
        if (current_ >= parent) {
          throw InvariantViolation("model checker measure did not decrease: " +
                                   std::to_string(parent) + " -> " + std::to_string(current_));
        }
      }
      validate_history(w, h);
    }
    if (options_.trace) *options_.trace << depth << ' ' << current_ << ' ' << tag << '\n';
  }

  void validate_history(WorldIndex w, History h) {
    MCheckOptions plain;
    plain.depth_limit = options_.depth_limit;
    MCheckStats ignored;
    Checker inner(m_, plain, ignored);
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (!inner.formula(w, h.first(j), h[j].precondition(), 0, 0)) {
        throw ContractViolation("event history is not executable at world '" +
                                m_.world_name(w) + "'");
      }
    }
  }

  static const char* tag(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: return "atom";
      case FormulaKind::Top: return "top";
      case FormulaKind::Bot: return "bot";
      case FormulaKind::Not: return "not";
      case FormulaKind::And: return "and";
      case FormulaKind::Box: return "box";
      case FormulaKind::DynBox: return f.program().is_pointed() ? "dyn" : "choice";
    }
    return "?";
  }

  const std::set<std::string>& atoms(const Formula& f) {
    auto it = formula_atoms_.find(f.id());
    if (it == formula_atoms_.end()) it = formula_atoms_.emplace(f.id(), atoms_of(f)).first;
    return it->second;
  }

  const std::set<std::string>& atoms(const EventModel& e) {
    auto it = model_atoms_.find(&e);
    if (it == model_atoms_.end()) {
      std::set<std::string> s;
      collect_atoms(e, s);
      it = model_atoms_.emplace(&e, std::move(s)).first;
    }
    return it->second;
  }

  void program_atoms(const Program& p, std::set<std::string>& out) {
    if (p.is_pointed()) {
      const auto& a = atoms(*p.model());
      out.insert(a.begin(), a.end());
    } else {
      program_atoms(p.left(), out);
      program_atoms(p.right(), out);
    }
  }

  std::uint64_t history_part(History h, std::set<std::string>& relevant) {
    std::uint64_t n = 0;
    for (const auto& step : h) {
      n += step.model->size();
      const auto& a = atoms(*step.model);
      relevant.insert(a.begin(), a.end());
    }
    return n;
  }

  std::uint64_t measure(History h, const Formula& f) {
    std::set<std::string> relevant = atoms(f);
    std::uint64_t n = history_part(h, relevant) + f.size();
    return n + m_.size(relevant);
  }

  std::uint64_t measure(History h, const Program& p, const Formula& body) {
    std::set<std::string> relevant = atoms(body);
    program_atoms(p, relevant);
    std::uint64_t n = history_part(h, relevant) + 1 + p.size() + body.size();
    return n + m_.size(relevant);
  }

  const EpistemicModel& m_;
  const MCheckOptions& options_;
  MCheckStats& stats_;
  std::uint64_t current_ = 0;
  std::unordered_map<const void*, std::set<std::string>> formula_atoms_;
  std::unordered_map<const EventModel*, std::set<std::string>> model_atoms_;
};

// Runs `fn` on a thread whose stack can hold `bytes`, rethrowing its exception.
void run_with_stack(std::size_t bytes, const std::function<void()>& fn) {
  struct Task {
    const std::function<void()>* fn;
    std::exception_ptr error;
  } task{&fn, nullptr};
  auto trampoline = [](void* arg) -> void* {
    auto* t = static_cast<Task*>(arg);
    try {
      (*t->fn)();
    } catch (...) {
      t->error = std::current_exception();
    }
    return nullptr;
  };
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, trampoline, &task);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (task.error) std::rethrow_exception(task.error);
}

constexpr std::uint64_t kInlineDepth = 2'000;
constexpr std::size_t kBytesPerFrame = 1'024;

}  // namespace

std::uint64_t input_measure(const EpistemicModel& m, const EventSequence& history,
                            const Formula& f) {
  std::set<std::string> relevant = atoms_of(f);
  std::uint64_t n = f.size();
  for (const auto& step : history) {
    n += step.model->size();
    collect_atoms(*step.model, relevant);
  }
  return n + m.size(relevant);
}

bool m_check(const EpistemicModel& m, WorldIndex w, const EventSequence& history,
             const Formula& f, const MCheckOptions& options, MCheckStats* stats) {
  if (w >= m.world_count()) throw ContractViolation("world index out of range");
  MCheckStats local;
  MCheckStats& s = stats ? *stats : local;
  // Recursion depth is bounded by the input measure, which strictly
  // decreases along every call chain.
  std::uint64_t bound = input_measure(m, history, f);
  std::uint64_t frames = std::min<std::uint64_t>(bound, options.depth_limit) + 1;
  bool result = false;
  auto run = [&] { result = Checker(m, options, s).formula(w, history, f, 0, 0); };
  if (frames <= kInlineDepth) {
    run();
  } else {
    run_with_stack(static_cast<std::size_t>(frames) * kBytesPerFrame + (1u << 20), run);
  }
  return result;
}

}  // namespace delkit
