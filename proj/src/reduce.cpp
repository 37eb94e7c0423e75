#include "delkit/reduce.hpp"

#include <map>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "delkit/event_model.hpp"

namespace delkit {

namespace {

class Translator {
 public:
  Formula run(const Formula& f) {
    auto it = done_.find(f.id());
    if (it != done_.end()) return it->second;
    Formula out = step(f);
    done_.emplace(f.id(), out);
    keep_.push_back(f);
    return out;
  }

 private:
  Formula step(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom:
      case FormulaKind::Top:
      case FormulaKind::Bot:
        return f;
      case FormulaKind::Not:
        return Formula::negation(run(f.operand()));
      case FormulaKind::And:
        return Formula::conjunction(run(f.left()), run(f.right()));
      case FormulaKind::Box:
        return Formula::box(f.name(), run(f.operand()));
      case FormulaKind::DynBox:
        return push(f.program(), run(f.operand()));
    }
    return f;
  }

  // [π]χ for event-model-free χ.
  Formula push(const Program& p, const Formula& body) {
    if (!p.is_pointed()) {
      return Formula::conjunction(push(p.left(), body), push(p.right(), body));
    }
    return push_event(p.model(), p.event(), body);
  }

  Formula pre(const EventModelPtr& model, EventIndex e) {
    return run(model->precondition(e));
  }

  Formula push_event(const EventModelPtr& model, EventIndex e, const Formula& body) {
    Key key{model.get(), e, body.id()};
    if (auto it = pushed_.find(key); it != pushed_.end()) return it->second;
    Formula out = push_event_step(model, e, body);
    pushed_.emplace(key, out);
    keep_.push_back(body);
    return out;
  }

  Formula push_event_step(const EventModelPtr& model, EventIndex e, const Formula& body) {
    switch (body.kind()) {
      case FormulaKind::Atom:
      case FormulaKind::Bot:
        return Formula::implication(pre(model, e), body);
      case FormulaKind::Top:
        return Formula::top();
      case FormulaKind::Not:
        return Formula::implication(pre(model, e),
                                    Formula::negation(push_event(model, e, body.operand())));
      case FormulaKind::And:
        return Formula::conjunction(push_event(model, e, body.left()),
                                    push_event(model, e, body.right()));
      case FormulaKind::Box: {
        std::vector<Formula> parts;
        for (EventIndex f : model->successors(body.name(), e)) {
          parts.push_back(Formula::box(body.name(), push_event(model, f, body.operand())));
        }
        return Formula::implication(pre(model, e), Formula::conjunction_of(parts));
      }
      case FormulaKind::DynBox:
        // Unreachable: bodies are translated first.
        return push_event(model, e, run(body));
    }
    return body;
  }

  using Key = std::tuple<const EventModel*, EventIndex, const void*>;
  std::unordered_map<const void*, Formula> done_;
  std::map<Key, Formula> pushed_;
  std::vector<Formula> keep_;  // pins memo keys so node addresses stay unique
};

}  // namespace

Formula translate(const Formula& f) { return Translator().run(f); }

TranslationReport translate_with_report(const Formula& f) {
  Formula out = translate(f);
  return TranslationReport{f, out, f.size(), out.size()};
}

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Not: {
      Formula x = simplify(f.operand());
      if (x.is(FormulaKind::Top)) return Formula::bot();
      if (x.is(FormulaKind::Bot)) return Formula::top();
      if (x.is(FormulaKind::Not)) return x.operand();
      return Formula::negation(x);
    }
    case FormulaKind::And: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (l.is(FormulaKind::Bot) || r.is(FormulaKind::Bot)) return Formula::bot();
      if (l.is(FormulaKind::Top)) return r;
      if (r.is(FormulaKind::Top)) return l;
      return Formula::conjunction(l, r);
    }
    case FormulaKind::Box: {
      Formula x = simplify(f.operand());
      if (x.is(FormulaKind::Top)) return Formula::top();
      return Formula::box(f.name(), x);
    }
    case FormulaKind::DynBox: {
      Formula x = simplify(f.operand());
      if (x.is(FormulaKind::Top)) return Formula::top();
      return Formula::dyn_box(f.program(), x);
    }
  }
  return f;
}

}  // namespace delkit
