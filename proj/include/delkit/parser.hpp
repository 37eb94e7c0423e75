#pragma once

// Text syntax for formulas.
//
//   F ::= atom | top | bot | ~F | (F & F) | (F | F) | (F -> F) | (F <-> F)
//       | B{agent} F | <B{agent}> F | [P] F | <P> F | [!F] F
//   P ::= NAME#EVENT | !F | P u P | P ; P | (P)
//
// `&` binds tighter than `|`, then `->` (right associative), then `<->`.
// Prefix operators bind tighter than every binary connective. In programs,
// `;` binds tighter than `u`. Printing always parenthesizes binary
// connectives, so printed text parses back to the identical tree.

#include <map>
#include <string>
#include <string_view>

#include "delkit/event_model.hpp"
#include "delkit/formula.hpp"

namespace delkit {

using EventEnv = std::map<std::string, EventModelPtr, std::less<>>;

// Throws ParseError on bad syntax, unbound model names and unknown events.
Formula parse_formula(std::string_view text, const EventEnv& env = {});

std::string to_string(const Formula& f);
std::string to_string(const Program& p);

}  // namespace delkit
