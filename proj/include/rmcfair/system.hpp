// Parameterized-system specifications: configurations are words, the two
// half-moves are length-preserving word relations, and the players strictly
// alternate. A specification carries the structural invariants validate()
// enforces:
//
//   - initial and goal configurations belong to the scheduler's side (v1)
//   - v1 and v2 are disjoint
//   - p1 goes from v1 into v2, p2 from v2 back into v1
//   - configurations outside the goal set always have a move to make
//   - when a fairness annotator is declared, it annotates every configuration
//
// The textual format:
//
//   system token-death {
//     alphabet a, b, am;
//     let I = (a/a | b/b);
//     v1    = (a | b)+;
//     v2    = (a | b)* am (a | b)*;
//     init  = (a | b)+;
//     final = b+;
//     p1    = I* (a/am) I*;
//     p2    = I* (am/b) I*;
//     fair  = ...;                       // optional
//   }
//
// Fields take a regular expression or an inline `automaton { ... }` block.
// v1, v2, init and final are languages over the declared alphabet; p1 and p2
// are over pair letters "x/y" (configuration track / successor track); fair
// is over "x/bbb" letters pairing the configuration track with three-bit
// requirement annotations (see annotation.hpp). `let` introduces a textual
// macro usable in later fields.

#pragma once

#include "rmcfair/annotation.hpp"
#include "rmcfair/regex.hpp"
#include "rmcfair/relation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rmcfair {

struct system_spec {
    std::string name;
    alphabet sigma;
    nfa v1, v2;
    nfa init, final_cfg;
    relation p1, p2;
    std::optional<relation> fair;
};

// Throws parse_error on malformed input. Alphabet names may not start with
// '#' except the two counter symbols #1 and #0, which re-parsed encoder
// output declares.
system_spec parse_system(const std::string& text);

// Renders a specification as a system block whose fields are automaton
// blocks; parse_system(print_system(s)) describes the same system.
std::string print_system(const system_spec& s);

struct validation_issue {
    std::string rule;    // stable id, e.g. "players-disjoint"
    std::string detail;  // one-sentence explanation
    std::string witness; // offending configuration or pair, "" if none
};

// Structural checks; empty result means the specification is well-formed.
std::vector<validation_issue> validate(const system_spec& s);

} // namespace rmcfair
