// Regular expressions over named alphabets, compiled to position automata.
//
// Syntax: alternation `|`, concatenation by juxtaposition, postfix `*` `+`
// `?`, grouping parentheses, and `()` for the empty word. Atoms are symbol
// names ([A-Za-z0-9_#] plus '/' inside tuple names) and must be separated by
// whitespace or structure: `B* T B*`, not `B*TB*`. Every atom must name a
// symbol of the supplied alphabet; the compiled automaton shares it.
//
// The construction is Glushkov's: one state per letter occurrence plus a
// start state, so the result has no epsilon transitions and its size is
// linear in the expression.

#pragma once

#include "rmcfair/nfa.hpp"

#include <string>

namespace rmcfair {

// Throws parse_error (with position) on syntax errors or unknown symbols.
nfa compile_regex(const std::string& text, const alphabet& alpha);

} // namespace rmcfair
