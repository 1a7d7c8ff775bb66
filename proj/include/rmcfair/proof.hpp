// Termination proofs for regular specifications: a regular inductive
// invariant plus a regular ranking order, checked against a system by three
// language-inclusion conditions. A proof that passes certifies that from
// every initial configuration the goal set is reached almost surely, no
// matter how the scheduler plays.
#pragma once

#include "rmcfair/system.hpp"

#include <string>
#include <vector>

namespace rmcfair {

// A candidate proof. `inv` is a language over the system alphabet; `ord` is
// a binary relation over it written big-first: (x, z) in ord asserts that z
// is strictly below x in the ranking.
struct regular_proof {
    std::string system; // name of the system the proof targets
    nfa inv;
    relation ord;
};

// One failed sub-condition. `condition` names it; `words` holds the
// offending configurations:
//   vc1-init        {x}     initial configuration outside inv
//   vc1-post        {y}     move target outside inv whose source is in inv
//   vc2-irreflexive {w}     (w, w) is in ord
//   vc2-transitive  {x, z}  related through a midpoint but not directly
//   vc3             {x, y}  scheduler move with no decreasing answer
struct vc_failure {
    std::string condition;
    std::vector<word> words;
};

// Aggregated verdicts. `failures` lists every failed sub-condition in the
// order vc1, vc2, vc3; a failing condition always contributes a witness.
struct vc_report {
    bool vc1 = false, vc2 = false, vc3 = false;
    std::vector<vc_failure> failures;
    bool ok() const { return vc1 && vc2 && vc3; }
};

// vc1: the invariant is inductive. Every initial configuration lies in inv,
// and inv is closed under both players' moves. Witnesses are shortest
// escaping words. Throws std::invalid_argument on alphabet mismatch.
std::vector<vc_failure> check_vc1(const system_spec& spec, const regular_proof& proof);

// vc2: the ranking is a strict preorder. Irreflexive (no (w, w) in ord) and
// transitive (ord composed with ord stays inside ord). Needs no system.
std::vector<vc_failure> check_vc2(const regular_proof& proof);

// vc3: ranked progress. For every x in inv outside the goal and every
// scheduler move x -> y with y outside the goal, some probabilistic answer
// y -> z stays in inv with (x, z) in ord. Goal targets are exempt: once the
// goal is hit no further decrease is owed. Witness is the shortest (x, y)
// pair with no decreasing answer.
std::vector<vc_failure> check_vc3(const system_spec& spec, const regular_proof& proof);

// All three conditions; none short-circuits, so the report carries every
// failure at once.
vc_report check_proof(const system_spec& spec, const regular_proof& proof);

// Text form, sharing the system file's lexical conventions:
//   proof for <system> {
//     let NAME = <regex>;                      // optional macros
//     inv = <regex | automaton block>;
//     ord = <pair regex | automaton block>;    // pair letters x/z, big first
//   }
// The alphabet is the target system's and is supplied by the caller.
regular_proof parse_proof(const std::string& text, const alphabet& sigma);

// Renders a proof with automaton-block fields; parse_proof round-trips it.
std::string print_proof(const regular_proof& proof);

} // namespace rmcfair
