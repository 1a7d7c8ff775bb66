// Bounded synthesis of termination proofs. Candidate invariants and rankings
// are enumerated as complete DFAs in a fixed canonical order (state count
// ascending, then transition table lexicographic, one representative per
// isomorphism class), screened against a cache of counterexamples harvested
// from earlier failed checks, and the survivors handed to the full proof
// checker. The first pair that passes is returned, re-verified; exhausting
// the budget means "unknown", never "refuted".
#pragma once

#include "rmcfair/proof.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace rmcfair {

// All bounds must be positive, and the state bounds at most 12 (that table
// space already dwarfs any feasible deadline); search throws
// std::invalid_argument otherwise.
struct search_budget {
    std::size_t max_inv_states = 2;
    std::size_t max_ord_states = 2;
    std::chrono::milliseconds deadline{60000}; // wall clock
    std::size_t cache_capacity = 256;          // counterexamples retained
};

enum class search_status { proved, unknown };

struct search_stats {
    std::uint64_t inv_candidates = 0;   // invariant tables visited
    std::uint64_t ord_candidates = 0;   // (invariant, ranking) pairs visited
    std::uint64_t invariant_checks = 0; // invariant-only condition checks
    std::uint64_t full_checks = 0;      // candidate pairs sent to check_proof
    std::uint64_t cache_rejections = 0; // candidates killed by replay alone
    bool deadline_hit = false;
    bool operator==(const search_stats&) const = default;
};

struct search_outcome {
    search_status status = search_status::unknown;
    std::optional<regular_proof> proof; // present iff proved; passes check_proof
    search_stats stats;
};

// A fact extracted from one verification-condition failure, phrased so that
// deciding it against a *different* candidate needs only membership tests.
// Shapes, by condition:
//   "vc1-init"        words = {w}        w is an initial configuration
//   "vc1-post"        words = {x, y}     (x, y) is a system step
//   "vc2-irreflexive" words = {w}
//   "vc2-transitive"  words = {x, y, z}  y is the midpoint of the broken hop
//   "vc3"             words = {x, y}     x -> y a non-goal scheduler move;
//                     answers = every probabilistic reply to y
struct counterexample {
    std::string condition;
    std::vector<word> words;
    std::vector<word> answers;
    bool operator==(const counterexample&) const = default;
};

// True when the candidate survives the counterexample. False is a guarantee:
// the full checker fails the same condition on this candidate.
bool replay_counterexample(const counterexample& cex, const regular_proof& candidate);

// Turns a failed report on `candidate` into replayable counterexamples, one
// per failure. Midpoints and reply sets are reconstructed here, against the
// candidate that produced the report.
std::vector<counterexample> harvest_counterexamples(const system_spec& spec,
                                                    const regular_proof& candidate,
                                                    const vc_report& report);

// Deterministic for a fixed spec and budget: same status, same proof, same
// counters. Rankings are enumerated over only those pair letters that can
// occur in a scheduler-move-then-reply round, which keeps the table space
// small without affecting which progress obligations can be discharged.
search_outcome search(const system_spec& spec, const search_budget& budget);

} // namespace rmcfair
