// Explicit-state ground truth at fixed instance size. A parameterized system
// is expanded into a finite alternating MDP whose states are the length-N
// configurations — optionally paired with bounded fairness counters — and
// almost-sure reachability of the goal set is decided by end-component
// analysis. compare_encodings pits the symbolic counter encoding against the
// counter expansion computed here arithmetically, state by state and edge by
// edge, so a defect in either construction shows up as a concrete mismatch.
#pragma once

#include "rmcfair/encoder.hpp"
#include "rmcfair/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rmcfair {

// Per-position counter values, each in [0, k].
using counter_valuation = std::vector<std::uint32_t>;

struct mdp_state {
    word config;              // configuration over the system alphabet
    counter_valuation value;  // empty when counters are not tracked
    friend bool operator==(const mdp_state&, const mdp_state&) = default;
    friend auto operator<=>(const mdp_state&, const mdp_state&) = default;
};

// Strictly alternating arena: scheduler-owned states (owner 1) move along
// edges1 into process-owned states (owner 2), which move back along edges2.
// Process moves are probabilistic in the source system, but only their
// support matters for almost-sure reachability, so no probabilities are
// stored.
struct explicit_mdp {
    alphabet sigma;
    std::vector<mdp_state> states;
    std::vector<std::uint8_t> owner;                 // per state: 1 or 2
    std::vector<std::vector<std::uint32_t>> edges1;  // scheduler moves
    std::vector<std::vector<std::uint32_t>> edges2;  // process moves
    std::vector<std::uint32_t> init;                 // sorted state indices
    std::vector<std::uint32_t> finals;               // sorted state indices
};

// 2'000'000 unless the RMCFAIR_STATE_BOUND environment variable overrides it.
std::size_t default_state_bound();

// All length-n configurations in v1 or v2, with edges given by relation
// membership. Successor words outside v1 and v2 are not states and the edges
// into them are dropped. Throws std::invalid_argument on n = 0 or a v1/v2
// overlap, std::length_error when the instance exceeds the bound.
explicit_mdp expand(const system_spec& spec, std::size_t n,
                    std::size_t bound = default_state_bound());

// States are (configuration, valuation) pairs with every valuation in
// [0..k]^n. A state with a drained counter has no moves; otherwise each move
// of the base instance runs once per annotation of its source configuration,
// updating position i by the annotation letter g:
//
//   consequence(g)           -> k              (request served)
//   premise(g), no consequence -> value - 1    (still waiting)
//   neither, compassion      -> value          (idle, nothing owed)
//   neither, justice         -> k              (disabled, debt forgiven)
//
// Goal states are goal configurations with all counters positive, plus every
// state with a drained counter. Requires the spec to carry an annotator.
explicit_mdp kfair_expand(const system_spec& spec, std::size_t n, std::uint32_t k,
                          std::size_t bound = default_state_bound());

struct scheduler_choice {
    std::uint32_t state;      // scheduler-owned state index
    std::uint32_t successor;  // chosen target state index
};

struct verdict {
    bool holds;
    // Total memoryless refutation: one choice for every non-goal scheduler
    // state that has a move. Present exactly when holds is false.
    std::optional<std::vector<scheduler_choice>> witness;
};

// Does every scheduler reach the goal set with probability 1? Fails exactly
// when some non-goal end component or non-goal dead end is reachable from an
// initial state through non-goal states; the witness steers there.
verdict as_reach(const explicit_mdp& mdp);

// Replays a refutation: true iff under the witness scheduler some initial
// state keeps the goal set unreached with positive probability.
bool verify_refutation(const explicit_mdp& mdp, const verdict& v);

verdict kfair_verdict(const system_spec& spec, std::size_t n, std::uint32_t k,
                      std::size_t bound = default_state_bound());

// Expands the counter encoding of spec over words whose blocks all have
// length k, decodes every state back to a (configuration, valuation) pair,
// and checks the result is exactly kfair_expand(spec, n, k): same states,
// same scheduler and process edges, same initial and goal sets, and the same
// as_reach verdict. Returns nullopt on success, else the first mismatch.
// The update table is a parameter so tests can confirm a wrong table is
// caught.
std::optional<std::string> compare_encodings(const system_spec& spec, std::size_t n,
                                             std::uint32_t k,
                                             const sigma_table& table = default_sigma_table(),
                                             std::size_t bound = default_state_bound());

// "T B" for plain states, "T B | 2 1" for counter states.
std::string format_state(const explicit_mdp& mdp, std::uint32_t s);

} // namespace rmcfair
