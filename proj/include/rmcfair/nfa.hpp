// Value-semantic finite automata over interned alphabets.
//
// Automata are immutable after construction; every operation returns a fresh
// value. Witness-producing operations (is_empty, includes) always return the
// canonical counterexample: shortest accepted word, ties broken by smallest
// symbol id at the earliest differing position. Language inclusion is
// implemented twice on purpose — a classical complement/product route and an
// antichain route — so each can serve as the other's cross-check.
#pragma once

#include "rmcfair/alphabet.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rmcfair {

using state_id = std::uint32_t;

struct transition {
    state_id from;
    symbol_id sym;
    state_id to;
    friend bool operator==(const transition&, const transition&) = default;
    friend auto operator<=>(const transition&, const transition&) = default;
};

namespace detail {

// Fixed-width dynamic bitset for NFA state sets.
class state_set {
public:
    state_set() = default;
    explicit state_set(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    bool any() const;
    bool none() const { return !any(); }
    bool intersects(const state_set& o) const;
    bool is_subset_of(const state_set& o) const;
    state_set& operator|=(const state_set& o);
    state_set& operator&=(const state_set& o);
    std::size_t size_bits() const { return nbits_; }
    friend bool operator==(const state_set&, const state_set&) = default;
    friend auto operator<=>(const state_set& a, const state_set& b) {
        return a.words_ <=> b.words_;
    }
    template <typename Fn> void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                fn(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace detail

class nfa {
public:
    nfa() = default;
    nfa(alphabet alpha, state_id num_states, std::vector<transition> transitions,
        std::vector<state_id> initial, std::vector<state_id> finals);

    const alphabet& alpha() const { return alpha_; }
    state_id num_states() const { return num_states_; }
    const std::vector<transition>& transitions() const { return transitions_; }
    const std::vector<state_id>& initial() const { return initial_; }
    const std::vector<state_id>& finals() const { return finals_; }
    bool is_final(state_id q) const;

    // Transitions leaving q, sorted by (symbol, target).
    std::pair<const transition*, const transition*> from(state_id q) const;

    // State set with exactly the initial states.
    detail::state_set initial_set() const;
    detail::state_set final_set() const;
    // One synchronous step of the subset simulation.
    detail::state_set step(const detail::state_set& s, symbol_id a) const;

private:
    alphabet alpha_;
    state_id num_states_ = 1;
    std::vector<transition> transitions_; // sorted, deduplicated
    std::vector<state_id> initial_;       // sorted, unique
    std::vector<state_id> finals_;        // sorted, unique
    std::vector<std::uint32_t> row_;      // CSR offsets into transitions_, size num_states_+1
};

// --- construction helpers ---

// Accepts nothing.
nfa empty_nfa(const alphabet& alpha);
// Accepts every word over the alphabet (including the empty word).
nfa universal_nfa(const alphabet& alpha);
// Accepts exactly the given word.
nfa word_nfa(const alphabet& alpha, const word& w);

// --- core operations ---

bool membership(const nfa& a, const word& w);

// Complete DFA with exactly one initial state; subset construction. Throws if
// the result would exceed `max_states`.
nfa determinize(const nfa& a, std::size_t max_states = 1u << 22);

nfa complement(const nfa& a, std::size_t max_states = 1u << 22);

enum class product_kind { intersection, union_ };
nfa product(const nfa& a, const nfa& b, product_kind kind);
inline nfa product_and(const nfa& a, const nfa& b) { return product(a, b, product_kind::intersection); }
inline nfa product_or(const nfa& a, const nfa& b) { return product(a, b, product_kind::union_); }

// Restriction to states both reachable and co-reachable; language-preserving.
nfa trim(const nfa& a);

// nullopt if the language is empty, otherwise the canonical witness word.
std::optional<word> is_empty_witness(const nfa& a);
inline bool is_empty(const nfa& a) { return !is_empty_witness(a).has_value(); }

// nullopt if L(a) ⊆ L(b), otherwise the canonical word in L(a) \ L(b).
std::optional<word> includes_classical(const nfa& a, const nfa& b);
std::optional<word> includes_antichain(const nfa& a, const nfa& b);
// Production route (antichain).
inline std::optional<word> includes(const nfa& a, const nfa& b) { return includes_antichain(a, b); }

// Enumerates L(a) ∩ Σ^len in lexicographic symbol-id order. The callback
// returns false to stop early; enumerate_language returns false iff stopped.
bool enumerate_language(const nfa& a, std::size_t len,
                        const std::function<bool(const word&)>& fn);

// Same language over `target`, which must contain every symbol name of a's
// alphabet (ids may differ). Lets machines written over a sub-alphabet embed
// into the full one.
nfa remap_alphabet(const nfa& a, const alphabet& target);

// --- textual external interface ---

struct automaton_text {
    std::string name;
    nfa machine;
};

// Parses the block format:
//   automaton m { alphabet a, b; states 3; initial 0; final 2; 0 -a-> 1; }
// The name is optional ("automaton { ... }" parses with an empty name).
// Reports parse errors with 1-based line:column positions.
automaton_text parse_automaton_block(const std::string& text);
std::string print_automaton_block(const nfa& a, const std::string& name);
std::string to_dot(const nfa& a, const std::string& name);

struct parse_error : std::runtime_error {
    parse_error(std::string msg, std::size_t line, std::size_t column);
    std::size_t line;
    std::size_t column;
};

} // namespace rmcfair
