// Counter-machine encoding of fairness. Every position of a configuration
// gets a unary counter block spliced in behind its letter (#1 = pebble,
// #0 = gap; the value is the pebble count). A fairness annotation of the
// source configuration drives, per position, one of three counter gadgets:
// ID keeps the value, DEC ticks it down, RESET refills the block. A block
// that reaches zero is an alarm: the encoded goal set absorbs the word, so
// a run that starves a position terminates by alarm instead of violating
// fairness. The encoded system is a plain two-player system over the
// original letters plus #1/#0, and its almost-sure termination verdict
// matches the fair verdict of the source system.
#pragma once

#include "rmcfair/annotation.hpp"
#include "rmcfair/relation.hpp"
#include "rmcfair/system.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rmcfair {

// The two counter symbols, in the fixed order {#1, #0}.
const alphabet& counter_alphabet();

// Two annotator outputs disagree on their kind bit at `position`: the words
// are annotated configurations of equal length and the clash makes the
// counter at that position switch discipline between runs.
struct annotator_issue {
    word config1, config2;
    std::size_t position;
    word annot1, annot2; // the clashing outputs, for reporting
};

// Scans the annotator of `spec` for a kind-bit clash over any two annotated
// configurations (a 4-track self-product search). Empty result means every
// position is consistently justice or consistently compassion. Requires a
// fair field.
std::optional<annotator_issue> check_annotator(const system_spec& spec);

// The three counter gadgets as binary relations over the counter alphabet:
//   ID    = (#1/#1)+ (#0/#0)*        value v >= 1 stays v
//   DEC   = (#1/#1)* (#1/#0) (#0/#0)*  value v >= 1 becomes v - 1
//   RESET = (#1/#1)+ (#0/#1)*        value v >= 1 becomes the block length
// All three demand at least one pebble on the input side.
struct counter_gadget_set {
    relation id, dec, reset;
};
const counter_gadget_set& counter_gadgets();

enum class gadget_kind : std::uint8_t { id, dec, reset };

// Which gadget runs for each annotation letter, indexed by the letter id
// (premise<<2 | consequence<<1 | kind).
using sigma_table = std::array<gadget_kind, 8>;

// The shipped update discipline: a serviced position resets (consequence 1,
// and likewise an idle justice position, which must not carry debt between
// rounds); a waiting position (premise 1, consequence 0) decrements; an
// idle compassion position (000 + kind 1 = 001) keeps its value.
const sigma_table& default_sigma_table();

// Every single-row variant of the table: each of the 8 rows replaced by
// each of the 2 other gadgets, 16 tables. Used to show the encoding
// cross-check catches any misassigned row.
std::vector<sigma_table> sigma_table_mutants();

// Stage 1 of the transducer lift: weaves annotation guesses between the
// letter pairs of `rel`. The result, over the alphabet (Sigma x Sigma)
// followed by the 8 annotation letters, accepts exactly the alternating
// words (a1,b1) c1 (a2,b2) c2 ... (am,bm) cm where (a1..am, b1..bm) is in
// rel and c1..cm is an annotator output for the SOURCE word a1..am.
// Alphabet layout of the result: pair letters first (in tuple order), then
// the annotation letters. States are the product of rel's and ann's states
// with a remembered-or-pending annotation slot. Throws std::invalid_argument
// if rel is not binary over one alphabet shared with ann's first track or
// ann's second track is not the annotation alphabet.
nfa stage1(const relation& rel, const relation& ann);

// Stage 2: replaces each annotation-letter transition of an alternating
// intermediate automaton by a fresh copy of the gadget the table assigns,
// and reads letter pairs as pairs over sigma + {#1,#0}. `sigma` must be the
// configuration alphabet the intermediate was built from. The result
// relates a1 w1 a2 w2 ... to b1 w1' a2 w2' ... where each counter block wi'
// is the gadget image of wi under the annotation of the source word.
relation stage2(const nfa& intermediate, const alphabet& sigma,
                const sigma_table& table = default_sigma_table());

// Words a1 w1 a2 w2 ... am wm where a1..am is accepted by `config` and each
// block wi is accepted by `block`. Both arguments are remapped onto
// sigma_prime, which must contain their letters.
nfa interleave_blocks(const nfa& config, const nfa& block, const alphabet& sigma_prime);

// Initial configurations carry full counters: blocks from #1+.
nfa encode_init(const nfa& init, const alphabet& sigma_prime);

// Encoded goal set: goal configurations with shaped blocks (#1+ #0* or
// #0+), plus every configuration of `v1v2` in which some block is all gaps
// (the alarm clause).
nfa encode_final(const nfa& final_cfg, const nfa& v1v2, const alphabet& sigma_prime);

// A complete encoded system plus the decode metadata.
struct encoded_spec {
    system_spec spec; // over sigma + {#1, #0}
    alphabet sigma;   // the original configuration letters
};

// Pushes both transducers through stage 1 + stage 2, lifts the ownership,
// initial and goal languages, and returns a system named "<name>-encoded"
// that passes validate. Alarms are scheduler-owned and final. Throws
// std::invalid_argument if the spec has no annotator, if the annotator
// fails check_annotator, or if the alphabet already uses #1/#0.
encoded_spec encode_system(const system_spec& spec,
                           const sigma_table& table = default_sigma_table());

// One decoded position: the configuration letter is in `config`, counter
// value and block length are aligned by index.
struct decoded_config {
    word config;
    std::vector<std::uint32_t> value;
    std::vector<std::uint32_t> length;
};

// Splits an encoded word back into configuration letters and counter
// blocks. Returns nothing if the word is not alternating with nonempty
// shaped blocks (#1+ #0* or #0+).
std::optional<decoded_config> decode_word(const encoded_spec& enc, const word& w);

} // namespace rmcfair
