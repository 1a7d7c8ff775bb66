// The three-bit annotation alphabet shared by fairness declarations and the
// encoder. Each configuration of length n is annotated by a word of the same
// length; position i carries the bits of requirement i at that configuration:
//
//   bit 0 (most significant in the name): premise holds here
//   bit 1: consequence holds here
//   bit 2: requirement kind, 0 = justice, 1 = compassion
//
// Names are the bit strings "000" .. "111", and the symbol id equals the
// numeric value of the bit string, so id 5 = "101" = premise, no consequence,
// compassion.

#pragma once

#include "rmcfair/alphabet.hpp"

namespace rmcfair {

alphabet gamma_alphabet();

inline bool premise_bit(symbol_id g) { return (g & 4u) != 0; }
inline bool consequence_bit(symbol_id g) { return (g & 2u) != 0; }
inline bool compassion_bit(symbol_id g) { return (g & 1u) != 0; }

} // namespace rmcfair
