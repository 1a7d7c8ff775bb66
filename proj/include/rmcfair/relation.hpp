// Length-preserving word relations as automata over tuple alphabets.
//
// A k-track relation stores the per-track alphabets and a carrier automaton
// over their tuple alphabet; a tuple word encodes k same-length words read in
// lockstep. All algebra (composition, images, cylindrification, projection)
// is by automaton constructions on the carrier, so every operation is exact.

#pragma once

#include "rmcfair/nfa.hpp"

#include <vector>

namespace rmcfair {

class relation {
  public:
    relation(std::vector<alphabet> tracks, nfa carrier);

    std::size_t tracks() const { return track_alphabets_.size(); }
    const alphabet& track_alphabet(std::size_t i) const { return track_alphabets_[i]; }
    const std::vector<alphabet>& track_alphabets() const { return track_alphabets_; }
    const nfa& carrier() const { return carrier_; }

    // Membership of a tuple of same-length words.
    bool contains(const std::vector<word>& tuple) const;

  private:
    std::vector<alphabet> track_alphabets_;
    nfa carrier_;
};

// {(u,u) : u over alpha}.
relation identity_relation(const alphabet& alpha);

// {(u,v) : |u| = |v|, u in L(a), v in L(b)} as a 2-track relation.
relation convolve(const nfa& a, const nfa& b);

// A language viewed as a 1-track relation.
relation as_relation(const nfa& a);

// Embed r into a wider tuple: where[i] gives the target track carrying r's
// track i (injective); the remaining target tracks are unconstrained.
relation cylindrify(const relation& r, const std::vector<alphabet>& target,
                    const std::vector<std::size_t>& where);

// Keep exactly the listed tracks, in the listed order.
relation project(const relation& r, const std::vector<std::size_t>& keep);

// Reorder tracks: track i of the result is track perm[i] of r.
relation permute(const relation& r, const std::vector<std::size_t>& perm);

// Swap the two tracks of a binary relation.
relation inverse(const relation& r);

// Boolean algebra on same-signature relations.
relation intersect(const relation& r, const relation& s);
relation unite(const relation& r, const relation& s);

// Relational composition of binary relations: {(x,z) : exists y, (x,y) in r,
// (y,z) in s}. r's second track and s's first must share an alphabet.
relation compose(const relation& r, const relation& s);

// Images of a language under a binary relation.
nfa post_image(const relation& r, const nfa& x);
nfa pre_image(const relation& r, const nfa& x);

// Trim the carrier (language unchanged).
relation trim(const relation& r);

// Pack same-length words into a tuple word / unpack a tuple word.
word zip_tuple(const alphabet& tuple_alpha, const std::vector<alphabet>& tracks,
               const std::vector<word>& parts);
std::vector<word> unzip_tuple(const alphabet& tuple_alpha, const std::vector<alphabet>& tracks,
                              const word& w);

} // namespace rmcfair
