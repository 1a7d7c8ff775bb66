#include "rmcfair/benchmarks.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace rmcfair {

namespace {

const std::string token_death = R"(system token-death {
  // One live cell dies per round: the scheduler marks a live cell (a), the
  // probabilistic step deterministically kills it (b). Termination needs no
  // fairness; the justice requirement is declared so that the counter
  // encoding exercises every justice annotation row. Premise reads "this
  // position holds a live cell and the round is under way"; dead cells are
  // permanently serviced (consequence without premise).
  alphabet a, b, am;
  let I = (a/a | b/b);
  v1    = (a | b)+;
  v2    = (a | b)* am (a | b)*;
  init  = (a | b)+;
  final = b+;
  p1    = I* (a/am) I*;
  p2    = I* (am/b) I*;
  fair  = (a/000 | b/010)+
        | (a/100 | b/010)* am/110 (a/100 | b/010)*;
}
)";

const std::string herman_ring_merge = R"(system herman-ring-merge {
  // Token ring, merging collisions. The scheduler marks any position; a
  // marked token keeps its place or passes right (support only), and a pass
  // onto an occupied cell merges the two tokens; a marked token-less cell
  // idles. The goal set is the single-token configurations. Process
  // fairness is compassion: "every position is marked over and over";
  // premise reads "the position awaits service in a round under way", so it
  // is 0 on scheduler-owned words and on the marked cell itself when the
  // cell is token-less.
  alphabet T, B, Tm, Bm;
  let I    = (T/T | B/B);
  let RECV = (B/T | T/T);
  v1    = (T | B)+;
  v2    = (T | B)* (Tm | Bm) (T | B)*;
  init  = (T | B)* T (T | B)*;
  final = B* T B*;
  p1    = I* (T/Tm | B/Bm) I*;
  p2    = I* (Tm/T | Bm/B) I*
        | I* Tm/B RECV I*
        | RECV I* Tm/B;
  fair  = (T/001 | B/001)+
        | (T/101 | B/101)* (Tm/111 | Bm/011) (T/101 | B/101)*;
}
)";

const std::string herman_ring_annih = R"(system herman-ring-annih {
  // Token ring, annihilating collisions: a pass onto an occupied cell
  // removes both tokens, so the token count keeps its parity and the
  // initial configurations carry an odd number of tokens. Scheduling,
  // keep branch and fairness are as in herman-ring-merge.
  alphabet T, B, Tm, Bm;
  let I    = (T/T | B/B);
  let RECV = (B/T | T/B);
  v1    = (T | B)+;
  v2    = (T | B)* (Tm | Bm) (T | B)*;
  init  = B* T (B* T B* T)* B*;
  final = B* T B*;
  p1    = I* (T/Tm | B/Bm) I*;
  p2    = I* (Tm/T | Bm/B) I*
        | I* Tm/B RECV I*
        | RECV I* Tm/B;
  fair  = (T/001 | B/001)+
        | (T/101 | B/101)* (Tm/111 | Bm/111) (T/101 | B/101)*;
}
)";

const std::string herman_line_merge = R"(system herman-line-merge {
  // Token line, merging collisions: as herman-ring-merge without the
  // wrap-around pass, so a marked token at the right end can only keep.
  alphabet T, B, Tm, Bm;
  let I    = (T/T | B/B);
  let RECV = (B/T | T/T);
  v1    = (T | B)+;
  v2    = (T | B)* (Tm | Bm) (T | B)*;
  init  = (T | B)* T (T | B)*;
  final = B* T B*;
  p1    = I* (T/Tm | B/Bm) I*;
  p2    = I* (Tm/T | Bm/B) I*
        | I* Tm/B RECV I*;
  fair  = (T/001 | B/001)+
        | (T/101 | B/101)* (Tm/111 | Bm/111) (T/101 | B/101)*;
}
)";

const std::string herman_line_annih = R"(system herman-line-annih {
  // Token line, annihilating collisions, odd token count; no wrap-around.
  alphabet T, B, Tm, Bm;
  let I    = (T/T | B/B);
  let RECV = (B/T | T/B);
  v1    = (T | B)+;
  v2    = (T | B)* (Tm | Bm) (T | B)*;
  init  = B* T (B* T B* T)* B*;
  final = B* T B*;
  p1    = I* (T/Tm | B/Bm) I*;
  p2    = I* (Tm/T | Bm/B) I*
        | I* Tm/B RECV I*;
  fair  = (T/001 | B/001)+
        | (T/101 | B/101)* (Tm/111 | Bm/111) (T/101 | B/101)*;
}
)";

const std::string moran_line_2 = R"(system moran-line-2 {
  // Two-allele drift on a line, regularized from the prose model as: the
  // scheduler marks a position, whose allele then keeps to itself or is
  // copied over one adjacent neighbour (support only). Absorbing states are
  // the two uniform populations.
  alphabet A, B, Am, Bm;
  let I = (A/A | B/B);
  v1    = (A | B)+;
  v2    = (A | B)* (Am | Bm) (A | B)*;
  init  = (A | B)+;
  final = A+ | B+;
  p1    = I* (A/Am | B/Bm) I*;
  p2    = I* (Am/A | Bm/B) I*
        | I* Am/A (A/A | B/A) I*
        | I* (A/A | B/A) Am/A I*
        | I* Bm/B (A/B | B/B) I*
        | I* (A/B | B/B) Bm/B I*;
  fair  = (A/001 | B/001)+
        | (A/101 | B/101)* (Am/111 | Bm/111) (A/101 | B/101)*;
}
)";

const std::string cell_cycle_line_1 = R"(system cell-cycle-line-1 {
  // Cell-fate commitment on a line, regularized from the prose model as:
  // committed cells (X) convert undecided neighbours (U); a marked
  // committed cell keeps or converts one adjacent undecided cell; a marked
  // undecided cell idles. Conversion is monotone, so any configuration with
  // a committed cell ends fully committed.
  alphabet X, U, Xm, Um;
  let I = (X/X | U/U);
  v1    = (X | U)+;
  v2    = (X | U)* (Xm | Um) (X | U)*;
  init  = (X | U)* X (X | U)*;
  final = X+;
  p1    = I* (X/Xm | U/Um) I*;
  p2    = I* (Xm/X | Um/U) I*
        | I* Xm/X U/X I*
        | I* U/X Xm/X I*;
  fair  = (X/001 | U/001)+
        | (X/101 | U/101)* (Xm/111 | Um/111) (X/101 | U/101)*;
}
)";

const std::string clustering_line_2 = R"(system clustering-line-2 {
  // Cluster formation on a line, regularized from the prose model as
  // directed swapping: a marked A trades places with a B immediately to its
  // right, or keeps; every other mark idles. Each swap removes one
  // inversion, and the stable (goal) configurations are fully clustered:
  // all B's precede all A's. Undirected swapping never stabilizes, hence
  // the direction.
  alphabet A, B, Am, Bm;
  let I = (A/A | B/B);
  v1    = (A | B)+;
  v2    = (A | B)* (Am | Bm) (A | B)*;
  init  = (A | B)+;
  final = B+ A* | A+;
  p1    = I* (A/Am | B/Bm) I*;
  p2    = I* (Am/A | Bm/B) I*
        | I* Am/B B/A I*;
  fair  = (A/001 | B/001)+
        | (A/101 | B/101)* (Am/111 | Bm/111) (A/101 | B/101)*;
}
)";

const std::string coin_game_clique_3 = R"(system coin-game-clique-3 {
  // Currency consensus on a clique: the scheduler marks an agent, which
  // redraws its currency as the majority of three uniform samples over all
  // agents, with replacement and itself included. Support abstraction:
  // keeping is always possible (a majority of self-samples), and the agent
  // may switch to any currency some other agent holds (sample that agent
  // at least twice). Sampling three DISTINCT other agents would deadlock
  // the N <= 3 instances, hence with-replacement.
  alphabet G, S, Gm, Sm;
  let I = (G/G | S/S);
  v1    = (G | S)+;
  v2    = (G | S)* (Gm | Sm) (G | S)*;
  init  = (G | S)+;
  final = G+ | S+;
  p1    = I* (G/Gm | S/Sm) I*;
  p2    = I* (Gm/G | Sm/S) I*
        | I* S/S I* Gm/S I*
        | I* Gm/S I* S/S I*
        | I* G/G I* Sm/G I*
        | I* Sm/G I* G/G I*;
  fair  = (G/001 | S/001)+
        | (G/101 | S/101)* (Gm/111 | Sm/111) (G/101 | S/101)*;
}
)";

// The hand-made counter encoding of herman-ring-merge, following the worked
// construction that attaches RESET to the chosen position and DEC to every
// other position on the scheduler half-move, and leaves counters unchanged
// (ID) on the protocol half-move. It differs from encode(herman-ring-merge)
// as a language - the generic pipeline reads annotations off the source
// configuration, so its counters tick one half-step later - but the two must
// agree on every almost-sure termination verdict. Zero blocks appear here on
// marked words, so marked words with a zero block stay probabilistic-owned
// (v2 allows any shaped block) and the protocol half-move carries them to
// scheduler-owned alarm configurations, which are goal states.
const std::string herman_ring_merge_hand = R"(system herman-ring-merge-hand {
  // Counter blocks are unary: #1 = pebble, #0 = gap; a block's value is its
  // pebble count, and every block keeps pebbles before gaps.
  alphabet T, B, Tm, Bm, #1, #0;
  let I     = (T/T | B/B);
  let RECV  = (B/T | T/T);
  let CFG   = (T | B);
  let MCFG  = (Tm | Bm);
  let BLK   = (#1+ #0* | #0+);
  let POS   = #1+ #0*;
  let ID0   = (#1/#1)+ (#0/#0)* | (#0/#0)+;
  let DEC   = (#1/#1)* #1/#0 (#0/#0)*;
  let RESET = (#1/#1)+ (#0/#1)*;
  v1    = (CFG POS)+
        | (CFG BLK)* CFG #0+ (CFG BLK)*;
  v2    = (CFG BLK)* MCFG BLK (CFG BLK)*;
  init  = (CFG #1+)* T #1+ (CFG #1+)*;
  final = (B BLK)* T BLK (B BLK)*
        | (CFG BLK)* CFG #0+ (CFG BLK)*;
  p1    = (I DEC)* (T/Tm | B/Bm) RESET (I DEC)*;
  p2    = (I ID0)* (Tm/T | Bm/B) ID0 (I ID0)*
        | (I ID0)* Tm/B ID0 RECV ID0 (I ID0)*
        | RECV ID0 (I ID0)* Tm/B ID0;
}
)";

struct entry {
    const char* name;
    const std::string* text;
};

constexpr std::size_t registry_size = 10;

const std::array<entry, registry_size>& registry() {
    static const std::array<entry, registry_size> entries{{
        {"token-death", &token_death},
        {"herman-ring-merge", &herman_ring_merge},
        {"herman-ring-annih", &herman_ring_annih},
        {"herman-line-merge", &herman_line_merge},
        {"herman-line-annih", &herman_line_annih},
        {"moran-line-2", &moran_line_2},
        {"cell-cycle-line-1", &cell_cycle_line_1},
        {"clustering-line-2", &clustering_line_2},
        {"coin-game-clique-3", &coin_game_clique_3},
        {"herman-ring-merge-hand", &herman_ring_merge_hand},
    }};
    return entries;
}

} // namespace

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

const std::string& benchmark_text(const std::string& name) {
    for (const auto& e : registry())
        if (name == e.name) return *e.text;
    std::string msg = "unknown benchmark '" + name + "'; shipped:";
    for (const auto& e : registry()) msg += std::string(" ") + e.name;
    throw std::invalid_argument(msg);
}

system_spec benchmark(const std::string& name) { return parse_system(benchmark_text(name)); }

} // namespace rmcfair
