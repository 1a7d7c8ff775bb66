// Explicit-state ground truth: finite instances of a parameterized system are
// expanded into alternating MDPs, optionally with bounded fairness counters,
// and almost-sure reachability is decided by end-component analysis.
// Everything here is enumerative on purpose — this is the oracle the symbolic
// pipeline is judged against, so directness beats cleverness.
#include "rmcfair/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rmcfair {

namespace {

constexpr std::uint32_t no_state = 0xffffffffu;

// base^exp, saturating just past cap so callers can compare against cap.
std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

std::vector<word> words_of(const nfa& lang, std::size_t n, std::size_t cap) {
    std::vector<word> out;
    enumerate_language(lang, n, [&](const word& w) {
        out.push_back(w);
        return out.size() <= cap;
    });
    if (out.size() > cap) throw std::length_error("oracle: state bound exceeded");
    return out;
}

std::vector<word> successors(const relation& rel, const alphabet& sigma, const word& w,
                             std::size_t n, std::size_t cap) {
    return words_of(post_image(rel, word_nfa(sigma, w)), n, cap);
}

// The word layer shared by expand and kfair_expand: configurations, their
// ownership, goal/init flags, and word-level moves. Moves whose target is not
// a state (possible only for ill-formed systems) are dropped, matching what
// pairwise membership over the state set would produce.
struct word_layer {
    std::vector<word> words; // v1 words then v2 words
    std::size_t v1_count = 0;
    std::map<word, std::uint32_t> index;
    std::vector<char> is_init, is_final;
    std::vector<std::vector<std::uint32_t>> moves; // p1 rows for v1, p2 for v2
};

word_layer build_word_layer(const system_spec& spec, std::size_t n, std::size_t bound) {
    if (n == 0) throw std::invalid_argument("oracle: instance size must be at least 1");
    if (checked_pow(spec.sigma.size(), n, bound) > bound)
        throw std::length_error("oracle: state bound exceeded");

    word_layer l;
    l.words = words_of(spec.v1, n, bound);
    l.v1_count = l.words.size();
    for (const auto& w : words_of(spec.v2, n, bound)) {
        if (membership(spec.v1, w))
            throw std::invalid_argument("oracle: v1 and v2 overlap at " +
                                        format_word(w, spec.sigma));
        l.words.push_back(w);
    }
    if (l.words.size() > bound) throw std::length_error("oracle: state bound exceeded");
    for (std::uint32_t i = 0; i < l.words.size(); ++i) l.index.emplace(l.words[i], i);

    l.is_init.resize(l.words.size());
    l.is_final.resize(l.words.size());
    l.moves.resize(l.words.size());
    for (std::uint32_t i = 0; i < l.words.size(); ++i) {
        l.is_init[i] = membership(spec.init, l.words[i]);
        l.is_final[i] = membership(spec.final_cfg, l.words[i]);
        const relation& rel = i < l.v1_count ? spec.p1 : spec.p2;
        for (const auto& t : successors(rel, spec.sigma, l.words[i], n, bound)) {
            auto it = l.index.find(t);
            if (it != l.index.end()) l.moves[i].push_back(it->second);
        }
    }
    return l;
}

// Counter update for one position, driven by the annotation letter.
std::uint32_t update_counter(std::uint32_t v, symbol_id g, std::uint32_t k) {
    if (consequence_bit(g)) return k;               // served
    if (premise_bit(g)) return v - 1;               // still waiting
    return compassion_bit(g) ? v : k;               // idle
}

} // namespace

std::size_t default_state_bound() {
    static const std::size_t bound = [] {
        if (const char* env = std::getenv("RMCFAIR_STATE_BOUND")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return std::size_t{2'000'000};
    }();
    return bound;
}

explicit_mdp expand(const system_spec& spec, std::size_t n, std::size_t bound) {
    word_layer l = build_word_layer(spec, n, bound);
    explicit_mdp m;
    m.sigma = spec.sigma;
    m.states.reserve(l.words.size());
    for (const auto& w : l.words) m.states.push_back({w, {}});
    m.owner.resize(l.words.size());
    m.edges1.resize(l.words.size());
    m.edges2.resize(l.words.size());
    for (std::uint32_t i = 0; i < l.words.size(); ++i) {
        m.owner[i] = i < l.v1_count ? 1 : 2;
        (m.owner[i] == 1 ? m.edges1 : m.edges2)[i] = l.moves[i];
        if (l.is_init[i]) m.init.push_back(i);
        if (l.is_final[i]) m.finals.push_back(i);
    }
    return m;
}

explicit_mdp kfair_expand(const system_spec& spec, std::size_t n, std::uint32_t k,
                          std::size_t bound) {
    if (!spec.fair)
        throw std::invalid_argument("oracle: '" + spec.name + "' declares no annotator");
    if (k == 0) throw std::invalid_argument("oracle: the fairness bound must be at least 1");
    word_layer l = build_word_layer(spec, n, bound);

    const std::size_t vals = checked_pow(k + 1, n, bound);
    if (vals > bound || l.words.size() > bound / vals)
        throw std::length_error("oracle: state bound exceeded");

    // annotations of each configuration, used to drive the counter updates
    std::vector<std::vector<word>> anns(l.words.size());
    for (std::uint32_t i = 0; i < l.words.size(); ++i)
        anns[i] = words_of(post_image(*spec.fair, word_nfa(spec.sigma, l.words[i])), n, bound);

    // valuation <-> index, position 0 most significant
    auto unpack = [&](std::size_t id) {
        counter_valuation v(n);
        for (std::size_t i = n; i-- > 0;) {
            v[i] = static_cast<std::uint32_t>(id % (k + 1));
            id /= k + 1;
        }
        return v;
    };
    auto pack = [&](const counter_valuation& v) {
        std::size_t id = 0;
        for (std::size_t i = 0; i < n; ++i) id = id * (k + 1) + v[i];
        return id;
    };

    explicit_mdp m;
    m.sigma = spec.sigma;
    const std::size_t total = l.words.size() * vals;
    m.states.reserve(total);
    m.owner.resize(total);
    m.edges1.resize(total);
    m.edges2.resize(total);
    for (std::uint32_t wi = 0; wi < l.words.size(); ++wi)
        for (std::size_t vi = 0; vi < vals; ++vi) {
            counter_valuation v = unpack(vi);
            bool zero = std::find(v.begin(), v.end(), 0u) != v.end();
            bool full = std::all_of(v.begin(), v.end(), [&](std::uint32_t x) { return x == k; });
            const std::uint32_t s = static_cast<std::uint32_t>(wi * vals + vi);
            m.states.push_back({l.words[wi], std::move(v)});
            m.owner[s] = wi < l.v1_count ? 1 : 2;
            if (l.is_init[wi] && full) m.init.push_back(s);
            if ((l.is_final[wi] && !zero) || zero) m.finals.push_back(s);
            if (zero) continue; // the guard: drained states are frozen
            auto& out = m.owner[s] == 1 ? m.edges1[s] : m.edges2[s];
            for (std::uint32_t tw : l.moves[wi])
                for (const word& a : anns[wi]) {
                    counter_valuation nv(n);
                    for (std::size_t i = 0; i < n; ++i)
                        nv[i] = update_counter(m.states[s].value[i], a[i], k);
                    out.push_back(static_cast<std::uint32_t>(tw * vals + pack(nv)));
                }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    return m;
}

verdict as_reach(const explicit_mdp& m) {
    const std::size_t n = m.states.size();
    std::vector<char> fin(n, 0);
    for (std::uint32_t f : m.finals) fin[f] = 1;
    // deduplicated adjacency, so the surviving-move counters below stay exact
    // even when a caller hands in repeated edges
    std::vector<std::vector<std::uint32_t>> adj(n), rev(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        adj[s] = m.owner[s] == 1 ? m.edges1[s] : m.edges2[s];
        std::sort(adj[s].begin(), adj[s].end());
        adj[s].erase(std::unique(adj[s].begin(), adj[s].end()), adj[s].end());
        for (std::uint32_t t : adj[s]) rev[t].push_back(s);
    }
    auto out = [&](std::uint32_t s) -> const std::vector<std::uint32_t>& { return adj[s]; };

    // Greatest set of non-goal states in which the scheduler can stay forever
    // with probability 1: scheduler states need one surviving move, process
    // states need a move and must keep every probabilistic branch inside.
    std::vector<char> alive(n);
    std::vector<std::uint32_t> cnt(n, 0);
    std::deque<std::uint32_t> kill;
    for (std::uint32_t s = 0; s < n; ++s) alive[s] = !fin[s];
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        std::uint32_t inside = 0;
        bool escape = false;
        for (std::uint32_t t : out(s)) {
            if (alive[t])
                ++inside;
            else
                escape = true;
        }
        cnt[s] = inside;
        bool bad = m.owner[s] == 1 ? inside == 0 : (out(s).empty() || escape);
        if (bad) {
            alive[s] = 0;
            kill.push_back(s);
        }
    }
    while (!kill.empty()) {
        std::uint32_t t = kill.front();
        kill.pop_front();
        for (std::uint32_t s : rev[t]) {
            if (!alive[s]) continue;
            bool bad = m.owner[s] == 1 ? --cnt[s] == 0 : true;
            if (bad) {
                alive[s] = 0;
                kill.push_back(s);
            }
        }
    }

    // Bad targets: surviving end components plus non-goal dead ends. Distance
    // to them through non-goal states, computed backwards.
    std::vector<std::uint32_t> dist(n, no_state);
    std::deque<std::uint32_t> bfs;
    for (std::uint32_t s = 0; s < n; ++s)
        if (alive[s] || (!fin[s] && out(s).empty())) {
            dist[s] = 0;
            bfs.push_back(s);
        }
    while (!bfs.empty()) {
        std::uint32_t t = bfs.front();
        bfs.pop_front();
        for (std::uint32_t s : rev[t])
            if (!fin[s] && dist[s] == no_state) {
                dist[s] = dist[t] + 1;
                bfs.push_back(s);
            }
    }

    std::uint32_t start = no_state;
    for (std::uint32_t s : m.init)
        if (!fin[s] && dist[s] != no_state) {
            start = s;
            break;
        }
    if (start == no_state) return {true, std::nullopt};

    // Total memoryless scheduler: stay inside a surviving component, else walk
    // down the distance, else pick arbitrarily.
    std::vector<scheduler_choice> choices;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (m.owner[s] != 1 || fin[s] || m.edges1[s].empty()) continue;
        std::uint32_t pick = m.edges1[s].front();
        if (alive[s]) {
            for (std::uint32_t t : m.edges1[s])
                if (alive[t]) {
                    pick = t;
                    break;
                }
        } else if (dist[s] != no_state && dist[s] > 0) {
            for (std::uint32_t t : m.edges1[s])
                if (!fin[t] && dist[t] == dist[s] - 1) {
                    pick = t;
                    break;
                }
        }
        choices.push_back({s, pick});
    }
    return {false, std::move(choices)};
}

bool verify_refutation(const explicit_mdp& m, const verdict& v) {
    if (v.holds || !v.witness) return false;
    const std::size_t n = m.states.size();
    std::vector<char> fin(n, 0);
    for (std::uint32_t f : m.finals) fin[f] = 1;

    std::vector<std::uint32_t> choice(n, no_state);
    for (const auto& c : v.witness.value()) {
        if (c.state >= n || m.owner[c.state] != 1) return false;
        const auto& e = m.edges1[c.state];
        if (std::find(e.begin(), e.end(), c.successor) == e.end()) return false;
        choice[c.state] = c.successor;
    }
    for (std::uint32_t s = 0; s < n; ++s)
        if (m.owner[s] == 1 && !fin[s] && !m.edges1[s].empty() && choice[s] == no_state)
            return false; // not a total scheduler

    // Induced chain: scheduler states follow their choice, process states keep
    // every branch; goal states absorb.
    auto induced = [&](std::uint32_t s) -> std::vector<std::uint32_t> {
        if (fin[s]) return {};
        if (m.owner[s] == 1)
            return choice[s] == no_state ? std::vector<std::uint32_t>{}
                                         : std::vector<std::uint32_t>{choice[s]};
        return m.edges2[s];
    };
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t t : induced(s)) rev[t].push_back(s);

    // can_reach = states from which the goal set is reachable in the chain
    std::vector<char> can_reach(n, 0);
    std::deque<std::uint32_t> bfs;
    for (std::uint32_t f : m.finals) {
        can_reach[f] = 1;
        bfs.push_back(f);
    }
    while (!bfs.empty()) {
        std::uint32_t t = bfs.front();
        bfs.pop_front();
        for (std::uint32_t s : rev[t])
            if (!can_reach[s]) {
                can_reach[s] = 1;
                bfs.push_back(s);
            }
    }

    // Refuted iff some initial state reaches a state that cannot reach the
    // goal set; goal is then unreached with positive probability.
    std::vector<char> seen(n, 0);
    for (std::uint32_t s0 : m.init) {
        if (fin[s0] || seen[s0]) continue;
        std::deque<std::uint32_t> fwd{s0};
        seen[s0] = 1;
        while (!fwd.empty()) {
            std::uint32_t s = fwd.front();
            fwd.pop_front();
            if (!can_reach[s]) return true;
            for (std::uint32_t t : induced(s))
                if (!seen[t]) {
                    seen[t] = 1;
                    fwd.push_back(t);
                }
        }
    }
    return false;
}

verdict kfair_verdict(const system_spec& spec, std::size_t n, std::uint32_t k,
                      std::size_t bound) {
    return as_reach(kfair_expand(spec, n, k, bound));
}

std::string format_state(const explicit_mdp& m, std::uint32_t s) {
    std::string out = format_word(m.states[s].config, m.sigma);
    if (!m.states[s].value.empty()) {
        out += " |";
        for (std::uint32_t v : m.states[s].value) out += ' ' + std::to_string(v);
    }
    return out;
}

std::optional<std::string> compare_encodings(const system_spec& spec, std::size_t n,
                                             std::uint32_t k, const sigma_table& table,
                                             std::size_t bound) {
    explicit_mdp ref = kfair_expand(spec, n, k, bound);
    encoded_spec enc = encode_system(spec, table);
    const system_spec& e = enc.spec;
    const std::size_t len = n * (1 + k);

    auto fail = [&](const std::string& msg) { return std::optional<std::string>(msg); };

    // (configuration, valuation) -> the unique encoded word with uniform
    // length-k blocks
    const symbol_id pebble = e.sigma.id_of("#1"), gap = e.sigma.id_of("#0");
    auto encode_state = [&](const mdp_state& s) {
        word w;
        w.reserve(len);
        for (std::size_t i = 0; i < s.config.size(); ++i) {
            w.push_back(s.config[i]);
            for (std::uint32_t j = 0; j < k; ++j)
                w.push_back(j < s.value[i] ? pebble : gap);
        }
        return w;
    };

    std::map<mdp_state, std::uint32_t> index;
    for (std::uint32_t s = 0; s < ref.states.size(); ++s) index.emplace(ref.states[s], s);

    // State-set, ownership, initial and goal agreement over the whole uniform
    // slice: every reference state must sit on the side its valuation
    // dictates (drained states become scheduler-owned alarms), and encoded
    // configurations outside the reference must not exist at all.
    std::vector<word> encoded_words(ref.states.size());
    for (std::uint32_t s = 0; s < ref.states.size(); ++s) {
        const mdp_state& st = ref.states[s];
        const word w = encode_state(st);
        encoded_words[s] = w;
        bool zero = std::find(st.value.begin(), st.value.end(), 0u) != st.value.end();
        bool v1e = membership(e.v1, w), v2e = membership(e.v2, w);
        if (v1e != (ref.owner[s] == 1 || zero) || v2e != (ref.owner[s] == 2 && !zero))
            return fail("state set or ownership disagrees at " + format_state(ref, s));
        bool want_init = std::binary_search(ref.init.begin(), ref.init.end(), s);
        if (membership(e.init, w) != want_init)
            return fail("initial set disagrees at " + format_state(ref, s));
        bool want_final = std::binary_search(ref.finals.begin(), ref.finals.end(), s);
        if (membership(e.final_cfg, w) != want_final)
            return fail("goal set disagrees at " + format_state(ref, s));
    }
    {
        // configurations outside v1 and v2 must stay outside after encoding,
        // under every valuation and in every encoded language
        std::set<word> state_words;
        for (const auto& st : ref.states) state_words.insert(st.config);
        std::vector<word> outside;
        enumerate_language(universal_nfa(spec.sigma), n, [&](const word& w) {
            if (!state_words.count(w)) outside.push_back(w);
            return true;
        });
        mdp_state probe;
        probe.value.assign(n, 0);
        for (const word& w : outside) {
            probe.config = w;
            for (;;) {
                const word ew = encode_state(probe);
                if (membership(e.v1, ew) || membership(e.v2, ew) ||
                    membership(e.init, ew) || membership(e.final_cfg, ew))
                    return fail("encoding invents the configuration " +
                                format_word(w, spec.sigma));
                std::size_t i = n;
                while (i > 0 && probe.value[i - 1] == k) probe.value[--i] = 0;
                if (i == 0) break;
                ++probe.value[i - 1];
            }
        }
    }

    // Edge agreement, both half-moves, from every state.
    explicit_mdp dec;
    dec.sigma = spec.sigma;
    dec.states = ref.states;
    dec.owner.resize(ref.states.size());
    dec.edges1.resize(ref.states.size());
    dec.edges2.resize(ref.states.size());
    dec.init = ref.init;
    dec.finals = ref.finals;
    for (std::uint32_t s = 0; s < ref.states.size(); ++s) {
        const mdp_state& st = ref.states[s];
        bool zero = std::find(st.value.begin(), st.value.end(), 0u) != st.value.end();
        dec.owner[s] = (ref.owner[s] == 1 || zero) ? 1 : 2;
        for (int half = 1; half <= 2; ++half) {
            const relation& rel = half == 1 ? e.p1 : e.p2;
            std::vector<std::uint32_t> got;
            for (const word& t : successors(rel, e.sigma, encoded_words[s], len, bound)) {
                auto d = decode_word(enc, t);
                if (!d) return fail("p" + std::to_string(half) + " edge from " +
                                    format_state(ref, s) + " reaches a malformed word");
                auto it = index.find({d->config, d->value});
                if (it == index.end() ||
                    !std::all_of(d->length.begin(), d->length.end(),
                                 [&](std::uint32_t b) { return b == k; }))
                    return fail("p" + std::to_string(half) + " edge from " +
                                format_state(ref, s) + " leaves the state space");
                got.push_back(it->second);
            }
            std::sort(got.begin(), got.end());
            got.erase(std::unique(got.begin(), got.end()), got.end());
            const auto& want = half == 1 ? ref.edges1[s] : ref.edges2[s];
            if (got != want) {
                std::vector<std::uint32_t> diff;
                std::set_symmetric_difference(got.begin(), got.end(), want.begin(),
                                              want.end(), std::back_inserter(diff));
                bool extra = std::binary_search(got.begin(), got.end(), diff.front());
                return fail("p" + std::to_string(half) + " edge " + format_state(ref, s) +
                            " -> " + format_state(ref, diff.front()) +
                            (extra ? " exists only in the encoding"
                                   : " is missing from the encoding"));
            }
            (half == 1 ? dec.edges1 : dec.edges2)[s] = std::move(got);
        }
    }

    bool ref_holds = as_reach(ref).holds, dec_holds = as_reach(dec).holds;
    if (ref_holds != dec_holds) {
        std::ostringstream os;
        os << "verdicts disagree: reference " << (ref_holds ? "holds" : "fails")
           << ", encoding " << (dec_holds ? "holds" : "fails");
        return fail(os.str());
    }
    return std::nullopt;
}

} // namespace rmcfair
