// Proof search as candidate enumeration plus counterexample screening. The
// expensive step is the full checker, so the loop is shaped to call it as
// rarely as possible: invariant-only conditions run once per invariant, not
// once per pair, and every fact learned from a failure is replayed against
// later candidates by plain membership tests before the checker sees them.
#include "rmcfair/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <list>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rmcfair {

namespace {

// Complete transition table: delta has states * letters cells, row-major by
// state; finals is a bitmask. State 0 is always initial.
struct dfa_table {
    std::size_t states = 1;
    std::vector<std::uint8_t> delta;
    std::uint32_t finals = 0;
};

// A breadth-first walk from state 0, scanning letters in ascending order,
// must discover states in ascending numeric order and reach all of them.
// Exactly one table per isomorphism class of reachable machines survives.
bool bfs_canonical(const std::vector<std::uint8_t>& delta, std::size_t states,
                   std::size_t letters) {
    std::size_t next = 1;
    for (std::size_t q = 0; q < next; ++q)
        for (std::size_t s = 0; s < letters; ++s) {
            std::size_t t = delta[q * letters + s];
            if (t >= next) {
                if (t != next) return false;
                ++next;
            }
        }
    return next == states;
}

// Visits every canonical table with exactly `states` states in lexicographic
// delta order, final masks ascending within a table. The fill bound (no cell
// may skip past one plus the largest state mentioned so far) discards most
// renumbered twins before bfs_canonical sees them. visit returning false
// stops the sweep; returns false iff stopped.
bool enumerate_tables(std::size_t states, std::size_t letters,
                      const std::function<bool(const dfa_table&)>& visit) {
    dfa_table t;
    t.states = states;
    t.delta.assign(states * letters, 0);
    const std::size_t cells = states * letters;
    std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t i,
                                                             std::size_t max_seen) {
        if (i == cells) {
            if (max_seen + 1 != states || !bfs_canonical(t.delta, states, letters))
                return true;
            for (std::uint32_t mask = 0; mask < (1u << states); ++mask) {
                t.finals = mask;
                if (!visit(t)) return false;
            }
            return true;
        }
        const std::size_t bound = std::min(max_seen + 1, states - 1);
        for (std::size_t v = 0; v <= bound; ++v) {
            t.delta[i] = static_cast<std::uint8_t>(v);
            if (!fill(i + 1, std::max(max_seen, v))) return false;
        }
        return true;
    };
    return fill(0, 0);
}

// The table interpreted over `alpha`, moving only on the listed letters.
nfa table_nfa(const dfa_table& t, const alphabet& alpha,
              const std::vector<symbol_id>& letters) {
    std::vector<transition> ts;
    ts.reserve(t.states * letters.size());
    for (std::size_t q = 0; q < t.states; ++q)
        for (std::size_t j = 0; j < letters.size(); ++j)
            ts.push_back({static_cast<state_id>(q), letters[j],
                          static_cast<state_id>(t.delta[q * letters.size() + j])});
    std::vector<state_id> fin;
    for (std::size_t q = 0; q < t.states; ++q)
        if ((t.finals >> q) & 1) fin.push_back(static_cast<state_id>(q));
    return nfa(alpha, static_cast<state_id>(t.states), std::move(ts), {0}, std::move(fin));
}

bool invariant_only(const counterexample& cex) {
    return cex.condition == "vc1-init" || cex.condition == "vc1-post";
}

// True when the candidate provably fails cex.condition. Every branch uses
// membership tests only; the surrounding facts (the word is initial, the
// pair is a step, the replies are exhaustive) were fixed at harvest time.
bool rejected_by(const counterexample& cex, const regular_proof& cand) {
    const std::vector<word>& w = cex.words;
    if (cex.condition == "vc1-init") return !membership(cand.inv, w[0]);
    if (cex.condition == "vc1-post")
        return membership(cand.inv, w[0]) && !membership(cand.inv, w[1]);
    if (cex.condition == "vc2-irreflexive") return cand.ord.contains({w[0], w[0]});
    if (cex.condition == "vc2-transitive")
        return cand.ord.contains({w[0], w[1]}) && cand.ord.contains({w[1], w[2]}) &&
               !cand.ord.contains({w[0], w[2]});
    if (cex.condition == "vc3") {
        if (!membership(cand.inv, w[0])) return false;
        for (const word& z : cex.answers)
            if (membership(cand.inv, z) && cand.ord.contains({w[0], z})) return false;
        return true;
    }
    return false;
}

// Bounded store of harvested counterexamples, most recently useful first, so
// the fact that killed the previous candidate meets its lexicographic
// neighbours first and screening usually ends after one replay.
struct cex_cache {
    std::size_t capacity;
    std::list<counterexample> entries;

    void add(counterexample cex) {
        if (std::find(entries.begin(), entries.end(), cex) != entries.end()) return;
        entries.push_front(std::move(cex));
        if (entries.size() > capacity) entries.pop_back();
    }

    // pair_level selects which facts apply: ranking-modifying sweeps skip the
    // invariant-only facts (their invariant already passed in full) and
    // invariant sweeps skip facts that need a ranking.
    bool rejects(const regular_proof& cand, bool pair_level) {
        for (auto it = entries.begin(); it != entries.end(); ++it) {
            if (invariant_only(*it) == pair_level) continue;
            if (rejected_by(*it, cand)) {
                entries.splice(entries.begin(), entries, it);
                return true;
            }
        }
        return false;
    }
};

} // namespace

bool replay_counterexample(const counterexample& cex, const regular_proof& candidate) {
    return !rejected_by(cex, candidate);
}

std::vector<counterexample> harvest_counterexamples(const system_spec& spec,
                                                    const regular_proof& candidate,
                                                    const vc_report& report) {
    std::vector<counterexample> out;
    for (const vc_failure& f : report.failures) {
        if (f.condition == "vc1-init" || f.condition == "vc2-irreflexive") {
            out.push_back({f.condition, f.words, {}});
        } else if (f.condition == "vc1-post") {
            // the checker reports only the escaping word; recover one of its
            // predecessors inside the candidate invariant
            const word& y = f.words[0];
            nfa pre = product_and(
                pre_image(unite(spec.p1, spec.p2), word_nfa(spec.sigma, y)), candidate.inv);
            if (auto x = is_empty_witness(pre))
                out.push_back({f.condition, {*x, y}, {}});
        } else if (f.condition == "vc2-transitive") {
            const word& x = f.words[0];
            const word& z = f.words[1];
            nfa mids = product_and(post_image(candidate.ord, word_nfa(spec.sigma, x)),
                                   pre_image(candidate.ord, word_nfa(spec.sigma, z)));
            if (auto y = is_empty_witness(mids))
                out.push_back({f.condition, {x, *y, z}, {}});
        } else if (f.condition == "vc3") {
            const word& y = f.words[1];
            std::vector<word> zs;
            nfa replies = post_image(spec.p2, word_nfa(spec.sigma, y));
            enumerate_language(replies, y.size(), [&](const word& z) {
                zs.push_back(z);
                return true;
            });
            out.push_back({f.condition, f.words, std::move(zs)});
        }
    }
    return out;
}

search_outcome search(const system_spec& spec, const search_budget& budget) {
    if (budget.max_inv_states == 0 || budget.max_ord_states == 0)
        throw std::invalid_argument("search: state bounds must be positive");
    if (budget.max_inv_states > 12 || budget.max_ord_states > 12)
        throw std::invalid_argument("search: state bounds above 12 are not supported");
    if (budget.deadline <= std::chrono::milliseconds::zero())
        throw std::invalid_argument("search: deadline must be positive");
    if (budget.cache_capacity == 0)
        throw std::invalid_argument("search: cache capacity must be positive");

    const auto started = std::chrono::steady_clock::now();
    const auto expired = [&] {
        return std::chrono::steady_clock::now() - started >= budget.deadline;
    };

    search_outcome out;
    cex_cache cache{budget.cache_capacity, {}};

    const alphabet pair_alpha = tuple_alphabet({spec.sigma, spec.sigma});
    const relation no_order({spec.sigma, spec.sigma}, empty_nfa(pair_alpha));

    // Ranking tables range over the letters a scheduler-move-then-reply round
    // can actually produce; every pair the progress condition may demand lies
    // in that set, and the rest would only inflate the table space.
    std::vector<symbol_id> rletters;
    {
        const relation rounds = trim(compose(spec.p1, spec.p2));
        std::set<symbol_id> seen;
        for (const transition& t : rounds.carrier().transitions()) seen.insert(t.sym);
        rletters.assign(seen.begin(), seen.end());
    }
    std::vector<symbol_id> iletters(spec.sigma.size());
    std::iota(iletters.begin(), iletters.end(), 0);

    const auto searching = [&] {
        return out.status != search_status::proved && !out.stats.deadline_hit;
    };

    for (std::size_t im = 1; im <= budget.max_inv_states && searching(); ++im) {
        enumerate_tables(im, iletters.size(), [&](const dfa_table& ti) {
            if (expired()) {
                out.stats.deadline_hit = true;
                return false;
            }
            ++out.stats.inv_candidates;
            regular_proof probe{spec.name, table_nfa(ti, spec.sigma, iletters), no_order};
            if (cache.rejects(probe, false)) {
                ++out.stats.cache_rejections;
                return true;
            }
            ++out.stats.invariant_checks;
            std::vector<vc_failure> inv_fails = check_vc1(spec, probe);
            if (!inv_fails.empty()) {
                vc_report rep;
                rep.failures = std::move(inv_fails);
                for (auto& cex : harvest_counterexamples(spec, probe, rep))
                    cache.add(std::move(cex));
                return true;
            }
            for (std::size_t om = 1; om <= budget.max_ord_states && searching(); ++om) {
                enumerate_tables(om, rletters.size(), [&](const dfa_table& to) {
                    if (expired()) {
                        out.stats.deadline_hit = true;
                        return false;
                    }
                    ++out.stats.ord_candidates;
                    regular_proof cand{
                        spec.name, probe.inv,
                        relation({spec.sigma, spec.sigma}, table_nfa(to, pair_alpha, rletters))};
                    if (cache.rejects(cand, true)) {
                        ++out.stats.cache_rejections;
                        return true;
                    }
                    ++out.stats.full_checks;
                    vc_report rep = check_proof(spec, cand);
                    if (rep.ok()) {
                        out.status = search_status::proved;
                        out.proof = std::move(cand);
                        return false;
                    }
                    for (auto& cex : harvest_counterexamples(spec, cand, rep))
                        cache.add(std::move(cex));
                    return true;
                });
            }
            return searching();
        });
    }

    // a proof leaves this function only after an independent re-check
    if (out.proof && !check_proof(spec, *out.proof).ok())
        throw std::logic_error("search: accepted candidate failed re-verification");
    return out;
}

} // namespace rmcfair
