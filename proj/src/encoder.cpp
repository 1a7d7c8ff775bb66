#include "rmcfair/encoder.hpp"

#include "rmcfair/regex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <utility>

namespace rmcfair {

namespace {

constexpr symbol_id gamma_size = 8;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool same_names(const alphabet& a, const alphabet& b) {
    if (a.size() != b.size()) return false;
    for (symbol_id s = 0; s < a.size(); ++s)
        if (a.name_of(s) != b.name_of(s)) return false;
    return true;
}

nfa counter_regex(const char* text) {
    alphabet pair = tuple_alphabet({counter_alphabet(), counter_alphabet()});
    return compile_regex(text, pair);
}

const nfa& gadget_carrier(gadget_kind kind) {
    const counter_gadget_set& g = counter_gadgets();
    switch (kind) {
    case gadget_kind::id: return g.id.carrier();
    case gadget_kind::dec: return g.dec.carrier();
    default: return g.reset.carrier();
    }
}

} // namespace

const alphabet& counter_alphabet() {
    static const alphabet a = [] {
        alphabet out;
        out.intern("#1");
        out.intern("#0");
        return out;
    }();
    return a;
}

const counter_gadget_set& counter_gadgets() {
    static const counter_gadget_set set = [] {
        std::vector<alphabet> tracks{counter_alphabet(), counter_alphabet()};
        return counter_gadget_set{
            relation(tracks, trim(counter_regex("(#1/#1)+ (#0/#0)*"))),
            relation(tracks, trim(counter_regex("(#1/#1)* #1/#0 (#0/#0)*"))),
            relation(tracks, trim(counter_regex("(#1/#1)+ (#0/#1)*"))),
        };
    }();
    return set;
}

const sigma_table& default_sigma_table() {
    static const sigma_table table{
        gadget_kind::reset, // 000: idle justice position, must not carry debt
        gadget_kind::id,    // 001: idle compassion position
        gadget_kind::reset, // 010: serviced
        gadget_kind::reset, // 011: serviced
        gadget_kind::dec,   // 100: waiting justice position
        gadget_kind::dec,   // 101: waiting compassion position
        gadget_kind::reset, // 110: serviced
        gadget_kind::reset, // 111: serviced
    };
    return table;
}

std::vector<sigma_table> sigma_table_mutants() {
    std::vector<sigma_table> out;
    const sigma_table& base = default_sigma_table();
    for (std::size_t row = 0; row < base.size(); ++row)
        for (gadget_kind alt : {gadget_kind::id, gadget_kind::dec, gadget_kind::reset})
            if (alt != base[row]) {
                sigma_table t = base;
                t[row] = alt;
                out.push_back(t);
            }
    return out;
}

std::optional<annotator_issue> check_annotator(const system_spec& spec) {
    require(spec.fair.has_value(), "check_annotator: the system has no fairness annotator");
    const relation& fair = *spec.fair;
    nfa a = trim(fair.carrier());
    if (a.num_states() == 0) return std::nullopt;

    // Breadth-first search over two synchronized runs of the annotator plus
    // a bit recording whether some position already clashed on the kind
    // bit. Shortest witness first; edges in sorted letter order keep it
    // deterministic.
    const state_id n = a.num_states();
    auto pack = [&](state_id x, state_id y, bool seen) {
        return (static_cast<std::size_t>(x) * n + y) * 2 + (seen ? 1 : 0);
    };
    struct step {
        std::size_t prev;
        symbol_id l1, l2;
    };
    std::vector<step> from(static_cast<std::size_t>(n) * n * 2, step{SIZE_MAX, 0, 0});
    std::deque<std::size_t> queue;
    std::vector<bool> visited(from.size(), false);
    for (state_id x : a.initial())
        for (state_id y : a.initial()) {
            std::size_t s = pack(x, y, false);
            if (!visited[s]) {
                visited[s] = true;
                from[s] = {SIZE_MAX, 0, 0};
                queue.push_back(s);
            }
        }
    std::size_t goal = SIZE_MAX;
    while (!queue.empty() && goal == SIZE_MAX) {
        std::size_t cur = queue.front();
        queue.pop_front();
        bool seen = cur % 2;
        state_id y = static_cast<state_id>((cur / 2) % n);
        state_id x = static_cast<state_id>(cur / 2 / n);
        auto [xb, xe] = a.from(x);
        auto [yb, ye] = a.from(y);
        for (auto* t1 = xb; t1 != xe; ++t1)
            for (auto* t2 = yb; t2 != ye; ++t2) {
                symbol_id g1 = t1->sym % gamma_size, g2 = t2->sym % gamma_size;
                bool seen2 = seen || (compassion_bit(g1) != compassion_bit(g2));
                std::size_t next = pack(t1->to, t2->to, seen2);
                if (visited[next]) continue;
                visited[next] = true;
                from[next] = {cur, t1->sym, t2->sym};
                if (seen2 && a.is_final(t1->to) && a.is_final(t2->to)) {
                    goal = next;
                    break;
                }
                queue.push_back(next);
            }
    }
    if (goal == SIZE_MAX) return std::nullopt;

    std::vector<std::pair<symbol_id, symbol_id>> path;
    for (std::size_t s = goal; from[s].prev != SIZE_MAX; s = from[s].prev)
        path.push_back({from[s].l1, from[s].l2});
    std::reverse(path.begin(), path.end());
    annotator_issue issue;
    issue.position = 0;
    bool found = false;
    for (std::size_t i = 0; i < path.size(); ++i) {
        symbol_id g1 = path[i].first % gamma_size, g2 = path[i].second % gamma_size;
        issue.config1.push_back(path[i].first / gamma_size);
        issue.config2.push_back(path[i].second / gamma_size);
        issue.annot1.push_back(g1);
        issue.annot2.push_back(g2);
        if (!found && compassion_bit(g1) != compassion_bit(g2)) {
            issue.position = i;
            found = true;
        }
    }
    return issue;
}

nfa stage1(const relation& rel, const relation& ann) {
    require(rel.tracks() == 2 && same_names(rel.track_alphabet(0), rel.track_alphabet(1)),
            "stage1: rel must be a binary relation over one alphabet");
    require(ann.tracks() == 2 && same_names(ann.track_alphabet(0), rel.track_alphabet(0)),
            "stage1: annotator reads a different alphabet than rel");
    require(same_names(ann.track_alphabet(1), gamma_alphabet()),
            "stage1: annotator outputs must be annotation letters");

    const alphabet& sigma = rel.track_alphabet(0);
    const symbol_id n = sigma.size();
    const alphabet& pair_alpha = rel.carrier().alpha();
    alphabet inter;
    for (symbol_id s = 0; s < pair_alpha.size(); ++s) inter.intern(pair_alpha.name_of(s));
    for (symbol_id g = 0; g < gamma_size; ++g) inter.intern(gamma_alphabet().name_of(g));
    const symbol_id gamma_base = n * n;

    nfa r = trim(rel.carrier());
    nfa a = trim(ann.carrier());
    const state_id nr = r.num_states(), na = a.num_states();

    // state = (rel state, annotator state, slot); slot 0 awaits a letter
    // pair, slot g+1 remembers the guessed annotation g until it is read.
    auto idx = [&](state_id q, state_id qf, symbol_id slot) {
        return (q * na + qf) * 9 + slot;
    };

    // annotator moves grouped by (state, first-track letter)
    std::vector<std::vector<std::pair<symbol_id, state_id>>> ann_moves(
        static_cast<std::size_t>(na) * n);
    for (const auto& t : a.transitions())
        ann_moves[t.from * n + t.sym / gamma_size].push_back({t.sym % gamma_size, t.to});

    std::vector<transition> ts;
    std::vector<bool> remembered(static_cast<std::size_t>(nr) * na * 9, false);
    for (const auto& t : r.transitions()) {
        symbol_id src_letter = t.sym / n;
        for (state_id qf = 0; qf < na; ++qf)
            for (const auto& [g, qf2] : ann_moves[qf * n + src_letter]) {
                state_id to = idx(t.to, qf2, g + 1);
                ts.push_back({idx(t.from, qf, 0), t.sym, to});
                remembered[to] = true;
            }
    }
    for (state_id q = 0; q < nr; ++q)
        for (state_id qf = 0; qf < na; ++qf)
            for (symbol_id g = 0; g < gamma_size; ++g)
                if (remembered[idx(q, qf, g + 1)])
                    ts.push_back({idx(q, qf, g + 1), gamma_base + g, idx(q, qf, 0)});

    std::vector<state_id> inits, finals;
    for (state_id q : r.initial())
        for (state_id qf : a.initial()) inits.push_back(idx(q, qf, 0));
    for (state_id q : r.finals())
        for (state_id qf : a.finals()) finals.push_back(idx(q, qf, 0));
    return nfa(std::move(inter), nr * na * 9, std::move(ts), std::move(inits),
               std::move(finals));
}

relation stage2(const nfa& intermediate, const alphabet& sigma, const sigma_table& table) {
    const symbol_id n = sigma.size();
    require(intermediate.alpha().size() == static_cast<std::size_t>(n) * n + gamma_size,
            "stage2: intermediate alphabet does not match the configuration alphabet");
    require(!sigma.contains("#1") && !sigma.contains("#0"),
            "stage2: #1 and #0 are reserved for counters");

    alphabet sp;
    for (symbol_id s = 0; s < n; ++s) sp.intern(sigma.name_of(s));
    sp.intern("#1");
    sp.intern("#0");
    alphabet pp = tuple_alphabet({sp, sp});
    auto pp_of = [&](symbol_id a, symbol_id b) {
        return static_cast<symbol_id>(a * sp.size() + b);
    };

    // counter-pair letter ids of each gadget, translated into pp
    const nfa* gadgets[3] = {&gadget_carrier(gadget_kind::id), &gadget_carrier(gadget_kind::dec),
                             &gadget_carrier(gadget_kind::reset)};
    std::vector<symbol_id> gadget_letter[3];
    for (int k = 0; k < 3; ++k) {
        const alphabet& ga = gadgets[k]->alpha();
        for (symbol_id s = 0; s < ga.size(); ++s)
            gadget_letter[k].push_back(pp.id_of(ga.name_of(s)));
    }

    nfa m = trim(intermediate);
    state_id next = m.num_states();
    std::vector<transition> ts;
    for (const auto& t : m.transitions()) {
        if (t.sym < n * n) {
            ts.push_back({t.from, pp_of(t.sym / n, t.sym % n), t.to});
            continue;
        }
        const symbol_id g = t.sym - n * n;
        const int k = static_cast<int>(table[g]);
        const nfa& gad = *gadgets[k];
        // splice a fresh copy of the gadget between the endpoints; the
        // gadgets never accept the empty word, so no direct edge is needed
        const state_id base = next;
        next += gad.num_states();
        const detail::state_set gad_init = gad.initial_set();
        for (const auto& gt : gad.transitions()) {
            symbol_id letter = gadget_letter[k][gt.sym];
            ts.push_back({base + gt.from, letter, base + gt.to});
            bool from_init = gad_init.test(gt.from);
            if (from_init) ts.push_back({t.from, letter, base + gt.to});
            if (gad.is_final(gt.to)) {
                ts.push_back({base + gt.from, letter, t.to});
                if (from_init) ts.push_back({t.from, letter, t.to});
            }
        }
    }
    nfa carrier(std::move(pp), next, std::move(ts),
                {m.initial().begin(), m.initial().end()},
                {m.finals().begin(), m.finals().end()});
    return relation({sp, sp}, trim(carrier));
}

nfa interleave_blocks(const nfa& config, const nfa& block, const alphabet& sigma_prime) {
    nfa c = trim(remap_alphabet(config, sigma_prime));
    nfa b = trim(remap_alphabet(block, sigma_prime));
    const state_id nc = c.num_states(), nb = b.num_states();
    bool block_has_epsilon = false;
    for (state_id q : b.initial())
        if (b.is_final(q)) block_has_epsilon = true;

    // states: q < nc awaits a configuration letter with config at q;
    // nc + q*nb + s is inside the block trailing that letter.
    auto in_block = [&](state_id q, state_id s) { return nc + q * nb + s; };
    std::vector<transition> ts;
    for (const auto& t : c.transitions()) {
        for (state_id b0 : b.initial()) ts.push_back({t.from, t.sym, in_block(t.to, b0)});
        if (block_has_epsilon) ts.push_back(t);
    }
    for (state_id q = 0; q < nc; ++q)
        for (const auto& t : b.transitions()) {
            ts.push_back({in_block(q, t.from), t.sym, in_block(q, t.to)});
            if (b.is_final(t.to)) ts.push_back({in_block(q, t.from), t.sym, q});
        }
    nfa out(sigma_prime, nc + nc * nb, std::move(ts),
            {c.initial().begin(), c.initial().end()}, {c.finals().begin(), c.finals().end()});
    return trim(out);
}

namespace {

// Somewhere in the word, a configuration letter is followed by a maximal
// #-run that is all #0: the alarm pattern. Only sound on words that already
// have the alternating letter-block shape.
nfa zero_block_somewhere(const alphabet& sigma_prime) {
    const symbol_id total = sigma_prime.size();
    const symbol_id pebble = sigma_prime.id_of("#1");
    const symbol_id gap = sigma_prime.id_of("#0");
    std::vector<transition> ts;
    for (symbol_id s = 0; s < total; ++s) {
        ts.push_back({0, s, 0});
        ts.push_back({3, s, 3});
        if (s != pebble && s != gap) {
            ts.push_back({0, s, 1});
            ts.push_back({2, s, 3});
        }
    }
    ts.push_back({1, gap, 2});
    ts.push_back({2, gap, 2});
    return nfa(sigma_prime, 4, std::move(ts), {0}, {2, 3});
}

nfa shaped_block() { return compile_regex("#1+ #0* | #0+", counter_alphabet()); }
nfa positive_block() { return compile_regex("#1+ #0*", counter_alphabet()); }

} // namespace

nfa encode_init(const nfa& init, const alphabet& sigma_prime) {
    return interleave_blocks(init, compile_regex("#1+", counter_alphabet()), sigma_prime);
}

nfa encode_final(const nfa& final_cfg, const nfa& v1v2, const alphabet& sigma_prime) {
    nfa goal = interleave_blocks(final_cfg, shaped_block(), sigma_prime);
    nfa alarm = product_and(interleave_blocks(v1v2, shaped_block(), sigma_prime),
                            zero_block_somewhere(sigma_prime));
    return trim(product_or(goal, alarm));
}

encoded_spec encode_system(const system_spec& spec, const sigma_table& table) {
    require(spec.fair.has_value(),
            "encode_system: '" + spec.name + "' has no fairness annotator");
    require(!spec.sigma.contains("#1") && !spec.sigma.contains("#0"),
            "encode_system: #1 and #0 are reserved for counters");
    if (auto issue = check_annotator(spec)) {
        throw std::invalid_argument(
            "encode_system: annotator of '" + spec.name + "' mixes kinds at position " +
            std::to_string(issue->position) + " between '" +
            format_word(issue->config1, spec.sigma) + "' (" +
            format_word(issue->annot1, gamma_alphabet()) + ") and '" +
            format_word(issue->config2, spec.sigma) + "' (" +
            format_word(issue->annot2, gamma_alphabet()) + ")");
    }

    alphabet sp;
    for (symbol_id s = 0; s < spec.sigma.size(); ++s) sp.intern(spec.sigma.name_of(s));
    sp.intern("#1");
    sp.intern("#0");

    relation p1e = stage2(stage1(spec.p1, *spec.fair), spec.sigma, table);
    relation p2e = stage2(stage1(spec.p2, *spec.fair), spec.sigma, table);

    nfa owned = product_or(spec.v1, spec.v2);
    nfa alarm = product_and(interleave_blocks(owned, shaped_block(), sp),
                            zero_block_somewhere(sp));
    nfa v1e = trim(product_or(interleave_blocks(spec.v1, positive_block(), sp), alarm));
    nfa v2e = interleave_blocks(spec.v2, positive_block(), sp);
    nfa inite = encode_init(spec.init, sp);
    nfa finale = encode_final(spec.final_cfg, owned, sp);

    system_spec out{spec.name + "-encoded",
                    sp,
                    std::move(v1e),
                    std::move(v2e),
                    std::move(inite),
                    std::move(finale),
                    std::move(p1e),
                    std::move(p2e),
                    std::nullopt};
    return encoded_spec{std::move(out), spec.sigma};
}

std::optional<decoded_config> decode_word(const encoded_spec& enc, const word& w) {
    const symbol_id n = enc.sigma.size();
    const symbol_id pebble = n, gap = n + 1;
    decoded_config out;
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i] >= n) return std::nullopt; // expected a configuration letter
        out.config.push_back(w[i]);
        ++i;
        std::uint32_t value = 0, length = 0;
        while (i < w.size() && w[i] == pebble) ++value, ++length, ++i;
        while (i < w.size() && w[i] == gap) ++length, ++i;
        if (i < w.size() && w[i] >= n) return std::nullopt; // block was not shaped
        if (length == 0) return std::nullopt;               // letters need a block
        out.value.push_back(value);
        out.length.push_back(length);
    }
    return out;
}

} // namespace rmcfair
