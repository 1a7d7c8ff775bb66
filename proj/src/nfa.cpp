#include "rmcfair/nfa.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <queue>
#include <sstream>

namespace rmcfair {

namespace detail {

bool state_set::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

bool state_set::intersects(const state_set& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

bool state_set::is_subset_of(const state_set& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

state_set& state_set::operator|=(const state_set& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

state_set& state_set::operator&=(const state_set& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

} // namespace detail

namespace {

std::vector<state_id> sorted_unique(std::vector<state_id> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

nfa::nfa(alphabet alpha, state_id num_states, std::vector<transition> transitions,
         std::vector<state_id> initial, std::vector<state_id> finals)
    : alpha_(std::move(alpha)),
      num_states_(num_states),
      transitions_(std::move(transitions)),
      initial_(sorted_unique(std::move(initial))),
      finals_(sorted_unique(std::move(finals))) {
    if (num_states_ == 0) throw std::invalid_argument("nfa: need at least one state");
    for (const auto& t : transitions_) {
        if (t.from >= num_states_ || t.to >= num_states_)
            throw std::invalid_argument("nfa: transition endpoint out of range");
        if (t.sym >= alpha_.size())
            throw std::invalid_argument("nfa: transition symbol out of range");
    }
    for (auto q : initial_)
        if (q >= num_states_) throw std::invalid_argument("nfa: initial state out of range");
    for (auto q : finals_)
        if (q >= num_states_) throw std::invalid_argument("nfa: final state out of range");
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    row_.assign(num_states_ + 1, 0);
    for (const auto& t : transitions_) row_[t.from + 1]++;
    for (state_id q = 0; q < num_states_; ++q) row_[q + 1] += row_[q];
}

bool nfa::is_final(state_id q) const {
    return std::binary_search(finals_.begin(), finals_.end(), q);
}

std::pair<const transition*, const transition*> nfa::from(state_id q) const {
    const transition* base = transitions_.data();
    return {base + row_[q], base + row_[q + 1]};
}

detail::state_set nfa::initial_set() const {
    detail::state_set s(num_states_);
    for (auto q : initial_) s.set(q);
    return s;
}

detail::state_set nfa::final_set() const {
    detail::state_set s(num_states_);
    for (auto q : finals_) s.set(q);
    return s;
}

detail::state_set nfa::step(const detail::state_set& s, symbol_id a) const {
    detail::state_set out(num_states_);
    s.for_each([&](std::size_t q) {
        auto [it, end] = from(static_cast<state_id>(q));
        // transitions from q are sorted by symbol; binary search the symbol run
        it = std::lower_bound(it, end, transition{static_cast<state_id>(q), a, 0});
        for (; it != end && it->sym == a; ++it) out.set(it->to);
    });
    return out;
}

nfa empty_nfa(const alphabet& alpha) { return nfa(alpha, 1, {}, {0}, {}); }

nfa universal_nfa(const alphabet& alpha) {
    std::vector<transition> ts;
    for (symbol_id a = 0; a < alpha.size(); ++a) ts.push_back({0, a, 0});
    return nfa(alpha, 1, std::move(ts), {0}, {0});
}

nfa word_nfa(const alphabet& alpha, const word& w) {
    std::vector<transition> ts;
    for (std::size_t i = 0; i < w.size(); ++i)
        ts.push_back({static_cast<state_id>(i), w[i], static_cast<state_id>(i + 1)});
    return nfa(alpha, static_cast<state_id>(w.size() + 1), std::move(ts), {0},
               {static_cast<state_id>(w.size())});
}

bool membership(const nfa& a, const word& w) {
    detail::state_set s = a.initial_set();
    for (auto sym : w) {
        if (s.none()) return false;
        s = a.step(s, sym);
    }
    return s.intersects(a.final_set());
}

nfa determinize(const nfa& a, std::size_t max_states) {
    const std::size_t nsym = a.alpha().size();
    std::map<detail::state_set, state_id> index;
    std::vector<detail::state_set> order;
    std::vector<transition> ts;
    auto intern = [&](const detail::state_set& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        if (order.size() >= max_states)
            throw std::runtime_error("determinize: state bound exceeded (" +
                                     std::to_string(max_states) + " subsets)");
        state_id id = static_cast<state_id>(order.size());
        index.emplace(s, id);
        order.push_back(s);
        return id;
    };
    state_id q0 = intern(a.initial_set());
    for (state_id q = 0; q < order.size(); ++q) {
        detail::state_set cur = order[q]; // copy: order may reallocate below
        for (symbol_id sym = 0; sym < nsym; ++sym) {
            state_id next = intern(a.step(cur, sym));
            ts.push_back({q, sym, next});
        }
    }
    detail::state_set fin = a.final_set();
    std::vector<state_id> finals;
    for (state_id q = 0; q < order.size(); ++q)
        if (order[q].intersects(fin)) finals.push_back(q);
    return nfa(a.alpha(), static_cast<state_id>(order.size()), std::move(ts), {q0},
               std::move(finals));
}

nfa complement(const nfa& a, std::size_t max_states) {
    nfa d = determinize(a, max_states);
    std::vector<state_id> finals;
    for (state_id q = 0; q < d.num_states(); ++q)
        if (!d.is_final(q)) finals.push_back(q);
    return nfa(d.alpha(), d.num_states(), d.transitions(), d.initial(), std::move(finals));
}

nfa product(const nfa& a, const nfa& b, product_kind kind) {
    if (a.alpha() != b.alpha())
        throw std::invalid_argument("product: operand alphabets differ");
    if (kind == product_kind::union_) {
        // Disjoint union realizes language union and keeps both operands' shapes.
        const state_id off = a.num_states();
        std::vector<transition> ts = a.transitions();
        for (const auto& t : b.transitions()) ts.push_back({t.from + off, t.sym, t.to + off});
        std::vector<state_id> init = a.initial();
        for (auto q : b.initial()) init.push_back(q + off);
        std::vector<state_id> fin = a.finals();
        for (auto q : b.finals()) fin.push_back(q + off);
        return nfa(a.alpha(), a.num_states() + b.num_states(), std::move(ts), std::move(init),
                   std::move(fin));
    }
    // Intersection: reachable pair construction, BFS discovery order.
    std::map<std::pair<state_id, state_id>, state_id> index;
    std::vector<std::pair<state_id, state_id>> order;
    auto intern = [&](state_id qa, state_id qb) {
        auto key = std::make_pair(qa, qb);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        state_id id = static_cast<state_id>(order.size());
        index.emplace(key, id);
        order.push_back(key);
        return id;
    };
    std::vector<state_id> init;
    for (auto qa : a.initial())
        for (auto qb : b.initial()) init.push_back(intern(qa, qb));
    std::vector<transition> ts;
    std::vector<state_id> finals;
    for (state_id q = 0; q < order.size(); ++q) {
        auto [qa, qb] = order[q];
        if (a.is_final(qa) && b.is_final(qb)) finals.push_back(q);
        auto [ia, enda] = a.from(qa);
        for (; ia != enda; ++ia) {
            auto [ib, endb] = b.from(qb);
            ib = std::lower_bound(ib, endb, transition{qb, ia->sym, 0});
            for (; ib != endb && ib->sym == ia->sym; ++ib)
                ts.push_back({q, ia->sym, intern(ia->to, ib->to)});
        }
    }
    if (order.empty()) return empty_nfa(a.alpha());
    return nfa(a.alpha(), static_cast<state_id>(order.size()), std::move(ts), std::move(init),
               std::move(finals));
}

nfa trim(const nfa& a) {
    const state_id n = a.num_states();
    std::vector<char> fwd(n, 0), bwd(n, 0);
    std::deque<state_id> queue;
    for (auto q : a.initial())
        if (!fwd[q]) fwd[q] = 1, queue.push_back(q);
    while (!queue.empty()) {
        state_id q = queue.front();
        queue.pop_front();
        auto [it, end] = a.from(q);
        for (; it != end; ++it)
            if (!fwd[it->to]) fwd[it->to] = 1, queue.push_back(it->to);
    }
    std::vector<std::vector<state_id>> rev(n);
    for (const auto& t : a.transitions()) rev[t.to].push_back(t.from);
    for (auto q : a.finals())
        if (!bwd[q]) bwd[q] = 1, queue.push_back(q);
    while (!queue.empty()) {
        state_id q = queue.front();
        queue.pop_front();
        for (auto p : rev[q])
            if (!bwd[p]) bwd[p] = 1, queue.push_back(p);
    }
    std::vector<state_id> remap(n, UINT32_MAX);
    state_id next = 0;
    for (state_id q = 0; q < n; ++q)
        if (fwd[q] && bwd[q]) remap[q] = next++;
    if (next == 0) return empty_nfa(a.alpha());
    std::vector<transition> ts;
    for (const auto& t : a.transitions())
        if (remap[t.from] != UINT32_MAX && remap[t.to] != UINT32_MAX)
            ts.push_back({remap[t.from], t.sym, remap[t.to]});
    std::vector<state_id> init, fin;
    for (auto q : a.initial())
        if (remap[q] != UINT32_MAX) init.push_back(remap[q]);
    for (auto q : a.finals())
        if (remap[q] != UINT32_MAX) fin.push_back(remap[q]);
    return nfa(a.alpha(), next, std::move(ts), std::move(init), std::move(fin));
}

namespace {

// Exact distance from each state to acceptance (UINT32_MAX if none).
std::vector<std::uint32_t> distance_to_final(const nfa& a) {
    std::vector<std::uint32_t> dist(a.num_states(), UINT32_MAX);
    std::vector<std::vector<state_id>> rev(a.num_states());
    for (const auto& t : a.transitions()) rev[t.to].push_back(t.from);
    std::deque<state_id> queue;
    for (auto q : a.finals()) dist[q] = 0, queue.push_back(q);
    while (!queue.empty()) {
        state_id q = queue.front();
        queue.pop_front();
        for (auto p : rev[q])
            if (dist[p] == UINT32_MAX) dist[p] = dist[q] + 1, queue.push_back(p);
    }
    return dist;
}

} // namespace

std::optional<word> is_empty_witness(const nfa& a) {
    auto dist = distance_to_final(a);
    std::uint32_t best = UINT32_MAX;
    for (auto q : a.initial()) best = std::min(best, dist[q]);
    if (best == UINT32_MAX) return std::nullopt;
    // Greedy reconstruction of the shortest-then-lex-least accepted word: keep
    // every state consistent with the chosen prefix and remaining distance.
    word w;
    std::vector<state_id> frontier;
    for (auto q : a.initial())
        if (dist[q] == best) frontier.push_back(q);
    for (std::uint32_t remaining = best; remaining > 0; --remaining) {
        symbol_id chosen = UINT32_MAX;
        std::vector<state_id> next;
        for (symbol_id sym = 0; sym < a.alpha().size() && chosen == UINT32_MAX; ++sym) {
            std::vector<state_id> cand;
            for (auto q : frontier) {
                auto [it, end] = a.from(q);
                it = std::lower_bound(it, end, transition{q, sym, 0});
                for (; it != end && it->sym == sym; ++it)
                    if (dist[it->to] == remaining - 1) cand.push_back(it->to);
            }
            if (!cand.empty()) {
                chosen = sym;
                next = sorted_unique(std::move(cand));
            }
        }
        w.push_back(chosen);
        frontier = std::move(next);
    }
    return w;
}

std::optional<word> includes_classical(const nfa& a, const nfa& b) {
    if (a.alpha() != b.alpha())
        throw std::invalid_argument("includes: operand alphabets differ");
    return is_empty_witness(product_and(a, complement(b)));
}

std::optional<word> includes_antichain(const nfa& a, const nfa& b) {
    if (a.alpha() != b.alpha())
        throw std::invalid_argument("includes: operand alphabets differ");
    // Nodes are (a-state, subset of b-states). A node where a accepts and the
    // subset misses all b-finals proves non-inclusion. Nodes subsumed by an
    // already-visited node with a smaller subset are pruned; any
    // counterexample below the pruned node exists below the subsumer too, and
    // the subsumer was discovered no later in symbol-ordered BFS, so the
    // canonical (shortest-lex) witness is preserved.
    struct node {
        state_id qa;
        detail::state_set sb;
        std::uint32_t parent;
        symbol_id via;
    };
    const detail::state_set bfin = b.final_set();
    std::vector<node> nodes;
    std::map<state_id, std::vector<std::uint32_t>> antichain; // qa -> node indices
    auto subsumed = [&](state_id qa, const detail::state_set& sb) {
        auto it = antichain.find(qa);
        if (it == antichain.end()) return false;
        for (auto idx : it->second)
            if (nodes[idx].sb.is_subset_of(sb)) return true;
        return false;
    };
    auto extract = [&](std::uint32_t idx) {
        word w;
        while (nodes[idx].parent != UINT32_MAX) {
            w.push_back(nodes[idx].via);
            idx = nodes[idx].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    std::deque<std::uint32_t> queue;
    detail::state_set b0 = b.initial_set();
    for (auto qa : a.initial()) {
        if (subsumed(qa, b0)) continue;
        std::uint32_t idx = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back({qa, b0, UINT32_MAX, 0});
        antichain[qa].push_back(idx);
        if (a.is_final(qa) && !b0.intersects(bfin)) return extract(idx);
        queue.push_back(idx);
    }
    while (!queue.empty()) {
        std::uint32_t cur = queue.front();
        queue.pop_front();
        const state_id qa = nodes[cur].qa;
        // One subset step per symbol, shared across the a-branches.
        auto [it, end] = a.from(qa);
        symbol_id prev_sym = UINT32_MAX;
        detail::state_set sb_next;
        for (; it != end; ++it) {
            if (it->sym != prev_sym) {
                sb_next = b.step(nodes[cur].sb, it->sym);
                prev_sym = it->sym;
            }
            if (subsumed(it->to, sb_next)) continue;
            std::uint32_t idx = static_cast<std::uint32_t>(nodes.size());
            nodes.push_back({it->to, sb_next, cur, it->sym});
            antichain[it->to].push_back(idx);
            if (a.is_final(it->to) && !sb_next.intersects(bfin)) return extract(idx);
            queue.push_back(idx);
        }
    }
    return std::nullopt;
}

bool enumerate_language(const nfa& a, std::size_t len,
                        const std::function<bool(const word&)>& fn) {
    // reach[r] = states from which a final state is exactly r steps away.
    std::vector<detail::state_set> reach(len + 1, detail::state_set(a.num_states()));
    reach[0] = a.final_set();
    std::vector<std::vector<std::pair<symbol_id, state_id>>> rev(a.num_states());
    for (const auto& t : a.transitions()) rev[t.to].push_back({t.sym, t.from});
    for (std::size_t r = 1; r <= len; ++r) {
        reach[r - 1].for_each([&](std::size_t q) {
            for (auto [sym, p] : rev[q]) reach[r].set(p);
        });
    }
    word w(len, 0);
    detail::state_set start = a.initial_set();
    start &= reach[len];
    std::function<bool(std::size_t, const detail::state_set&)> walk =
        [&](std::size_t depth, const detail::state_set& cur) -> bool {
        if (depth == len) return fn(w);
        for (symbol_id sym = 0; sym < a.alpha().size(); ++sym) {
            detail::state_set next = a.step(cur, sym);
            next &= reach[len - depth - 1];
            if (next.none()) continue;
            w[depth] = sym;
            if (!walk(depth + 1, next)) return false;
        }
        return true;
    };
    if (start.none()) return true;
    return walk(0, start);
}

// --- textual interface ---

parse_error::parse_error(std::string msg, std::size_t line_, std::size_t column_)
    : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
      line(line_),
      column(column_) {}

namespace {

struct block_lexer {
    const std::string& text;
    std::size_t pos = 0, line = 1, col = 1;

    void advance(char c) {
        ++pos;
        if (c == '\n') ++line, col = 1;
        else ++col;
    }
    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') advance(text[pos]);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(c);
            } else {
                break;
            }
        }
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '/';
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, line, col); }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            fail(std::string("expected '") + c + "'");
        advance(text[pos]);
    }
    bool try_consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            advance(text[pos]);
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) advance(text[pos]);
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }
    std::uint32_t number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            advance(text[pos]);
        if (pos == start) fail("expected number");
        return static_cast<std::uint32_t>(std::stoul(text.substr(start, pos - start)));
    }
    bool keyword_ahead(const std::string& kw) {
        skip_ws();
        if (text.compare(pos, kw.size(), kw) != 0) return false;
        std::size_t after = pos + kw.size();
        return after >= text.size() || !ident_char(text[after]);
    }
};

} // namespace

automaton_text parse_automaton_block(const std::string& text) {
    block_lexer lx{text};
    if (lx.ident() != "automaton") lx.fail("expected 'automaton'");
    std::string name;
    if (lx.peek() != '{') name = lx.ident();
    lx.expect('{');
    alphabet alpha;
    std::uint32_t nstates = 0;
    bool saw_states = false;
    std::vector<state_id> initial, finals;
    std::vector<transition> ts;
    while (!lx.try_consume('}')) {
        if (lx.eof()) lx.fail("unterminated automaton block");
        if (lx.keyword_ahead("alphabet")) {
            lx.ident();
            do {
                std::string sym = lx.ident();
                if (alpha.contains(sym)) lx.fail("duplicate alphabet symbol '" + sym + "'");
                alpha.intern(sym);
            } while (lx.try_consume(','));
            lx.expect(';');
        } else if (lx.keyword_ahead("states")) {
            lx.ident();
            nstates = lx.number();
            saw_states = true;
            lx.expect(';');
        } else if (lx.keyword_ahead("initial")) {
            lx.ident();
            do {
                initial.push_back(lx.number());
            } while (lx.try_consume(','));
            lx.expect(';');
        } else if (lx.keyword_ahead("final")) {
            lx.ident();
            do {
                finals.push_back(lx.number());
            } while (lx.try_consume(','));
            lx.expect(';');
        } else {
            state_id from = lx.number();
            lx.expect('-');
            std::string sym = lx.ident();
            lx.expect('-');
            lx.expect('>');
            state_id to = lx.number();
            lx.expect(';');
            if (!alpha.contains(sym)) lx.fail("transition symbol '" + sym + "' not in alphabet");
            ts.push_back({from, alpha.id_of(sym), to});
        }
    }
    if (!saw_states) throw parse_error("automaton block missing 'states'", lx.line, lx.col);
    if (alpha.size() == 0) throw parse_error("automaton block missing 'alphabet'", lx.line, lx.col);
    try {
        return {name, nfa(std::move(alpha), nstates, std::move(ts), std::move(initial),
                          std::move(finals))};
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), lx.line, lx.col);
    }
}

std::string print_automaton_block(const nfa& a, const std::string& name) {
    std::ostringstream os;
    os << "automaton " << name << " {\n  alphabet ";
    for (std::size_t i = 0; i < a.alpha().size(); ++i) {
        if (i) os << ", ";
        os << a.alpha().name_of(static_cast<symbol_id>(i));
    }
    os << ";\n  states " << a.num_states() << ";\n  initial ";
    for (std::size_t i = 0; i < a.initial().size(); ++i) {
        if (i) os << ", ";
        os << a.initial()[i];
    }
    os << ";\n";
    if (!a.finals().empty()) {
        os << "  final ";
        for (std::size_t i = 0; i < a.finals().size(); ++i) {
            if (i) os << ", ";
            os << a.finals()[i];
        }
        os << ";\n";
    }
    for (const auto& t : a.transitions())
        os << "  " << t.from << " -" << a.alpha().name_of(t.sym) << "-> " << t.to << ";\n";
    os << "}\n";
    return os.str();
}

nfa remap_alphabet(const nfa& a, const alphabet& target) {
    std::vector<symbol_id> remap(a.alpha().size());
    for (symbol_id s = 0; s < a.alpha().size(); ++s) {
        const std::string& name = a.alpha().name_of(s);
        if (!target.contains(name))
            throw std::invalid_argument("remap_alphabet: symbol '" + name +
                                        "' missing from target alphabet");
        remap[s] = target.id_of(name);
    }
    std::vector<transition> ts;
    ts.reserve(a.transitions().size());
    for (const auto& t : a.transitions()) ts.push_back({t.from, remap[t.sym], t.to});
    return nfa(target, a.num_states(), std::move(ts), a.initial(), a.finals());
}

std::string to_dot(const nfa& a, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (auto q : a.finals()) os << "  " << q << " [shape=doublecircle];\n";
    for (std::size_t i = 0; i < a.initial().size(); ++i) {
        os << "  __start" << i << " [shape=point];\n  __start" << i << " -> " << a.initial()[i]
           << ";\n";
    }
    for (const auto& t : a.transitions())
        os << "  " << t.from << " -> " << t.to << " [label=\"" << a.alpha().name_of(t.sym)
           << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace rmcfair
