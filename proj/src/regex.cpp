#include "rmcfair/regex.hpp"

#include <cctype>
#include <vector>

namespace rmcfair {

namespace {

enum class node_kind { eps, letter, cat, alt, star, plus, opt };

struct regex_node {
    node_kind kind;
    symbol_id sym = 0;   // letter: alphabet symbol
    int pos = -1;        // letter: Glushkov position
    int left = -1, right = -1;
};

struct token {
    enum class kind { ident, lparen, rparen, bar, star, plus, question, end } k;
    std::string text;
    std::size_t line, col;
};

std::vector<token> lex(const std::string& text) {
    std::vector<token> toks;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '/';
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++i, ++line, col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i, ++col;
            continue;
        }
        std::size_t tl = line, tc = col;
        switch (c) {
        case '(': toks.push_back({token::kind::lparen, "(", tl, tc}); ++i, ++col; continue;
        case ')': toks.push_back({token::kind::rparen, ")", tl, tc}); ++i, ++col; continue;
        case '|': toks.push_back({token::kind::bar, "|", tl, tc}); ++i, ++col; continue;
        case '*': toks.push_back({token::kind::star, "*", tl, tc}); ++i, ++col; continue;
        case '+': toks.push_back({token::kind::plus, "+", tl, tc}); ++i, ++col; continue;
        case '?': toks.push_back({token::kind::question, "?", tl, tc}); ++i, ++col; continue;
        default: break;
        }
        if (!ident_char(c))
            throw parse_error(std::string("unexpected character '") + c + "' in expression", tl,
                              tc);
        std::size_t start = i;
        while (i < text.size() && ident_char(text[i])) ++i, ++col;
        toks.push_back({token::kind::ident, text.substr(start, i - start), tl, tc});
    }
    toks.push_back({token::kind::end, "", line, col});
    return toks;
}

struct parser {
    const std::vector<token>& toks;
    const alphabet& alpha;
    std::size_t at = 0;
    std::vector<regex_node> nodes;
    int num_positions = 0;
    std::vector<symbol_id> pos_sym; // Glushkov position -> symbol

    const token& peek() const { return toks[at]; }

    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg, peek().line, peek().col);
    }

    int make(regex_node n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size() - 1);
    }

    static bool starts_primary(token::kind k) {
        return k == token::kind::ident || k == token::kind::lparen;
    }

    int parse_alt() {
        int lhs = parse_cat();
        while (peek().k == token::kind::bar) {
            ++at;
            int rhs = parse_cat();
            lhs = make({node_kind::alt, 0, -1, lhs, rhs});
        }
        return lhs;
    }

    int parse_cat() {
        if (!starts_primary(peek().k)) fail("expected expression");
        int lhs = parse_postfix();
        while (starts_primary(peek().k)) {
            int rhs = parse_postfix();
            lhs = make({node_kind::cat, 0, -1, lhs, rhs});
        }
        return lhs;
    }

    int parse_postfix() {
        int e = parse_primary();
        for (;;) {
            switch (peek().k) {
            case token::kind::star: ++at; e = make({node_kind::star, 0, -1, e, -1}); break;
            case token::kind::plus: ++at; e = make({node_kind::plus, 0, -1, e, -1}); break;
            case token::kind::question: ++at; e = make({node_kind::opt, 0, -1, e, -1}); break;
            default: return e;
            }
        }
    }

    int parse_primary() {
        if (peek().k == token::kind::lparen) {
            ++at;
            if (peek().k == token::kind::rparen) { // () is the empty word
                ++at;
                return make({node_kind::eps, 0, -1, -1, -1});
            }
            int e = parse_alt();
            if (peek().k != token::kind::rparen) fail("expected ')'");
            ++at;
            return e;
        }
        if (peek().k != token::kind::ident) fail("expected symbol or '('");
        const token& t = peek();
        if (!alpha.contains(t.text))
            throw parse_error("unknown symbol '" + t.text +
                                  "' (symbols must be separated by spaces)",
                              t.line, t.col);
        ++at;
        int pos = num_positions++;
        pos_sym.push_back(alpha.id_of(t.text));
        return make({node_kind::letter, alpha.id_of(t.text), pos, -1, -1});
    }
};

struct glushkov_info {
    bool nullable;
    std::vector<int> first, last;
};

void append_pairs(std::vector<std::vector<int>>& follow, const std::vector<int>& from,
                  const std::vector<int>& to) {
    for (int p : from)
        for (int q : to) follow[p].push_back(q);
}

glushkov_info analyze(const std::vector<regex_node>& nodes, int root,
                      std::vector<std::vector<int>>& follow) {
    const regex_node& n = nodes[root];
    switch (n.kind) {
    case node_kind::eps: return {true, {}, {}};
    case node_kind::letter: return {false, {n.pos}, {n.pos}};
    case node_kind::alt: {
        auto l = analyze(nodes, n.left, follow);
        auto r = analyze(nodes, n.right, follow);
        l.nullable = l.nullable || r.nullable;
        l.first.insert(l.first.end(), r.first.begin(), r.first.end());
        l.last.insert(l.last.end(), r.last.begin(), r.last.end());
        return l;
    }
    case node_kind::cat: {
        auto l = analyze(nodes, n.left, follow);
        auto r = analyze(nodes, n.right, follow);
        append_pairs(follow, l.last, r.first);
        glushkov_info out;
        out.nullable = l.nullable && r.nullable;
        out.first = l.first;
        if (l.nullable) out.first.insert(out.first.end(), r.first.begin(), r.first.end());
        out.last = r.last;
        if (r.nullable) out.last.insert(out.last.end(), l.last.begin(), l.last.end());
        return out;
    }
    case node_kind::star: {
        auto c = analyze(nodes, n.left, follow);
        append_pairs(follow, c.last, c.first);
        c.nullable = true;
        return c;
    }
    case node_kind::plus: {
        auto c = analyze(nodes, n.left, follow);
        append_pairs(follow, c.last, c.first);
        return c;
    }
    case node_kind::opt: {
        auto c = analyze(nodes, n.left, follow);
        c.nullable = true;
        return c;
    }
    }
    throw std::logic_error("unreachable regex node kind");
}

} // namespace

nfa compile_regex(const std::string& text, const alphabet& alpha) {
    auto toks = lex(text);
    parser p{toks, alpha, 0, {}, 0, {}};
    int root = p.parse_alt();
    if (p.peek().k != token::kind::end) p.fail("unexpected trailing input");
    std::vector<std::vector<int>> follow(p.num_positions);
    glushkov_info info = analyze(p.nodes, root, follow);
    // State 0 is the start; Glushkov position i becomes state i+1.
    std::vector<transition> ts;
    for (int q : info.first)
        ts.push_back({0, p.pos_sym[q], static_cast<state_id>(q + 1)});
    for (int from = 0; from < p.num_positions; ++from)
        for (int q : follow[from])
            ts.push_back({static_cast<state_id>(from + 1), p.pos_sym[q],
                          static_cast<state_id>(q + 1)});
    std::vector<state_id> finals;
    if (info.nullable) finals.push_back(0);
    for (int q : info.last) finals.push_back(static_cast<state_id>(q + 1));
    return nfa(alpha, static_cast<state_id>(p.num_positions + 1), std::move(ts), {0},
               std::move(finals));
}

} // namespace rmcfair
