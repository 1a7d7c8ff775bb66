// Shared lexing and field machinery for the block text formats (system and
// proof files): identifiers, hyphenated names, let-macros, and field values
// that are either a regex or an inline automaton block.
#pragma once

#include "rmcfair/nfa.hpp"
#include "rmcfair/regex.hpp"

#include <cctype>
#include <map>
#include <string>

namespace rmcfair::detail {

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '/';
}

struct spec_lexer {
    const std::string& text;
    std::size_t pos = 0, line = 1, col = 1;

    void advance() {
        if (text[pos] == '\n') ++line, col = 1;
        else ++col;
        ++pos;
    }
    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, line, col); }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
    bool try_consume(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) advance();
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }
    // System names may be hyphenated; '-' stays out of ident_char so that
    // regex text and automaton arrows lex unchanged.
    std::string name_token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (ident_char(text[pos]) || text[pos] == '-')) advance();
        if (pos == start) fail("expected name");
        return text.substr(start, pos - start);
    }
    bool keyword_ahead(const std::string& kw) {
        skip_ws();
        if (text.compare(pos, kw.size(), kw) != 0) return false;
        std::size_t after = pos + kw.size();
        return after >= text.size() || !ident_char(text[after]);
    }
    // Raw text up to (not including) the next ';' at the current level.
    std::string until_semicolon() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != ';' && text[pos] != '}') advance();
        if (pos >= text.size() || text[pos] != ';') fail("expected ';' terminating the field");
        return text.substr(start, pos - start);
    }
    // Consumes "automaton ... }" starting at the keyword; returns the span.
    // Comments inside the block may contain braces without ending it.
    std::string automaton_span() {
        skip_ws();
        std::size_t start = pos;
        bool seen_open = false;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') advance();
                continue;
            }
            if (c == '{') seen_open = true;
            if (c == '}') {
                if (!seen_open) fail("expected '{' of automaton block");
                advance();
                return text.substr(start, pos - start);
            }
            advance();
        }
        fail(seen_open ? "unterminated automaton block" : "expected '{' of automaton block");
    }
};

// Replaces whole-identifier macro occurrences by their parenthesized bodies.
inline std::string expand_macros(const std::string& text,
                                 const std::map<std::string, std::string>& macros) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (ident_char(text[i])) {
            std::size_t start = i;
            while (i < text.size() && ident_char(text[i])) ++i;
            std::string tok = text.substr(start, i - start);
            auto it = macros.find(tok);
            if (it != macros.end()) out += "( " + it->second + " )";
            else out += tok;
        } else {
            out += text[i++];
        }
    }
    return out;
}

inline nfa parse_field_value(spec_lexer& lx, const alphabet& field_alpha,
                             const std::map<std::string, std::string>& macros) {
    if (lx.keyword_ahead("automaton")) {
        std::string span = lx.automaton_span();
        lx.expect(';');
        nfa machine = parse_automaton_block(span).machine;
        try {
            return remap_alphabet(machine, field_alpha);
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what(), lx.line, lx.col);
        }
    }
    std::size_t at_line = lx.line, at_col = lx.col;
    std::string body = lx.until_semicolon();
    lx.expect(';');
    try {
        return compile_regex(expand_macros(body, macros), field_alpha);
    } catch (const parse_error& e) {
        // re-anchor at the field start: positions inside the expanded text
        // would mislead
        throw parse_error(std::string(e.what()) + " (in field starting here)", at_line, at_col);
    }
}

} // namespace rmcfair::detail
