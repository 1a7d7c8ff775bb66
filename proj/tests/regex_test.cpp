// The compiled position automaton is checked against an independently
// written parser and substring matcher (regex_oracle.hpp) on hand-picked and
// randomly generated expressions.
#include "rmcfair/regex.hpp"

#include "regex_oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace rmcfair;
using namespace testutil;

namespace {

// Compare compiled automaton vs oracle on every word up to max_len.
void check_against_oracle(const std::string& expr, const alphabet& alpha, std::size_t max_len) {
    nfa m = compile_regex(expr, alpha);
    for (std::size_t len = 0; len <= max_len; ++len)
        for (const auto& w : all_words(alpha, len)) {
            bool got = membership(m, w);
            bool want = regex_oracle::matches(expr, alpha, w);
            if (got != want)
                FAIL("mismatch on '" << expr << "' for word '" << format_word(w, alpha)
                                     << "': compiled=" << got << " oracle=" << want);
        }
}

// Random expression text over the given names. Returned expressions always
// parse: they are produced from a grammar-directed generator.
std::string random_expr(rng& r, const std::vector<std::string>& names, int depth) {
    if (depth <= 0 || r.below(10) < 3) {
        if (r.below(12) == 0) return "()";
        return names[r.below(static_cast<std::uint32_t>(names.size()))];
    }
    switch (r.below(6)) {
    case 0: return "(" + random_expr(r, names, depth - 1) + " | " + random_expr(r, names, depth - 1) + ")";
    case 1: return "(" + random_expr(r, names, depth - 1) + " " + random_expr(r, names, depth - 1) + ")";
    case 2: return "(" + random_expr(r, names, depth - 1) + ")*";
    case 3: return "(" + random_expr(r, names, depth - 1) + ")+";
    case 4: return "(" + random_expr(r, names, depth - 1) + ")?";
    default:
        return random_expr(r, names, depth - 1) + " " + random_expr(r, names, depth - 1);
    }
}

} // namespace

TEST_CASE("hand-picked expressions agree with the oracle") {
    alphabet ab = make_alpha({"a", "b"});
    const std::vector<std::string> exprs = {
        "a",
        "b",
        "()",
        "a b",
        "a | b",
        "a*",
        "a+",
        "a?",
        "(a | b)*",
        "(a | b)+",
        "a* b*",
        "(a b)*",
        "(a b)+ a?",
        "a (a | b)* b",
        "(a | ()) b",
        "((a))",
        "(a? b?)*",
        "a a a",
        "(a | b) (a | b) (a | b)",
        "(a+ | b+)",
        "(a b a)+",
        "a* | b*",
        "(a | b)? (a | b)?",
        "((a | b) (a | b))*",
        "a+ b+ a+",
        "(() | a)*",
        "((a*)*)*",
        "(a+)+",
        "(a?)+",
        "b (a b)*",
        "(a b | b a)*",
        "a (b a)* b?",
        "((a | b) a*)+",
        "(b | a b)* a?",
        "a? a? a? b",
        "(a a | b b)+",
        "b* (a b* a b*)*",   // even number of a's
        "(b | a b* a)*",     // also even a's, written differently
        "a (a | b)+",
        "(a | b) b*",
    };
    for (const auto& e : exprs) check_against_oracle(e, ab, 6);
}

TEST_CASE("multi-character and tuple symbol names") {
    alphabet sys = make_alpha({"T", "B", "Tm", "Bm"});
    check_against_oracle("B* T B*", sys, 4);
    check_against_oracle("(T | B)* (Tm | Bm) (T | B)*", sys, 4);
    check_against_oracle("(T | B)+", sys, 4);

    alphabet pairs = make_alpha({"T/T", "T/B", "B/T", "B/B"});
    check_against_oracle("(T/T | B/B)* T/B (T/T | B/B)*", pairs, 4);
}

TEST_CASE("glushkov automaton has one state per letter occurrence") {
    alphabet ab = make_alpha({"a", "b"});
    CHECK(compile_regex("a b a", ab).num_states() == 4);
    CHECK(compile_regex("(a | b)* a", ab).num_states() == 4);
    CHECK(compile_regex("()", ab).num_states() == 1);
}

TEST_CASE("random expressions agree with the oracle") {
    rng r(2001);
    alphabet ab = make_alpha({"a", "b"});
    alphabet abc = make_alpha({"a", "b", "c"});
    int cases = 0;
    for (int i = 0; i < 120; ++i, ++cases)
        check_against_oracle(random_expr(r, {"a", "b"}, 4), ab, 5);
    for (int i = 0; i < 40; ++i, ++cases)
        check_against_oracle(random_expr(r, {"a", "b", "c"}, 3), abc, 4);
    CHECK(cases == 160);
}

TEST_CASE("empty word expression accepts only the empty word") {
    alphabet ab = make_alpha({"a", "b"});
    nfa m = compile_regex("()", ab);
    CHECK(membership(m, {}));
    CHECK(!membership(m, {0}));
    CHECK(!membership(m, {1}));
}

TEST_CASE("syntax errors carry positions and name the problem") {
    alphabet ab = make_alpha({"a", "b"});
    CHECK_THROWS_AS(compile_regex("a |", ab), parse_error);
    CHECK_THROWS_AS(compile_regex("(a", ab), parse_error);
    CHECK_THROWS_AS(compile_regex("a)", ab), parse_error);
    CHECK_THROWS_AS(compile_regex("*", ab), parse_error);
    CHECK_THROWS_AS(compile_regex("", ab), parse_error);
    CHECK_THROWS_AS(compile_regex("a $ b", ab), parse_error);
    try {
        compile_regex("a c", ab);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("unknown symbol 'c'") != std::string::npos);
    }
}

TEST_CASE("juxtaposed symbol names are rejected with a hint") {
    // B*TB* is a classic typo for B* T B*: TB lexes as one unknown name.
    alphabet sys = make_alpha({"T", "B"});
    try {
        compile_regex("B*TB*", sys);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("TB") != std::string::npos);
        CHECK(msg.find("separated by spaces") != std::string::npos);
    }
}
