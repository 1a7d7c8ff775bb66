// Relation algebra is validated against brute-force enumeration of word
// tuples: compose, images, cylindrify and project must agree with their
// set-theoretic definitions on every short word.
#include "rmcfair/relation.hpp"

#include "rmcfair/regex.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace rmcfair;
using namespace testutil;

namespace {

// Random binary relation over alpha x alpha as an automaton on pair letters.
relation random_relation(rng& r, const alphabet& alpha, state_id max_states, double density) {
    alphabet tup = tuple_alphabet({alpha, alpha});
    return relation({alpha, alpha}, random_nfa(r, tup, max_states, density));
}

using pair_set = std::set<std::pair<word, word>>;

// All pairs of r up to length max_len, by brute force on tuple words.
pair_set enumerate_pairs(const relation& r, std::size_t max_len) {
    pair_set out;
    for (std::size_t len = 0; len <= max_len; ++len)
        for (const auto& t : all_words(r.carrier().alpha(), len))
            if (membership(r.carrier(), t)) {
                auto parts = unzip_tuple(r.carrier().alpha(), r.track_alphabets(), t);
                out.insert({parts[0], parts[1]});
            }
    return out;
}

bool same_language(const nfa& a, const nfa& b) {
    return !includes(a, b) && !includes(b, a);
}

} // namespace

TEST_CASE("zip and unzip round trip") {
    alphabet s = make_alpha({"T", "B"});
    alphabet g = make_alpha({"p", "q", "r"});
    alphabet tup = tuple_alphabet({s, g});
    std::vector<word> parts{{0, 1, 1}, {2, 0, 1}};
    word z = zip_tuple(tup, {s, g}, parts);
    REQUIRE(z.size() == 3);
    CHECK(tup.name_of(z[0]) == "T/r");
    CHECK(tup.name_of(z[1]) == "B/p");
    CHECK(unzip_tuple(tup, {s, g}, z) == parts);
    CHECK_THROWS_AS(zip_tuple(tup, {s, g}, {{0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("identity relation relates exactly equal words") {
    alphabet s = make_alpha({"a", "b"});
    relation id = identity_relation(s);
    CHECK(id.contains({{0, 1}, {0, 1}}));
    CHECK(id.contains({{}, {}}));
    CHECK(!id.contains({{0, 1}, {1, 1}}));
    auto pairs = enumerate_pairs(id, 2);
    CHECK(pairs.size() == 1 + 2 + 4); // one pair per word of length <= 2
}

TEST_CASE("convolve pairs the two languages lengthwise") {
    alphabet s = make_alpha({"a", "b"});
    nfa xs = compile_regex("a*", s);
    nfa ys = compile_regex("b* a b*", s);
    relation c = convolve(xs, ys);
    auto pairs = enumerate_pairs(c, 3);
    for (const auto& [u, v] : pairs) {
        CHECK(u.size() == v.size());
        CHECK(membership(xs, u));
        CHECK(membership(ys, v));
    }
    // counts: for length n, |a*| contributes 1 word, |b* a b*| contributes n
    CHECK(pairs.size() == 0 + 1 * 1 + 1 * 2 + 1 * 3);
}

TEST_CASE("cylindrify then project recovers the relation") {
    rng r(3001);
    alphabet s = make_alpha({"a", "b"});
    alphabet g = make_alpha({"p", "q"});
    for (int i = 0; i < 25; ++i) {
        relation rel = random_relation(r, s, 4, 0.25);
        std::vector<alphabet> target{s, g, s};
        relation wide = cylindrify(rel, target, {0, 2});
        relation back = project(wide, {0, 2});
        CHECK(same_language(trim(back).carrier(), trim(rel).carrier()));
        // the middle track really is unconstrained
        auto pairs = enumerate_pairs(rel, 2);
        for (const auto& [u, v] : pairs)
            for (const auto& filler : all_words(g, u.size()))
                CHECK(membership(wide.carrier(),
                                 zip_tuple(wide.carrier().alpha(), target, {u, filler, v})));
    }
}

TEST_CASE("project keeps listed tracks in listed order") {
    alphabet s = make_alpha({"a", "b"});
    relation id = identity_relation(s);
    relation swapped = permute(id, {1, 0});
    CHECK(same_language(trim(swapped).carrier(), trim(id).carrier())); // identity is symmetric
    nfa left = project(convolve(compile_regex("a a", s), compile_regex("b b", s)), {0}).carrier();
    CHECK(membership(left, {0, 0}));
    CHECK(!membership(left, {1, 1}));
}

TEST_CASE("inverse flips every pair") {
    rng r(3002);
    alphabet s = make_alpha({"a", "b"});
    for (int i = 0; i < 25; ++i) {
        relation rel = random_relation(r, s, 4, 0.25);
        relation inv = inverse(rel);
        auto pairs = enumerate_pairs(rel, 3);
        auto flipped = enumerate_pairs(inv, 3);
        pair_set expect;
        for (const auto& [u, v] : pairs) expect.insert({v, u});
        CHECK(flipped == expect);
    }
}

TEST_CASE("compose agrees with its set definition") {
    rng r(3003);
    alphabet s = make_alpha({"a", "b"});
    for (int i = 0; i < 25; ++i) {
        relation p = random_relation(r, s, 3, 0.3);
        relation q = random_relation(r, s, 3, 0.3);
        relation pq = compose(p, q);
        auto pp = enumerate_pairs(p, 3);
        auto qq = enumerate_pairs(q, 3);
        pair_set expect;
        for (const auto& [x, y] : pp)
            for (const auto& [y2, z] : qq)
                if (y == y2) expect.insert({x, z});
        CHECK(enumerate_pairs(pq, 3) == expect);
    }
}

TEST_CASE("compose is associative") {
    rng r(3004);
    alphabet s = make_alpha({"a", "b"});
    for (int i = 0; i < 12; ++i) {
        relation p = random_relation(r, s, 3, 0.3);
        relation q = random_relation(r, s, 3, 0.3);
        relation t = random_relation(r, s, 3, 0.3);
        relation left = compose(compose(p, q), t);
        relation right = compose(p, compose(q, t));
        CHECK(same_language(left.carrier(), right.carrier()));
        CHECK(enumerate_pairs(left, 5) == enumerate_pairs(right, 5));
    }
}

TEST_CASE("post and pre images agree with brute force") {
    rng r(3005);
    alphabet s = make_alpha({"a", "b"});
    for (int i = 0; i < 25; ++i) {
        relation rel = random_relation(r, s, 4, 0.25);
        nfa x = random_nfa(r, s, 4, 0.3);
        nfa post = post_image(rel, x);
        nfa pre = pre_image(rel, x);
        auto pairs = enumerate_pairs(rel, 4);
        std::set<word> expect_post, expect_pre;
        for (const auto& [u, v] : pairs) {
            if (membership(x, u)) expect_post.insert(v);
            if (membership(x, v)) expect_pre.insert(u);
        }
        std::set<word> got_post, got_pre;
        for (std::size_t len = 0; len <= 4; ++len)
            for (const auto& w : all_words(s, len)) {
                if (membership(post, w)) got_post.insert(w);
                if (membership(pre, w)) got_pre.insert(w);
            }
        CHECK(got_post == expect_post);
        CHECK(got_pre == expect_pre);
    }
}

TEST_CASE("identity composes as a neutral element") {
    rng r(3006);
    alphabet s = make_alpha({"a", "b"});
    relation id = identity_relation(s);
    for (int i = 0; i < 10; ++i) {
        relation rel = random_relation(r, s, 4, 0.3);
        CHECK(same_language(trim(compose(id, rel)).carrier(), trim(rel).carrier()));
        CHECK(same_language(trim(compose(rel, id)).carrier(), trim(rel).carrier()));
    }
}

TEST_CASE("signature mismatches are rejected") {
    alphabet s = make_alpha({"a", "b"});
    alphabet g = make_alpha({"p"});
    relation id_s = identity_relation(s);
    relation id_g = identity_relation(g);
    CHECK_THROWS_AS(intersect(id_s, id_g), std::invalid_argument);
    CHECK_THROWS_AS(compose(id_s, id_g), std::invalid_argument);
    CHECK_THROWS_AS(post_image(id_s, universal_nfa(g)), std::invalid_argument);
    CHECK_THROWS_AS(cylindrify(id_s, {s, g}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(inverse(as_relation(universal_nfa(s))), std::invalid_argument);
}
