#include "rmcfair/alphabet.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace rmcfair;

TEST_CASE("interning assigns ids in insertion order") {
    alphabet a;
    CHECK(a.intern("T") == 0);
    CHECK(a.intern("B") == 1);
    CHECK(a.intern("Tm") == 2);
    CHECK(a.size() == 3);
    CHECK(a.id_of("B") == 1);
    CHECK(a.name_of(2) == "Tm");
    CHECK(a.contains("T"));
    CHECK(!a.contains("X"));
    CHECK_THROWS_AS(a.id_of("X"), std::invalid_argument);
    CHECK_THROWS_AS((void)a.name_of(3), std::invalid_argument);
}

TEST_CASE("interning is idempotent, empty names are rejected") {
    alphabet a;
    symbol_id t = a.intern("T");
    CHECK(a.intern("T") == t);
    CHECK(a.size() == 1);
    CHECK_THROWS_AS(a.intern(""), std::invalid_argument);
}

TEST_CASE("vector constructor and equality by name sequence") {
    alphabet a({"x", "y"});
    alphabet b;
    b.intern("x");
    b.intern("y");
    CHECK(a == b);
    alphabet c({"y", "x"});
    CHECK(a != c); // order matters: ids would differ
}

TEST_CASE("tuple alphabet uses mixed radix with track 0 most significant") {
    alphabet s = testutil::make_alpha({"T", "B"});
    alphabet g = testutil::make_alpha({"0", "1", "2"});
    alphabet tup = tuple_alphabet({s, g});
    REQUIRE(tup.size() == 6);
    // Expected flat order: T/0 T/1 T/2 B/0 B/1 B/2
    CHECK(tup.name_of(0) == "T/0");
    CHECK(tup.name_of(2) == "T/2");
    CHECK(tup.name_of(3) == "B/0");
    CHECK(tup.name_of(5) == "B/2");

    std::vector<std::size_t> sizes{2, 3};
    for (symbol_id id = 0; id < tup.size(); ++id) {
        auto parts = tuple_unpack(id, sizes);
        CHECK(tuple_pack(parts, sizes) == id);
        CHECK(tup.name_of(id) == s.name_of(parts[0]) + "/" + g.name_of(parts[1]));
    }
}

TEST_CASE("single-track tuple alphabet keeps plain names") {
    alphabet s = testutil::make_alpha({"a", "b"});
    alphabet tup = tuple_alphabet({s});
    CHECK(tup == s);
}

TEST_CASE("oversized tuple alphabets are rejected early") {
    alphabet big;
    for (int i = 0; i < 101; ++i) big.intern("s" + std::to_string(i));
    CHECK_THROWS_AS(tuple_alphabet({big, big}), std::invalid_argument);
}

TEST_CASE("format_word") {
    alphabet s = testutil::make_alpha({"T", "B"});
    CHECK(format_word({0, 1, 0}, s) == "T B T");
    CHECK(format_word({}, s) == "(empty word)");
}
