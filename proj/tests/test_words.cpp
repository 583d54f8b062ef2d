#include <random>

#include "doctest.h"
#include "sg/words.hpp"

using namespace sg;

namespace {

std::vector<Letter> letters(std::initializer_list<const char*> names) {
    std::vector<Letter> out;
    for (const char* s : names) {
        char c = s[0];
        bool inv = c >= 'A' && c <= 'Z';
        out.push_back({(inv ? c - 'A' : c - 'a') + 1, inv});
    }
    return out;
}

ReducedWord random_word(int rank, int len, std::mt19937_64& rng) {
    std::vector<Letter> raw;
    for (int i = 0; i < len; ++i)
        raw.push_back(slot_letter(static_cast<int>(rng() % (2 * rank))));
    return reduce(rank, raw);
}

}  // namespace

TEST_CASE("free reduction") {
    CHECK(reduce(2, letters({"a", "A", "b"})).letters == letters({"b"}));
    CHECK(reduce(2, {}).empty());
    CHECK(reduce(2, letters({"a", "b", "B", "a"})).letters == letters({"a", "a"}));
    // idempotence on random inputs
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        ReducedWord w = random_word(2, 12, rng);
        CHECK(reduce(2, w.letters) == w);
    }
}

TEST_CASE("concat and inverse") {
    auto w = [](const char* s) { return parse_word(2, s); };
    CHECK(concat(w("ab"), w("Ba")) == w("aa"));
    CHECK(concat(w("aba"), w("Ab")) == w("abb"));
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        ReducedWord x = random_word(2, 10, rng);
        ReducedWord y = random_word(2, 10, rng);
        ReducedWord z = random_word(2, 10, rng);
        CHECK(concat(x, inverse(x)).empty());
        CHECK(concat(concat(x, y), z) == concat(x, concat(y, z)));
        CHECK(concat(x, y).length() <= x.length() + y.length());
    }
    CHECK_THROWS_AS(concat(parse_word(2, "a"), parse_word(3, "a")), std::invalid_argument);
}

TEST_CASE("sphere and ball sizes") {
    CHECK(sphere_size(2, 0) == 1);
    CHECK(sphere_size(2, 1) == 4);
    CHECK(sphere_size(2, 3) == 36);
    CHECK(sphere_size(3, 7) == 93750);
    // past the 64-bit overflow point
    CHECK(sphere_size(2, 50) == Int("957197316922470118360332"));
    CHECK(ball_size(2, 0) == 1);
    CHECK(ball_size(2, 1) == 5);
    CHECK(ball_size(2, 2) == 17);
    CHECK(ball_size(2, 3) == 53);
    CHECK(ball_size(2, 12) == 1062881);
}

TEST_CASE("cylinder measures") {
    CHECK(cylinder_measure(2, parse_word(2, "a")) == Rat(1, 4));
    CHECK(cylinder_measure(2, parse_word(2, "e")) == 1);
    CHECK(cylinder_measure(2, parse_word(2, "ab")) == Rat(1, 12));
    // cylinders of each length partition the boundary
    for (int n : {2, 3})
        for (int r = 1; r <= 6; ++r) {
            Rat total = 0;
            for (const ReducedWord& w : shortlex_enumerate(n, r))
                if (w.length() == r) total += cylinder_measure(n, w);
            CHECK(total == 1);
        }
}

TEST_CASE("shortlex enumeration") {
    auto zero = shortlex_enumerate(2, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].empty());

    auto one = shortlex_enumerate(2, 1);
    REQUIRE(one.size() == 5);
    CHECK(one[1] == parse_word(2, "a"));
    CHECK(one[2] == parse_word(2, "A"));
    CHECK(one[3] == parse_word(2, "b"));
    CHECK(one[4] == parse_word(2, "B"));

    CHECK(shortlex_enumerate(2, 2).size() == 17);
    for (int r = 0; r <= 8; ++r) {
        Int expect = ball_size(2, r);
        CHECK(Int(shortlex_enumerate(2, r).size()) == expect);
    }
    // strictly shortlex-sorted, all reduced
    auto all = shortlex_enumerate(2, 4);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(reduce(2, all[i].letters) == all[i]);
        if (i == 0) continue;
        const auto &p = all[i - 1], &q = all[i];
        bool less = p.length() != q.length() ? p.length() < q.length()
                                             : p.letters < q.letters;
        CHECK(less);
    }
}

TEST_CASE("word parsing") {
    CHECK(parse_word(2, "bAb").letters == letters({"b", "A", "b"}));
    CHECK(parse_word(2, "").empty());
    CHECK(parse_word(2, "e").empty());
    CHECK(parse_word(2, "aA").empty());  // parser reduces
    CHECK(word_str(parse_word(2, "bAb")) == "bAb");
    CHECK(word_str(parse_word(2, "e")) == "e");
    CHECK_THROWS(parse_word(2, "c"));   // beyond rank
    CHECK_THROWS(parse_word(2, "a!"));  // not a letter
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        ReducedWord w = random_word(3, 9, rng);
        CHECK(parse_word(3, word_str(w)) == w);
    }
}
