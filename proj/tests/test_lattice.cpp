#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>

#include "brauer/lattice.hpp"

using namespace brauer;

namespace {

PermutationLattice L(std::initializer_list<int> w) { return PermutationLattice(Word(w)); }

// Every word over {±1..±f}, filtered by the validator. Independent of the
// depth-first enumerator.
std::map<Shape, std::vector<Word>> brute_force(int f) {
    std::map<Shape, std::vector<Word>> out;
    Word w(static_cast<std::size_t>(f));
    std::function<void(int)> rec = [&](int k) {
        if (k == f) {
            if (auto v = validate_word(w))
                out[v.lattice->shape()].push_back(w);
            return;
        }
        for (int a = -f; a <= f; ++a) {
            if (a == 0)
                continue;
            w[static_cast<std::size_t>(k)] = a;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

// Path count in the Bratteli diagram: add a box or remove one at each level.
std::map<Shape, std::uint64_t> bratteli_level(int f) {
    std::map<Shape, std::uint64_t> level{{Shape{}, 1}};
    for (int k = 0; k < f; ++k) {
        std::map<Shape, std::uint64_t> next;
        for (const auto &[s, n] : level) {
            auto rows = s.rows();
            for (std::size_t r = 0; r <= rows.size(); ++r) {
                auto t = rows;
                if (r == t.size())
                    t.push_back(1);
                else
                    ++t[r];
                if (r == 0 || t[r] <= t[r - 1])
                    next[Shape(t)] += n;
            }
            for (std::size_t r = 0; r < rows.size(); ++r) {
                auto t = rows;
                --t[r];
                if (r + 1 < t.size() && t[r] < t[r + 1])
                    continue;
                if (t[r] == 0)
                    t.pop_back();
                next[Shape(t)] += n;
            }
        }
        level = std::move(next);
    }
    return level;
}

std::uint64_t double_factorial(int n) {
    std::uint64_t r = 1;
    for (int k = n; k > 1; k -= 2)
        r *= static_cast<std::uint64_t>(k);
    return r;
}

} // namespace

TEST_CASE("shape parsing and accessors") {
    CHECK(parse_shape("[2,1]") == Shape({2, 1}));
    CHECK(parse_shape(" [ 3 , 1 ] ") == Shape({3, 1}));
    CHECK(parse_shape("[]").empty());
    CHECK(Shape({2, 1}).to_string() == "[2,1]");
    CHECK(Shape{}.to_string() == "[]");
    CHECK_THROWS_AS(parse_shape("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_shape("[0]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_shape("2,1"), std::invalid_argument);
    CHECK(Shape({3, 1}).conjugate() == Shape({2, 1, 1}));
    CHECK(Shape({2, 1}).col(1) == 2);
    CHECK(Shape({2, 1}).row(3) == 0);
    CHECK(Shape({1}).in_upsilon(3));
    CHECK_FALSE(Shape({2}).in_upsilon(3));
    CHECK(upsilon(3).size() == 4);
}

TEST_CASE("word validation") {
    auto ok = validate_word(Word{1, 1, 2, -1, 1, -2, 2});
    REQUIRE(ok);
    CHECK(ok.lattice->shape() == Shape({2, 1}));
    CHECK(ok.lattice->order() == 7);

    auto bad = validate_word(Word{1, 2, 1, -1, 2, 1, 3});
    CHECK_FALSE(bad);
    CHECK(bad.failed_prefix == 5);

    auto empty = validate_word(Word{});
    REQUIRE(empty);
    CHECK(empty.lattice->order() == 0);
    CHECK(empty.lattice->shape().empty());

    CHECK_FALSE(validate_word(Word{-1}));
    CHECK_FALSE(validate_word(Word{1, 0}));
    CHECK_THROWS_AS(PermutationLattice(Word{2}), std::invalid_argument);
}

TEST_CASE("prefixes") {
    const auto w = L({1, 1, 2, -1, 1, -2, 2});
    CHECK(prefix(w, 0).order() == 0);
    CHECK(prefix(w, 7) == w);
    const auto p4 = prefix(w, 4);
    CHECK(p4 == L({1, 1, 2, -1}));
    CHECK(p4.shape() == Shape({1, 1}));
    CHECK_THROWS_AS(prefix(w, 8), std::out_of_range);
    CHECK_THROWS_AS(prefix(w, -1), std::out_of_range);
}

TEST_CASE("transpose") {
    CHECK(transpose(L({1, 1})) == L({1, 2}));
    CHECK(transpose(L({1, -1})) == L({1, -1}));
    CHECK(transpose(L({1, 2})) == L({1, 1}));
    for (int f = 0; f <= 6; ++f)
        for (const auto &l : upsilon(f))
            for (const auto &w : enumerate_lattices(f, l)) {
                const auto t = transpose(w);
                CHECK(transpose(t) == w);
                CHECK(t.shape() == w.shape().conjugate());
            }
}

TEST_CASE("enumeration matches exhaustive search") {
    CHECK(enumerate_lattices(2, Shape{}) == std::vector{L({1, -1})});
    CHECK(enumerate_lattices(3, Shape({1})) == std::vector{L({1, -1, 1}), L({1, 1, -1}), L({1, 2, -2})});
    CHECK(enumerate_lattices(4, Shape({2})).size() == 6);
    CHECK(enumerate_lattices(3, Shape({2})).empty());
    for (int f = 1; f <= 5; ++f) {
        const auto all = brute_force(f);
        std::size_t total = 0;
        for (const auto &[shape, words] : all) {
            auto got = enumerate_lattices(f, shape);
            std::vector<Word> got_words;
            for (const auto &w : got)
                got_words.push_back(w.word());
            auto want = words;
            std::sort(want.begin(), want.end());
            CHECK(got_words == want);
            total += got.size();
        }
        std::size_t listed = 0;
        for (const auto &l : upsilon(f))
            listed += enumerate_lattices(f, l).size();
        CHECK(listed == total);
    }
}

TEST_CASE("dimension formula") {
    CHECK(dimension(4, Shape({2})) == 6);
    CHECK(dimension(3, Shape({1})) == 3);
    CHECK(dimension(3, Shape({2})) == 0);
    CHECK(symmetric_group_dimension(Shape({3, 2})) == 5);
    std::uint64_t sum3 = 0;
    for (const auto &l : upsilon(3))
        sum3 += dimension(3, l) * dimension(3, l);
    CHECK(sum3 == 15);
    for (int f = 0; f <= 7; ++f) {
        const auto paths = bratteli_level(f);
        std::uint64_t sum = 0;
        for (const auto &l : upsilon(f)) {
            const auto d = dimension(f, l);
            CHECK(d == paths.at(l));
            if (f <= 6)
                CHECK(enumerate_lattices(f, l).size() == d);
            sum += d * d;
        }
        CHECK(sum == double_factorial(2 * f - 1));
    }
}

TEST_CASE("lattice order") {
    CHECK(compare_lattices(L({1, -1, 1}), L({1, 1, -1})) == std::strong_ordering::less);
    CHECK(compare_lattices(L({1, 1, -1}), L({1, 1, -1})) == std::strong_ordering::equal);
    CHECK_THROWS_AS(compare_lattices(L({1, 1}), L({1, -1})), std::invalid_argument);
    for (int f = 1; f <= 5; ++f)
        for (const auto &l : upsilon(f)) {
            const auto ws = enumerate_lattices(f, l);
            for (std::size_t a = 0; a < ws.size(); ++a)
                for (std::size_t b = 0; b < ws.size(); ++b) {
                    const auto ab = compare_lattices(ws[a], ws[b]);
                    const auto ba = compare_lattices(ws[b], ws[a]);
                    CHECK((ab == std::strong_ordering::less) == (ba == std::strong_ordering::greater));
                    CHECK((ab == std::strong_ordering::less) == (a < b));
                }
        }
}

TEST_CASE("lattice serialization") {
    const auto w = L({1, 1, 2, -1, 1, -2, 2});
    CHECK(w.to_string() == "(1,1,2,-1,1,-2,2)");
    CHECK(parse_lattice(w.to_string()) == w);
    CHECK(PermutationLattice{}.to_string() == "()");
    CHECK_THROWS_AS(parse_lattice("(1,2,1,-1,2,1,3)"), std::invalid_argument);
}
