#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "locsol/arith.hpp"
#include "locsol/errors.hpp"
#include "locsol/padic.hpp"
#include "locsol/solubility.hpp"
#include "support.hpp"

using namespace locsol;
using testing_support::random_vector;
using testing_support::vec;

TEST_CASE("valuation") {
    CHECK(valuation(Integer(12), 2) == 2);
    CHECK(valuation(Integer(7), 3) == 0);
    CHECK(valuation(Integer(-54), 3) == 3);
    CHECK(valuation(std::int64_t{-54}, 3) == 3);
    CHECK_THROWS_AS(valuation(Integer(0), 5), DegenerateInput);
}

TEST_CASE("unit class tables") {
    SUBCASE("p = 3, k = 3") {
        // Residues are kept mod 27; cube classes are already determined mod 9.
        const auto& t = unit_class_table(3, 3);
        CHECK(t.class_count() == 3);
        for (std::uint64_t u = 1; u < t.modulus(); ++u) {
            if (u % 3 == 0) continue;
            CHECK(t.class_of_residue(u) == t.class_of_residue(u % 9));
        }
        CHECK(t.class_of_residue(1) == t.class_of_residue(8));
        CHECK(t.class_of_residue(2) == t.class_of_residue(7));
        CHECK(t.class_of_residue(4) == t.class_of_residue(5));
        CHECK(t.class_of_residue(1) != t.class_of_residue(2));
        CHECK(t.class_of_residue(1) != t.class_of_residue(4));
        CHECK(t.class_of_residue(2) != t.class_of_residue(4));
    }
    SUBCASE("p = 2, k = 2") {
        const auto& t = unit_class_table(2, 2);
        CHECK(t.modulus() == 8);
        CHECK(t.class_count() == 4);
        for (std::uint64_t u : {1, 3, 5, 7}) CHECK(t.representative(t.class_of_residue(u)) == u);
    }
    SUBCASE("p = 5, k = 2") {
        const auto& t = unit_class_table(5, 2);
        CHECK(t.class_count() == 2);
        CHECK(t.class_of_residue(1) == t.class_of_residue(4));
        CHECK(t.class_of_residue(2) != t.class_of_residue(1));
    }
}

TEST_CASE("class count is gcd(k, p - 1) p^v_p(k), doubled at p = 2 for even k") {
    for (std::uint64_t p : primes_below(101)) {
        for (int k = 2; k <= 5; ++k) {
            int expect = static_cast<int>(std::gcd<std::uint64_t>(k, p - 1));
            int m = k;
            while (m % static_cast<int>(p) == 0) {
                expect *= static_cast<int>(p);
                m /= static_cast<int>(p);
            }
            if (p == 2 && k % 2 == 0) expect *= 2;
            CAPTURE(p);
            CAPTURE(k);
            CHECK(unit_class_table(p, k).class_count() == expect);
        }
    }
}

TEST_CASE("class multiplication is a group law on class 0") {
    for (auto [p, k] : {std::pair<std::uint64_t, int>{2, 2}, {3, 3}, {7, 3}, {13, 4}}) {
        const auto& t = unit_class_table(p, k);
        for (int a = 0; a < t.class_count(); ++a) {
            CHECK(t.multiply(a, 0) == a);
            for (int b = 0; b < t.class_count(); ++b) CHECK(t.multiply(a, b) == t.multiply(b, a));
        }
    }
}

TEST_CASE("normalize examples") {
    auto nf = normalize(vec({4, 1, 8}, 2), 2);
    CHECK(nf.reduced_exps.exps == std::vector<int>{0, 0, 1});
    CHECK(nf.class_ids == std::vector<int>{0, 0, 0});
    CHECK(nf.residue_precision == 5);

    CHECK(normalize(vec({1, 3, 9}, 3), 3).reduced_exps.exps == std::vector<int>{0, 1, 2});
    CHECK(normalize(vec({27, 27, 27}, 3), 3).reduced_exps.exps == std::vector<int>{0, 0, 0});
    CHECK_THROWS_AS(normalize(vec({1, 0, 2}, 2), 3), DegenerateInput);
}

TEST_CASE("classify_type examples") {
    CHECK(classify_type(vec({1, 2, 3, 5}, 2), 5) == TypeTag::I);
    CHECK(classify_type(vec({1, -4, 10}, 2), 5) == TypeTag::II);
    CHECK(classify_type(vec({1, -2, 5}, 2), 5) == TypeTag::III);
    CHECK(decide_qp(vec({1, -4, 10}, 2), 5).soluble());
    CHECK_FALSE(decide_qp(vec({1, -2, 5}, 2), 5).soluble());
}

TEST_CASE("normal form preserves solubility") {
    std::mt19937_64 rng(7);
    const std::pair<std::uint64_t, int> cases[] = {{2, 2}, {3, 2}, {5, 2}, {3, 3}, {7, 3}, {2, 3}, {5, 4}};
    for (int i = 0; i < 1000; ++i) {
        const auto [p, k] = cases[i % std::size(cases)];
        const auto a = random_vector(rng, 2 + i % 2, k, 500);
        const auto nf = normalize(a, p);
        CAPTURE(a.str());
        CHECK(decide_qp(a, p, {false}).soluble() == decide_qp(nf.as_vector(), p, {false}).soluble());
        CHECK(valuations(nf.as_vector(), p).equivalent(valuations(a, p)));
    }
}

TEST_CASE("type II forms are soluble; type III forms are not when p does not divide k") {
    std::mt19937_64 rng(11);
    int seen2 = 0, seen3 = 0;
    for (int i = 0; i < 3000; ++i) {
        const std::uint64_t p = std::array<std::uint64_t, 4>{3, 5, 7, 13}[i % 4];
        const int k = 2 + (i / 4) % 3;
        const auto a = random_vector(rng, 2 + i % 2, k, 400);
        const TypeTag t = classify_type(a, p);
        CAPTURE(a.str());
        CAPTURE(p);
        if (t == TypeTag::II) {
            ++seen2;
            CHECK(decide_qp(a, p, {false}).soluble());
        } else if (t == TypeTag::III && std::gcd<std::uint64_t>(p, k) == 1) {
            ++seen3;
            CHECK_FALSE(decide_qp(a, p, {false}).soluble());
        }
    }
    CHECK(seen2 > 20);
    CHECK(seen3 > 20);
}
