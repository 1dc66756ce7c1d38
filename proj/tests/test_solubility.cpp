#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "locsol/errors.hpp"
#include "locsol/solubility.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace locsol;
using testing_support::random_vector;
using testing_support::vec;

TEST_CASE("decide_qp examples") {
    CHECK(decide_qp(vec({1, 1, 1}, 2), 2).status == Status::Insoluble);
    CHECK(decide_qp(vec({1, 2, 4}, 3), 3).status == Status::Insoluble);
    CHECK(decide_qp(vec({1, 1, 3}, 2), 2).soluble());
    CHECK(decide_qp(vec({1, 5, 2}, 2), 2).soluble());
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) CHECK(decide_qp(vec({1, -1, 7, 11}, 3), p).soluble());
    CHECK(decide_qp(vec({0, 1, 1}, 2), 2).status == Status::SolubleTrivially);
    CHECK_THROWS_AS(decide_qp(vec({0, 0, 0}, 2), 2), DegenerateInput);
}

TEST_CASE("decide_real examples") {
    CHECK(decide_real(vec({1, 1, 1}, 2)).status == Status::Insoluble);
    CHECK(decide_real(vec({1, -2, 3}, 2)).soluble());
    CHECK(decide_real(vec({-1, -1, -1}, 3)).soluble());
    CHECK(decide_real(vec({-1, -1, 0}, 4)).soluble());
}

TEST_CASE("witnesses certify") {
    std::mt19937_64 rng(3);
    int certified = 0;
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t p = std::array<std::uint64_t, 5>{2, 3, 5, 7, 13}[i % 5];
        const int k = 2 + (i / 5) % 3;
        const auto a = random_vector(rng, 2 + i % 3, k, 300);
        const auto v = decide_qp(a, p);
        if (v.status != Status::Soluble) continue;
        REQUIRE(v.witness.has_value());
        CAPTURE(a.str());
        CHECK(witness_certifies(a, p, *v.witness));
        ++certified;
    }
    CHECK(certified > 100);
}

TEST_CASE("verdicts agree with the lifting-tree oracle") {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t p = std::array<std::uint64_t, 3>{2, 3, 7}[i % 3];
        const int k = 2 + (i / 3) % 2;
        const auto a = random_vector(rng, 2, k, 60);
        const auto ref = oracle::lifting_tree(a, p, certificate_precision(p, k) + 2);
        REQUIRE(ref.verdict != oracle::Verdict::Undecided);
        CAPTURE(a.str());
        CHECK(decide_qp(a, p, {false}).soluble() == (ref.verdict == oracle::Verdict::Soluble));
    }
}

TEST_CASE("verdict is invariant under the projective group") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t p = std::array<std::uint64_t, 4>{2, 3, 5, 7}[i % 4];
        const int k = 2 + i % 2;
        const auto a = random_vector(rng, 2 + i % 2, k, 100);
        const bool base = decide_qp(a, p, {false}).soluble();
        std::vector<Integer> e = a.entries();
        std::shuffle(e.begin(), e.end(), rng);
        CHECK(decide_qp({e, k}, p, {false}).soluble() == base);
        for (auto& x : e) x *= Integer(static_cast<long>(p) * 3 + 1);
        CHECK(decide_qp({e, k}, p, {false}).soluble() == base);
        e[0] *= ipow(Integer(static_cast<long>(p)), static_cast<unsigned>(k));
        CHECK(decide_qp({e, k}, p, {false}).soluble() == base);
    }
}

TEST_CASE("at p = 3 and k = 3 units matter only modulo 9") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> t(-20, 20);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_vector(rng, 2 + i % 2, 3, 200);
        const bool base = decide_qp(a, 3, {false}).soluble();
        std::vector<Integer> e = a.entries();
        for (auto& x : e) x *= Integer(1 + 9 * t(rng));
        bool nonzero = std::all_of(e.begin(), e.end(), [](const Integer& x) { return x != 0; });
        if (!nonzero) continue;
        CAPTURE(a.str());
        CHECK(decide_qp({e, 3}, 3, {false}).soluble() == base);
    }
}

TEST_CASE("cubic forms in seven or more variables are soluble everywhere") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_vector(rng, 6 + i % 2, 3, 1000);
        for (std::uint64_t p : {2, 3, 7, 13}) CHECK(decide_qp(a, p, {false}).soluble());
    }
}

TEST_CASE("relevant primes") {
    CHECK(relevant_primes(vec({1, 1, 1, 1}, 2)) == std::vector<std::uint64_t>{2});
    CHECK(relevant_primes(vec({1, 2, 3}, 3)) == std::vector<std::uint64_t>{2, 3});
    const auto r4 = relevant_primes(vec({1, 1, 5}, 4));
    for (std::uint64_t p : {2, 3, 5}) CHECK(std::find(r4.begin(), r4.end(), p) != r4.end());
    for (std::uint64_t p : {7, 11}) CHECK(decide_qp(vec({1, 1, 5}, 4), p).soluble());
    // Above (k-1)(k-2) but still below the Hasse-Weil range: no F_13 point lifts.
    CHECK_FALSE(decide_qp(vec({1, 1, 5}, 4), 13).soluble());
    CHECK(std::find(r4.begin(), r4.end(), std::uint64_t{13}) != r4.end());
    CHECK_FALSE(decide_qp(vec({1, 1, 1}, 4), 29).soluble());
}

TEST_CASE("everywhere local examples") {
    const auto r1 = decide_everywhere_local(vec({1, 1, 1, 1}, 2));
    CHECK_FALSE(r1.overall);
    CHECK(r1.verdicts.front().place == Place::infinity());
    CHECK(r1.verdicts.front().status == Status::Insoluble);
    CHECK(decide_everywhere_local(vec({1, 1, -1}, 2)).overall);
    CHECK(decide_everywhere_local(vec({1, 1, 1, -3}, 2)).overall);
    CHECK_FALSE(decide_everywhere_local(vec({1, 1, -3}, 2)).overall);
    EverywhereLocalOptions quick;
    quick.stop_at_first_failure = true;
    CHECK(decide_everywhere_local(vec({1, 1, 1, 1}, 2), quick).verdicts.size() == 1);
}
