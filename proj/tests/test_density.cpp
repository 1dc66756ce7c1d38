#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "locsol/density.hpp"
#include "locsol/errors.hpp"
#include "locsol/solubility.hpp"
#include "support.hpp"

using namespace locsol;
using testing_support::random_vector;

namespace {
Rational q(long a, long b) { return Rational(a, b); }
}  // namespace

TEST_CASE("kappa") {
    CHECK(kappa(2, 2, 2) == q(64, 27));
    CHECK(kappa(3, 2, 2) == q(256, 81));
    CHECK(kappa(2, 3, 3) == rpow(q(27, 26), 3));
}

TEST_CASE("exact local densities") {
    CHECK(rho_p_exact(2, 2, 2).value == q(7, 12));
    CHECK(rho_p_exact(3, 2, 2).value == q(1231, 1296));
    CHECK(rho_p_exact(2, 3, 3).value == q(13831, 19773));
    CHECK(rho_p_exact(3, 3, 3).value == q(6391, 6591));
    CHECK(rho_p_exact(2, 2, 2).route == Route::Enumeration);
}

TEST_CASE("closed forms") {
    CHECK(rho_p_closed_form(2, 2, 5).value == q(19, 24));
    CHECK(rho_p_exact(2, 2, 5).value == q(19, 24));
    const Rational r = 1 - q(1, 7);
    const Rational c7 = r / (1 - q(1, 343));
    const Rational want = 1 - q(8, 3) * q(1, 49) * (1 + q(1, 7)) * (1 + q(1, 7)) * c7 * c7 * c7;
    CHECK(rho_p_closed_form(3, 3, 7).value == want);
    CHECK(rho_p_closed_form(3, 3, 5).value == 1);
    for (int n = 4; n <= 7; ++n) CHECK(rho_p_closed_form(n, 2, 11).value == 1);
    CHECK_THROWS_AS(rho_p_closed_form(3, 5, 7), UnsupportedPair);
}

TEST_CASE("generic sum") {
    CHECK(rho_p_generic_sum(2, 2, 5).value == q(19, 24));
    CHECK(rho_p_generic_sum(3, 3, 7).value == rho_p_closed_form(3, 3, 7).value);
    const Rational c = (1 - q(1, 5)) / (1 - q(1, 125));
    CHECK(rho_p_generic_sum(2, 3, 5).value == 1 - 6 * q(1, 125) * c * c * c);
    CHECK_THROWS_AS(rho_p_generic_sum(2, 3, 3), PreconditionViolated);
}

TEST_CASE("real density") {
    CHECK(rho_infinity(4, 2).value == q(15, 16));
    CHECK(rho_infinity(3, 3).value == 1);
    CHECK(rho_infinity(1, 2).value == q(1, 2));
}

TEST_CASE("cell measures sum to one") {
    for (auto [p, k] : {std::pair<std::uint64_t, int>{2, 2}, {3, 2}, {3, 3}, {7, 3}, {5, 4}}) {
        for (int n = 1; n <= 3; ++n) {
            const auto t = signature_cells(n, k, p);
            CHECK(t.total_measure() == 1);
            CHECK(Integer(t.cells.size()) == cell_count(static_cast<std::uint64_t>(k * t.class_count), n));
        }
    }
    CHECK_THROWS_AS(signature_cells(5, 3, 3, {10, 1}), ResourceBound);
}

TEST_CASE("density grows with n") {
    for (auto [p, k] : {std::pair<std::uint64_t, int>{2, 2}, {3, 3}, {7, 3}, {5, 4}}) {
        Rational prev = rho_p_exact(1, k, p).value;
        for (int n = 2; n <= 4; ++n) {
            const Rational cur = rho_p_exact(n, k, p).value;
            CAPTURE(p);
            CAPTURE(n);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("generic sum bounds the exact density from above") {
    for (std::uint64_t p : {5, 7, 11, 13}) {
        for (int k = 2; k <= 4; ++k) {
            if (p % k == 0) continue;
            for (int n = 2; n <= 3; ++n) {
                const Rational exact = rho_p_exact(n, k, p).value;
                const Rational upper = rho_p_generic_sum(n, k, p).value;
                CAPTURE(p);
                CAPTURE(k);
                CAPTURE(n);
                CHECK(exact <= upper);
                if (k <= 3 && generic_equality_holds(p, k)) CHECK(exact == upper);
            }
        }
    }
}

TEST_CASE("quartic equality fails at p = 13 although p >= (k-1)(k-2)") {
    CHECK(generic_equality_holds(13, 4));
    CHECK(rho_p_exact(2, 4, 13).value < rho_p_generic_sum(2, 4, 13).value);
}

TEST_CASE("the signature determines the verdict") {
    std::mt19937_64 rng(17);
    std::map<std::tuple<std::uint64_t, int, std::vector<SignatureLetter>>, bool> seen;
    int repeats = 0;
    for (int i = 0; i < 3000; ++i) {
        const std::uint64_t p = std::array<std::uint64_t, 3>{2, 3, 7}[i % 3];
        const int k = 2 + (i / 3) % 2;
        const auto a = random_vector(rng, 2, k, 80);
        auto sig = signature_of(a, p);
        std::sort(sig.per_coordinate.begin(), sig.per_coordinate.end());
        const bool v = decide_qp(a, p, {false}).soluble();
        const auto key = std::make_tuple(p, k, sig.per_coordinate);
        auto [it, fresh] = seen.emplace(key, v);
        if (!fresh) {
            ++repeats;
            CAPTURE(a.str());
            CHECK(it->second == v);
        }
        CHECK(decide_qp(signature_of(a, p).representative(), p, {false}).soluble() == v);
    }
    CHECK(repeats > 500);
}

TEST_CASE("routes") {
    CHECK(parse_route("enum") == Route::Enumeration);
    CHECK(parse_route("closed-form") == Route::ClosedForm);
    CHECK(parse_route("generic") == Route::GenericSum);
    CHECK(to_string(Route::GenericSum) == "generic-sum");
    CHECK(is_pathological(3, 3));
    CHECK(is_pathological(2, 2));
    CHECK_FALSE(is_pathological(7, 3));
}
