#include <doctest.h>

#include "locsol/density.hpp"
#include "locsol/errors.hpp"
#include "locsol/product.hpp"

using namespace locsol;

TEST_CASE("degenerate and exact products") {
    const auto two = rho_loc_interval(2, 2, 1000);
    CHECK(two.is_point());
    CHECK(two.lo == 0);
    CHECK(rho_loc_interval(2, 3, 1000).hi == 0);
    for (int n = 4; n <= 6; ++n) {
        const auto iv = rho_loc_interval(n, 2, 1000);
        CHECK(iv.is_point());
        CHECK(iv.lo == 1 - Rational(1, 1L << n));
    }
    for (int n = 6; n <= 7; ++n) {
        const auto iv = rho_loc_interval(n, 3, 100);
        CHECK(iv.is_point());
        CHECK(iv.lo == 1);
    }
    CHECK_THROWS_AS(rho_loc_interval(3, 4, 100), UnsupportedPair);
}

TEST_CASE("intervals are positive and nest as the cutoff grows") {
    for (auto [n, k] : {std::pair<int, int>{3, 2}, {3, 3}, {4, 3}, {5, 3}}) {
        const auto coarse = rho_loc_interval(n, k, 300);
        const auto fine = rho_loc_interval(n, k, 3000);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(coarse.lo > 0);
        CHECK(coarse.lo <= fine.lo);
        CHECK(fine.hi <= coarse.hi);
        CHECK(fine.width() < coarse.width());
        CHECK(fine.lo == rho_infinity(n, k).value * fine.finite_lo);
    }
}

TEST_CASE("tabulated values") {
    const auto cubic = rho_loc_interval(3, 3, 10000);
    CHECK(cubic.contains(Rational(8964, 10000)));
    CHECK(decimalize(rho_loc_interval(4, 3, 10000), 4).first == "0.9965");
    const auto five = decimalize(rho_loc_interval(5, 3, 10000), 4);
    CHECK(five.first == "0.9999");
}

TEST_CASE("tail hypotheses hold on the audited range") {
    for (auto [n, k, pmin] : {std::tuple<int, int, std::uint64_t>{3, 2, 3}, {4, 2, 3}, {3, 3, 5}, {4, 3, 5}, {5, 3, 5}}) {
        const auto h = tail_hypothesis(n, k, pmin);
        CAPTURE(n);
        CAPTURE(k);
        CHECK((h.constant == 0 || h.exponent >= 2));
        CHECK_FALSE(audit_tail(n, k, h, 2000).has_value());
    }
    CHECK(tail_hypothesis(6, 3, 5).constant == 0);
    CHECK_THROWS_AS(tail_hypothesis(2, 2, 3), DivergentTail);
}

TEST_CASE("decimalize rounds outward") {
    CertifiedInterval iv;
    iv.lo = iv.hi = Rational(7, 12);
    CHECK(decimalize(iv, 4) == std::pair<std::string, std::string>{"0.5833", "0.5834"});
    iv.lo = iv.hi = Rational(1, 4);
    CHECK(decimalize(iv, 2) == std::pair<std::string, std::string>{"0.25", "0.25"});
}
