#include <doctest.h>

#include "locsol/classification.hpp"
#include "locsol/errors.hpp"
#include "support.hpp"

using namespace locsol;
using testing_support::vec;

TEST_CASE("known classifications hold") {
    for (auto [p, k, n] : {std::tuple<std::uint64_t, int, int>{2, 2, 2}, {2, 2, 3}, {2, 2, 4}, {2, 2, 5}, {3, 3, 2}, {3, 3, 3},
                           {3, 3, 4}, {3, 3, 5}}) {
        const auto r = verify_classification(p, k, n);
        CAPTURE(p);
        CAPTURE(n);
        CHECK(r.checked > 0);
        CHECK(r.passed());
        CHECK_NOTHROW(require_classification(p, k, n));
    }
    CHECK_FALSE(classification_supported(5, 2, 2));
}

TEST_CASE("orbit keys identify scaled and permuted signatures") {
    const auto a = signature_of(vec({1, 3, 7}, 2), 2);
    const auto b = signature_of(vec({14, 6, 2}, 2), 2);
    CHECK(orbit_key(a) == orbit_key(b));
    CHECK(orbit_key(signature_of(vec({1, 1, 3}, 2), 2)) != orbit_key(signature_of(vec({1, 1, 1}, 2), 2)));
}
