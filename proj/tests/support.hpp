#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "locsol/padic.hpp"

namespace testing_support {

using locsol::CoefficientVector;
using locsol::Integer;

// Nonzero entries in [-bound, bound].
inline CoefficientVector random_vector(std::mt19937_64& rng, int n, int k, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<Integer> xs;
    for (int i = 0; i <= n; ++i) {
        long x = 0;
        while (x == 0) x = d(rng);
        xs.emplace_back(x);
    }
    return {std::move(xs), k};
}

inline CoefficientVector vec(std::initializer_list<long> xs, int k) {
    std::vector<Integer> v;
    for (long x : xs) v.emplace_back(x);
    return {std::move(v), k};
}

}  // namespace testing_support
