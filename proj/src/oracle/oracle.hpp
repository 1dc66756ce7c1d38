#pragma once

#include <cstddef>
#include <cstdint>

#include "locsol/padic.hpp"

namespace locsol::oracle {

enum class Verdict { Soluble, Insoluble, Undecided };

struct LiftingResult {
    Verdict verdict = Verdict::Undecided;
    int level = 0;            // level at which the verdict was reached
    std::size_t max_frontier = 0;
};

/// Breadth-first search over primitive residue vectors modulo p^m, m = 1, 2, ...,
/// normalised so the first unit coordinate is 1. Soluble when some node x has
/// 2 v(k a_i x_i^(k-1)) < m for some i; Insoluble when a level is empty.
/// Undecided past max_level or when a frontier exceeds node_cap.
LiftingResult lifting_tree(const CoefficientVector& a, std::uint64_t p, int max_level,
                           std::size_t node_cap = 4'000'000);

}  // namespace locsol::oracle
