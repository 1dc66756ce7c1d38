#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locsol/density.hpp"

namespace locsol {

/// Canonical letters of the orbit of a signature under global scaling by
/// p^c * w (c in [0, k), w a unit class) and permutations.
std::vector<SignatureLetter> orbit_key(const LocalSignature& s);

struct ClassificationReport {
    std::uint64_t p = 0;
    int k = 0;
    int n = 0;
    /// Cells or unit triples examined.
    std::size_t checked = 0;
    /// One line per disagreement, naming a representative.
    std::vector<std::string> mismatches;

    bool passed() const { return mismatches.empty(); }
};

/// Supported (p, k, n): (2, 2, n >= 2) and (3, 3, n >= 2).
bool classification_supported(std::uint64_t p, int k, int n);

/// Decides every signature cell (or, for (3, 3, 2), every unit triple mod 27
/// in each valuation pattern) and compares with the known classification.
ClassificationReport verify_classification(std::uint64_t p, int k, int n);

/// As above; throws ClassificationMismatch on the first disagreement.
void require_classification(std::uint64_t p, int k, int n);

}  // namespace locsol
