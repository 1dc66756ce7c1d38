#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "locsol/cache.hpp"

namespace locsol {

enum class Subset { All, Quadratic, Cubic };

Subset parse_subset(const std::string& s);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool passed() const;
};

struct AcceptanceOptions {
    Subset subset = Subset::All;
    /// Only this criterion (1..7) when set.
    std::optional<int> only;
    const Cache* cache = nullptr;
    unsigned jobs = 1;
};

/// Runs criteria 1..7; criteria with no checks in the chosen subset are omitted.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// One PASS/FAIL line per criterion, then the failing checks indented below it.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results, bool verbose = false);

}  // namespace locsol
