#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "locsol/arith.hpp"
#include "locsol/product.hpp"

namespace locsol {

/// Exhaustive box, or `count` samples from std::mt19937_64 seeded with `seed`.
/// Each entry is drawn by rejection: 64-bit outputs at or above the largest
/// multiple of 2H - 1 are discarded, the rest reduced mod 2H - 1 and shifted
/// to [-(H - 1), H - 1]. Entries are drawn coordinate by coordinate, vector by vector.
struct SurveyMode {
    bool exhaustive = true;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;

    static SurveyMode box() { return {true, 0, 0}; }
    static SurveyMode sample(std::uint64_t count, std::uint64_t seed) { return {false, count, seed}; }
    std::string str() const { return exhaustive ? "exhaustive" : "sample"; }
    bool operator==(const SurveyMode&) const = default;
};

struct SurveyReport {
    int n = 0;
    int k = 0;
    std::uint64_t H = 0;
    SurveyMode mode;
    std::uint64_t total = 0;
    std::uint64_t soluble = 0;
    /// Vectors with a zero entry (all counted soluble).
    std::uint64_t zero_entry = 0;
    std::optional<CertifiedInterval> reference;

    Rational proportion() const;
    /// Proportion with zero-entry vectors removed from both counts.
    Rational proportion_nonzero() const;
    bool operator==(const SurveyReport&) const = default;
};

struct SurveyOptions {
    std::uint64_t exhaustive_cap = 100'000'000;
    unsigned jobs = 1;
    /// Attach rho_loc_interval(n, k, cutoff) when k is 2 or 3 and n >= 2.
    bool with_reference = false;
    std::uint64_t reference_cutoff = 10'000;
};

/// Integer vectors with max-norm < H, counted soluble when everywhere locally soluble.
SurveyReport survey_box(int n, int k, std::uint64_t H, const SurveyMode& mode, const SurveyOptions& opts = {});

/// One report per H (strictly increasing), all with the same mode and seed.
std::vector<SurveyReport> convergence_sweep(int n, int k, const std::vector<std::uint64_t>& Hs, const SurveyMode& mode,
                                            const SurveyOptions& opts = {});

/// Columns n,k,H,mode,seed,total,soluble,proportion_num,proportion_den,ref_lo,ref_hi.
void write_csv(std::ostream& os, const std::vector<SurveyReport>& reports, int digits = 6);

}  // namespace locsol
