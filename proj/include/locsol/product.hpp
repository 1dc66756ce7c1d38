#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "locsol/arith.hpp"
#include "locsol/density.hpp"

namespace locsol {

/// 1 - rho_p(n, k) <= constant * p^-exponent for every prime p >= p_min.
/// A zero constant means rho_p = 1 for all those primes.
struct TailHypothesis {
    Rational constant;
    int exponent = 0;
    std::uint64_t p_min = 2;
};

/// Bound read off the type III measure with c <= 1 and gcd(p - 1, k) <= k.
/// Valid for p_min above every pathological prime of k in {2, 3}.
/// Throws DivergentTail when the leading exponent is 1 (n = 2).
TailHypothesis tail_hypothesis(int n, int k, std::uint64_t p_min);

/// First prime in [h.p_min, upto] violating the hypothesis, if any.
std::optional<std::uint64_t> audit_tail(int n, int k, const TailHypothesis& h, std::uint64_t upto);

struct CertifiedInterval {
    int n = 0;
    int k = 0;
    Rational lo;
    Rational hi;
    /// Same bounds for the product over primes alone (lo = rho_inf * finite_lo).
    Rational finite_lo;
    Rational finite_hi;
    std::uint64_t cutoff = 0;
    Rational tail_constant;
    int tail_exponent = 0;

    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational width() const { return hi - lo; }
    bool operator==(const CertifiedInterval&) const = default;
};

struct ProductOptions {
    /// Route for primes outside the pathological set.
    Route generic_route = Route::ClosedForm;
    unsigned jobs = 1;
};

/// rho_loc(n, k) for k in {2, 3}: exact product below the cutoff times a
/// rigorous lower bound for the tail. n = 2 gives the point [0, 0].
CertifiedInterval rho_loc_interval(int n, int k, std::uint64_t cutoff, const ProductOptions& opts = {});

/// (lo rounded down, hi rounded up) with `digits` fractional digits.
std::pair<std::string, std::string> decimalize(const CertifiedInterval& iv, int digits);

}  // namespace locsol
