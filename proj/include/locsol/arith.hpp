#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace locsol {

using Integer = mpz_class;
using Rational = mpq_class;

// Small-modulus helpers. Moduli handled here stay below 2^63.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Returns p^e, or 0 if it does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Exponent of p in x. Throws DegenerateInput for x = 0.
int valuation(const Integer& x, std::uint64_t p);
int valuation(std::int64_t x, std::uint64_t p);

/// x mod m in [0, m).
std::uint64_t mod_u64(const Integer& x, std::uint64_t m);

Integer ipow(const Integer& base, unsigned e);
Rational rpow(const Rational& base, int e);

/// Deterministic primality for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// All primes strictly below `bound`.
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

/// Distinct prime divisors of |x| in increasing order (x != 0).
std::vector<Integer> prime_divisors(const Integer& x);

/// Decimal rendering of a rational with `digits` fractional digits,
/// rounded toward -infinity (round_up = false) or +infinity (round_up = true).
std::string to_decimal(const Rational& q, int digits, bool round_up);

}  // namespace locsol
