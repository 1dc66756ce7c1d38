#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locsol/arith.hpp"
#include "locsol/padic.hpp"

namespace locsol {

struct Place {
    bool real = true;
    std::uint64_t prime = 0;

    static Place infinity() { return {true, 0}; }
    static Place finite(std::uint64_t p) { return {false, p}; }
    std::string str() const { return real ? "infinity" : std::to_string(prime); }
    bool operator==(const Place&) const = default;
};

enum class Status { Soluble, Insoluble, SolubleTrivially };

std::string to_string(Status s);

/// Primitive residue vector w modulo p^level with f(w) = 0 mod p^level and
/// 2 v_p(df/dx_i (w)) < level at i = hensel_coordinate, so Newton iteration in
/// x_i converges to a Q_p point. `exact` marks a true point (a coordinate point
/// on a zero coefficient), where no lifting is needed.
struct FiniteWitness {
    std::vector<Integer> residues;
    int level = 0;
    std::size_t hensel_coordinate = 0;
    bool exact = false;

    bool operator==(const FiniteWitness&) const = default;
};

/// Coordinates carrying coefficients of opposite sign (even degree) or any two
/// coordinates (odd degree); x_i = |a_j|^(1/k), x_j = |a_i|^(1/k) up to sign is a real point.
struct RealWitness {
    std::size_t first = 0;
    std::size_t second = 0;

    bool operator==(const RealWitness&) const = default;
};

struct SolubilityVerdict {
    Place place;
    Status status = Status::Insoluble;
    std::optional<FiniteWitness> witness;
    std::optional<RealWitness> real_witness;
    int certificate_level = 0;

    bool soluble() const { return status != Status::Insoluble; }
    bool operator==(const SolubilityVerdict&) const = default;
};

/// Residues {b x^k mod p^m} over units x and over all x.
struct ValueSetPair {
    std::uint64_t p = 0;
    int k = 0;
    int modulus_exponent = 0;
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> unit_values;
    std::vector<std::uint64_t> all_values;

    static ValueSetPair build(std::uint64_t coefficient_residue, std::uint64_t p, int k, int modulus_exponent);
};

struct DecideOptions {
    /// Build and certify a witness for soluble verdicts (skipped for p above
    /// the enumeration range when p does not divide k).
    bool witness = true;
};

/// Exact decision of X_a(Q_p) != empty.
SolubilityVerdict decide_qp(const CoefficientVector& a, std::uint64_t p, const DecideOptions& opts = {});
SolubilityVerdict decide_real(const CoefficientVector& a);

/// Hensel criterion check of a finite witness against the form itself.
bool witness_certifies(const CoefficientVector& a, std::uint64_t p, const FiniteWitness& w);

/// Primes outside which X_a has a Q_p point without testing (needs n >= 2,
/// no zero entry).
std::vector<std::uint64_t> relevant_primes(const CoefficientVector& a);

struct EverywhereLocalOptions {
    /// For binary forms every prime up to this bound is tested as well.
    std::uint64_t binary_prime_bound = 1000;
    bool stop_at_first_failure = false;
    bool witnesses = true;
};

struct EverywhereLocalReport {
    bool overall = true;
    std::vector<SolubilityVerdict> verdicts;
    /// Primes not listed were skipped as generic (all coordinates units, at
    /// least three of them). For binary forms this marks primes above the bound.
    bool generic_primes_skipped = true;

    bool operator==(const EverywhereLocalReport&) const = default;
};

EverywhereLocalReport decide_everywhere_local(const CoefficientVector& a, const EverywhereLocalOptions& opts = {});

}  // namespace locsol
