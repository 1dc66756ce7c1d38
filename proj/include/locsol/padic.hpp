#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "locsol/arith.hpp"

namespace locsol {

/// Coefficients (a_0, ..., a_n) of the diagonal form sum a_i x_i^k.
class CoefficientVector {
public:
    CoefficientVector(std::vector<Integer> entries, int degree);

    const std::vector<Integer>& entries() const noexcept { return entries_; }
    const Integer& operator[](std::size_t i) const { return entries_[i]; }
    std::size_t size() const noexcept { return entries_.size(); }
    int degree() const noexcept { return degree_; }
    int dimension() const noexcept { return static_cast<int>(entries_.size()) - 1; }

    Integer max_norm() const;
    /// Some entry is zero (the coordinate-hyperplane locus).
    bool has_zero_entry() const;
    bool is_zero() const;

    std::string str() const;
    bool operator==(const CoefficientVector&) const = default;

private:
    std::vector<Integer> entries_;
    int degree_;
};

/// Valuations of the entries together with the degree they are read modulo.
struct ValuationVector {
    std::vector<int> exps;
    int modulus = 2;

    /// Sorted, reduced mod `modulus`, lexicographically least over common shifts.
    ValuationVector canonical() const;
    bool equivalent(const ValuationVector& other) const { return canonical().exps == other.canonical().exps; }
    bool operator==(const ValuationVector&) const = default;
};

ValuationVector valuations(const CoefficientVector& a, std::uint64_t p);

/// Z_p^x / (Z_p^x)^k, realised on unit residues modulo p^c with c = 2 v_p(k) + 1.
///
/// Two representations: an explicit residue -> class array when p^c is small,
/// and a power-character map u -> u^((p-1)/g) for large p with p not dividing k.
/// Class 0 always holds the k-th powers.
class UnitClassTable {
public:
    UnitClassTable(std::uint64_t p, int k);

    std::uint64_t prime() const noexcept { return p_; }
    int degree() const noexcept { return k_; }
    int precision() const noexcept { return precision_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    int class_count() const noexcept { return static_cast<int>(reps_.size()); }
    bool is_explicit() const noexcept { return !class_of_.empty(); }

    /// Class of a p-adic unit given by any integer representative.
    int class_of(const Integer& unit) const;
    int class_of_residue(std::uint64_t unit_residue) const;
    bool is_kth_power(const Integer& unit) const { return class_of(unit) == 0; }
    /// Least positive residue in the class (explicit) or the first one found.
    std::uint64_t representative(int cls) const { return reps_.at(static_cast<std::size_t>(cls)); }
    int multiply(int a, int b) const;

    /// Members of every class (explicit tables only).
    std::vector<std::vector<std::uint64_t>> classes() const;

private:
    std::uint64_t p_;
    int k_;
    int precision_;
    std::uint64_t modulus_;
    std::vector<std::int32_t> class_of_;
    std::vector<std::uint64_t> reps_;
    // power-character representation
    std::uint64_t char_exponent_ = 0;
    std::vector<std::uint64_t> roots_;
};

/// Shared read-only table for (p, k); built on first use.
const UnitClassTable& unit_class_table(std::uint64_t p, int k);

/// 2 (v_p(k) + k - 1) + 1: residue precision at which every coordinate of a
/// vector with valuations in [0, k) satisfies the one-variable Newton criterion.
int certificate_precision(std::uint64_t p, int k);

/// Group element (alpha; alpha_i^k; sigma) taking the source to its normal form:
/// coordinate j of the normal form is p^scalar_shift * a[permutation[j]] / p^(k * kth_power_shifts[permutation[j]]),
/// with the unit part then reduced modulo p^residue_precision.
struct GammaWitness {
    int scalar_shift = 0;
    std::vector<int> kth_power_shifts;
    std::vector<std::size_t> permutation;
};

struct NormalForm {
    CoefficientVector source;
    std::uint64_t p;
    ValuationVector reduced_exps;
    std::vector<Integer> unit_residues;
    std::vector<int> class_ids;
    int residue_precision;
    GammaWitness gamma;

    /// The vector (p^e_j * residue_j)_j.
    CoefficientVector as_vector() const;
    /// Undo the group element on as_vector(); agrees with the source up to
    /// per-coordinate factors congruent to 1 mod p^residue_precision.
    CoefficientVector reconstruct_source() const;
};

NormalForm normalize(const CoefficientVector& a, std::uint64_t p);

enum class TypeTag { I, II, III, None };

std::string to_string(TypeTag t);

/// First matching pattern in the order I, II, III.
TypeTag classify_type(const CoefficientVector& a, std::uint64_t p);

}  // namespace locsol
