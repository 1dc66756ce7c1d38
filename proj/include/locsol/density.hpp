#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "locsol/arith.hpp"
#include "locsol/padic.hpp"

namespace locsol {

enum class Route { Enumeration, ClosedForm, GenericSum };

std::string to_string(Route r);
/// Accepts "enum"/"enumeration", "closed"/"closed-form", "generic"/"generic-sum".
Route parse_route(const std::string& s);

/// Exact local density in [0, 1] with the route that produced it.
struct Density {
    Rational value;
    Route route = Route::Enumeration;

    bool operator==(const Density&) const = default;
};

/// One letter of a signature: valuation mod k and unit class id.
using SignatureLetter = std::pair<int, int>;

struct LocalSignature {
    std::uint64_t p = 0;
    int k = 0;
    std::vector<SignatureLetter> per_coordinate;

    /// p^e times the class representative, coordinate by coordinate.
    CoefficientVector representative() const;
    bool operator==(const LocalSignature&) const = default;
};

LocalSignature signature_of(const CoefficientVector& a, std::uint64_t p);

/// Haar measure of the set of p-adic integers with valuation = e mod k and
/// unit part in class cls.
Rational letter_measure(std::uint64_t p, int k, int class_count, int e);

/// A multiset of letters (sorted) with the measure of all its orderings.
struct SignatureCell {
    std::vector<SignatureLetter> letters;
    Rational measure;
    bool soluble = false;

    bool operator==(const SignatureCell&) const = default;
};

struct CellTable {
    std::uint64_t p = 0;
    int k = 0;
    int n = 0;
    int class_count = 0;
    std::vector<SignatureCell> cells;

    Rational total_measure() const;
    Rational soluble_measure() const;
    bool operator==(const CellTable&) const = default;
};

struct DensityOptions {
    /// Upper bound on the number of multiset cells.
    std::uint64_t cell_cap = 10'000'000;
    unsigned jobs = 1;
};

/// Number of multisets of size n + 1 over an alphabet of the given size.
Integer cell_count(std::uint64_t alphabet, int n);

/// Every signature multiset with its measure and Q_p verdict.
CellTable signature_cells(int n, int k, std::uint64_t p, const DensityOptions& opts = {});

/// (1 - p^-k)^-(n+1).
Rational kappa(int n, int k, std::uint64_t p);

Density rho_p_exact(int n, int k, std::uint64_t p, const DensityOptions& opts = {});
/// Stored formulas for k in {2, 3}, n >= 2.
Density rho_p_closed_form(int n, int k, std::uint64_t p);
/// One minus the type III measure; an upper bound for rho_p, with equality
/// when generic_equality_holds(p, k). Needs gcd(p, k) = 1.
Density rho_p_generic_sum(int n, int k, std::uint64_t p);
Density rho_infinity(int n, int k);

/// gcd(p, k) > 1, or p < (k-1)(k-2) with gcd(p-1, k) > 1.
bool is_pathological(std::uint64_t p, int k);
/// gcd(p, k) = 1 and (p >= (k-1)(k-2) or gcd(p-1, k) = 1).
bool generic_equality_holds(std::uint64_t p, int k);

}  // namespace locsol
