#include "locsol/density.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "locsol/errors.hpp"
#include "locsol/solubility.hpp"

namespace locsol {

namespace {

Rational inv_pow(std::uint64_t p, int e) {
    return Rational(Integer(1), ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned>(e)));
}

// (1 - p^-1) / (1 - p^-k)
Rational unit_ratio(std::uint64_t p, int k) {
    Rational r = (Rational(1) - inv_pow(p, 1)) / (Rational(1) - inv_pow(p, k));
    r.canonicalize();
    return r;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

void check_args(int n, int k, std::uint64_t p) {
    if (n < 1) throw PreconditionViolated("n must be at least 1");
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    if (!is_prime(p)) throw PreconditionViolated("not a prime: " + std::to_string(p));
}

}  // namespace

std::string to_string(Route r) {
    switch (r) {
        case Route::Enumeration: return "enumeration";
        case Route::ClosedForm: return "closed-form";
        case Route::GenericSum: return "generic-sum";
    }
    return "?";
}

Route parse_route(const std::string& s) {
    if (s == "enum" || s == "enumeration") return Route::Enumeration;
    if (s == "closed" || s == "closed-form") return Route::ClosedForm;
    if (s == "generic" || s == "generic-sum") return Route::GenericSum;
    throw PreconditionViolated("unknown route: " + s);
}

CoefficientVector LocalSignature::representative() const {
    const auto& table = unit_class_table(p, k);
    std::vector<Integer> out;
    for (const auto& [e, cls] : per_coordinate) {
        out.push_back(ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned>(e)) *
                      Integer(static_cast<unsigned long>(table.representative(cls))));
    }
    return {std::move(out), k};
}

LocalSignature signature_of(const CoefficientVector& a, std::uint64_t p) {
    if (a.has_zero_entry()) throw DegenerateInput("signature needs nonzero entries");
    const int k = a.degree();
    const auto& table = unit_class_table(p, k);
    LocalSignature s{p, k, {}};
    const Integer pp(static_cast<unsigned long>(p));
    for (const auto& x : a.entries()) {
        const int v = valuation(x, p);
        Integer u;
        mpz_divexact(u.get_mpz_t(), x.get_mpz_t(), ipow(pp, static_cast<unsigned>(v)).get_mpz_t());
        s.per_coordinate.emplace_back(v % k, table.class_of(u));
    }
    return s;
}

Rational letter_measure(std::uint64_t p, int k, int class_count, int e) {
    Rational m = inv_pow(p, e) * unit_ratio(p, k) / Rational(class_count);
    m.canonicalize();
    return m;
}

Rational CellTable::total_measure() const {
    Rational s = 0;
    for (const auto& c : cells) s += c.measure;
    return s;
}

Rational CellTable::soluble_measure() const {
    Rational s = 0;
    for (const auto& c : cells) {
        if (c.soluble) s += c.measure;
    }
    return s;
}

Integer cell_count(std::uint64_t alphabet, int n) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), alphabet + static_cast<std::uint64_t>(n), static_cast<unsigned long>(n + 1));
    return r;
}

CellTable signature_cells(int n, int k, std::uint64_t p, const DensityOptions& opts) {
    check_args(n, k, p);
    const auto& table = unit_class_table(p, k);
    const int cc = table.class_count();
    const std::size_t alphabet = static_cast<std::size_t>(k) * static_cast<std::size_t>(cc);
    const Integer count = cell_count(alphabet, n);
    if (count > Integer(static_cast<unsigned long>(opts.cell_cap))) {
        throw ResourceBound("signature cell count exceeds cap", count.get_d());
    }

    std::vector<SignatureLetter> letters;
    std::vector<Rational> weight;
    for (int e = 0; e < k; ++e) {
        const Rational w = letter_measure(p, k, cc, e);
        for (int c = 0; c < cc; ++c) {
            letters.emplace_back(e, c);
            weight.push_back(w);
        }
    }

    CellTable out{p, k, n, cc, {}};
    out.cells.reserve(count.get_ui());
    const std::size_t len = static_cast<std::size_t>(n) + 1;
    const Integer total_perms = factorial(static_cast<unsigned>(len));
    std::vector<std::size_t> idx(len, 0);
    for (;;) {
        SignatureCell cell;
        Rational measure = 1;
        Integer denom = 1;
        std::size_t run = 0;
        for (std::size_t i = 0; i < len; ++i) {
            cell.letters.push_back(letters[idx[i]]);
            measure *= weight[idx[i]];
            run = (i > 0 && idx[i] == idx[i - 1]) ? run + 1 : 1;
            denom *= run;
        }
        cell.measure = measure * Rational(total_perms, denom);
        cell.measure.canonicalize();
        out.cells.push_back(std::move(cell));

        // next nondecreasing index sequence
        std::size_t i = len;
        while (i > 0 && idx[i - 1] == alphabet - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < len; ++j) idx[j] = idx[i - 1];
    }

    const unsigned jobs = std::max(1U, opts.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < out.cells.size(); c = next++) {
            LocalSignature sig{p, k, out.cells[c].letters};
            out.cells[c].soluble = decide_qp(sig.representative(), p, {false}).soluble();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

Rational kappa(int n, int k, std::uint64_t p) {
    check_args(n, k, p);
    return rpow(Rational(1) - inv_pow(p, k), -(n + 1));
}

Density rho_p_exact(int n, int k, std::uint64_t p, const DensityOptions& opts) {
    return {signature_cells(n, k, p, opts).soluble_measure(), Route::Enumeration};
}

Density rho_p_closed_form(int n, int k, std::uint64_t p) {
    check_args(n, k, p);
    const Density one{Rational(1), Route::ClosedForm};
    auto make = [](const Rational& deficiency) {
        Rational v = Rational(1) - deficiency;
        v.canonicalize();
        return Density{v, Route::ClosedForm};
    };
    if (k == 2 && n >= 2) {
        if (n >= 4) return one;
        const Rational c = unit_ratio(p, 2);
        if (n == 2) return p == 2 ? Density{Rational(7, 12), Route::ClosedForm} : make(Rational(3, 2) * inv_pow(p, 1) * rpow(c, 2));
        return p == 2 ? Density{Rational(1231, 1296), Route::ClosedForm} : make(Rational(3, 2) * inv_pow(p, 2) * rpow(c, 4));
    }
    if (k == 3 && n >= 2) {
        if (n >= 6) return one;
        const Rational c = unit_ratio(p, 3);
        const std::uint64_t r = p % 3;
        switch (n) {
            case 2:
                if (p == 3) return {Rational(13831, 19773), Route::ClosedForm};
                return r == 1 ? make(2 * inv_pow(p, 1) * c) : make(6 * inv_pow(p, 3) * rpow(c, 3));
            case 3:
                if (p == 3) return {Rational(6391, 6591), Route::ClosedForm};
                if (r == 2) return one;
                return make(Rational(8, 3) * inv_pow(p, 2) * rpow(Rational(1) + inv_pow(p, 1), 2) * rpow(c, 3));
            case 4: return r == 1 ? make(Rational(40, 3) * inv_pow(p, 4) * rpow(c, 4)) : one;
            case 5: return r == 1 ? make(Rational(80, 3) * inv_pow(p, 6) * rpow(c, 6)) : one;
            default: break;
        }
    }
    throw UnsupportedPair("no stored formula for (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) +
                          "); use the enumeration or generic route");
}

Density rho_p_generic_sum(int n, int k, std::uint64_t p) {
    check_args(n, k, p);
    if (gcd_u64(p, static_cast<std::uint64_t>(k)) != 1) {
        throw PreconditionViolated("generic sum needs gcd(p, k) = 1");
    }
    if (k > 24) throw ResourceBound("generic sum enumerates subsets of [k]", static_cast<double>(k));
    const int g = static_cast<int>(gcd_u64(p - 1, static_cast<std::uint64_t>(k)));
    const Rational w = Rational(1, 2) - Rational(1, 2 * g);
    const unsigned full = (1U << static_cast<unsigned>(k));

    std::vector<int> weight(full, 0), size(full, 0);
    for (unsigned s = 1; s < full; ++s) {
        const unsigned low = static_cast<unsigned>(__builtin_ctz(s));
        weight[s] = weight[s & (s - 1)] + static_cast<int>(low);
        size[s] = size[s & (s - 1)] + 1;
    }

    Rational total = 0;
    const int r_lo = std::max(n - k + 1, 0);
    const int r_hi = std::min((n + 1) / 2, k);
    for (int r = r_lo; r <= r_hi; ++r) {
        const int l = n + 1 - 2 * r;
        Rational inner = 0;
        for (unsigned K = 0; K < full; ++K) {
            if (size[K] != r) continue;
            for (unsigned L = 0; L < full; ++L) {
                if (size[L] != l || (K & L) != 0) continue;
                inner += inv_pow(p, 2 * weight[K] + weight[L]);
            }
        }
        total += rpow(w, r) * inner;
    }
    Rational v = Rational(1) - Rational(factorial(static_cast<unsigned>(n + 1))) * rpow(unit_ratio(p, k), n + 1) * total;
    v.canonicalize();
    return {v, Route::GenericSum};
}

Density rho_infinity(int n, int k) {
    if (n < 1 || k < 2) throw PreconditionViolated("rho_infinity needs n >= 1, k >= 2");
    if (k % 2 == 1) return {Rational(1), Route::ClosedForm};
    return {Rational(1) - inv_pow(2, n), Route::ClosedForm};
}

bool is_pathological(std::uint64_t p, int k) {
    const auto uk = static_cast<std::uint64_t>(k);
    if (gcd_u64(p, uk) != 1) return true;
    return p < (uk - 1) * (uk - 2) && gcd_u64(p - 1, uk) != 1;
}

bool generic_equality_holds(std::uint64_t p, int k) {
    const auto uk = static_cast<std::uint64_t>(k);
    return gcd_u64(p, uk) == 1 && (p >= (uk - 1) * (uk - 2) || gcd_u64(p - 1, uk) == 1);
}

}  // namespace locsol
