#include "locsol/product.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <vector>

#include "locsol/errors.hpp"

namespace locsol {

namespace {

void check_supported(int n, int k) {
    if (k != 2 && k != 3) throw UnsupportedPair("global products are implemented for k in {2, 3}");
    if (n < 2) throw PreconditionViolated("rho_loc needs n >= 2");
}

Integer tree_product(std::vector<Integer> xs) {
    if (xs.empty()) return 1;
    while (xs.size() > 1) {
        std::vector<Integer> next;
        next.reserve((xs.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(xs[i] * xs[i + 1]);
        if (xs.size() % 2 == 1) next.push_back(xs.back());
        xs = std::move(next);
    }
    return xs.front();
}

Density local_factor(int n, int k, std::uint64_t p, Route generic_route) {
    if (is_pathological(p, k)) return rho_p_exact(n, k, p);
    switch (generic_route) {
        case Route::ClosedForm: return rho_p_closed_form(n, k, p);
        case Route::GenericSum: return rho_p_generic_sum(n, k, p);
        case Route::Enumeration: return rho_p_exact(n, k, p);
    }
    return rho_p_closed_form(n, k, p);
}

}  // namespace

TailHypothesis tail_hypothesis(int n, int k, std::uint64_t p_min) {
    check_supported(n, k);
    if (p_min <= static_cast<std::uint64_t>(k)) {
        throw PreconditionViolated("tail bound needs p_min above the pathological primes");
    }
    const Rational w_max = Rational(1, 2) - Rational(1, 2 * k);
    const unsigned full = 1U << static_cast<unsigned>(k);
    auto weight = [](unsigned s) {
        int w = 0;
        for (int b = 0; s != 0; ++b, s >>= 1U) w += (s & 1U) ? b : 0;
        return w;
    };

    // (r, exponent) for every term of the type III sum
    std::vector<std::pair<int, int>> terms;
    const int r_lo = std::max(n - k + 1, 0);
    const int r_hi = std::min((n + 1) / 2, k);
    for (int r = r_lo; r <= r_hi; ++r) {
        const int l = n + 1 - 2 * r;
        for (unsigned K = 0; K < full; ++K) {
            if (__builtin_popcount(K) != r) continue;
            for (unsigned L = 0; L < full; ++L) {
                if (__builtin_popcount(L) != l || (K & L) != 0) continue;
                terms.emplace_back(r, 2 * weight(K) + weight(L));
            }
        }
    }

    TailHypothesis h{Rational(0), 0, p_min};
    if (terms.empty()) return h;
    h.exponent = std::min_element(terms.begin(), terms.end(), [](auto a, auto b) { return a.second < b.second; })->second;
    if (h.exponent <= 1) {
        throw DivergentTail("sum of p^-1 over the tail diverges for (n, k) = (" + std::to_string(n) + ", " +
                            std::to_string(k) + ")");
    }
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n + 1));
    const Rational pm(Integer(static_cast<unsigned long>(p_min)));
    for (const auto& [r, d] : terms) h.constant += rpow(w_max, r) * rpow(pm, -(d - h.exponent));
    h.constant *= Rational(fact);
    h.constant.canonicalize();
    return h;
}

std::optional<std::uint64_t> audit_tail(int n, int k, const TailHypothesis& h, std::uint64_t upto) {
    for (std::uint64_t p : primes_below(upto + 1)) {
        if (p < h.p_min) continue;
        const Rational deficiency = Rational(1) - rho_p_closed_form(n, k, p).value;
        const Rational bound = h.constant * rpow(Rational(Integer(static_cast<unsigned long>(p))), -h.exponent);
        if (deficiency > bound) return p;
    }
    return std::nullopt;
}

CertifiedInterval rho_loc_interval(int n, int k, std::uint64_t cutoff, const ProductOptions& opts) {
    check_supported(n, k);
    if (cutoff <= static_cast<std::uint64_t>(k)) throw PreconditionViolated("cutoff must exceed the pathological primes");
    CertifiedInterval iv;
    iv.n = n;
    iv.k = k;
    iv.cutoff = cutoff;

    TailHypothesis h;
    try {
        h = tail_hypothesis(n, k, cutoff);
    } catch (const DivergentTail&) {
        // Infinitely many p = 1 mod k each remove a fixed multiple of 1/p.
        iv.lo = iv.hi = iv.finite_lo = iv.finite_hi = 0;
        iv.tail_exponent = 1;
        return iv;
    }
    iv.tail_constant = h.constant;
    iv.tail_exponent = h.exponent;

    const auto primes = primes_below(cutoff);
    std::vector<Integer> nums(primes.size()), dens(primes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) {
            const Rational f = local_factor(n, k, primes[i], opts.generic_route).value;
            nums[i] = f.get_num();
            dens[i] = f.get_den();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1U, opts.jobs); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    iv.finite_hi = Rational(tree_product(std::move(nums)), tree_product(std::move(dens)));
    iv.finite_hi.canonicalize();
    const Rational real = rho_infinity(n, k).value;
    iv.hi = real * iv.finite_hi;
    iv.hi.canonicalize();

    if (h.constant == 0) {
        iv.lo = iv.hi;
        iv.finite_lo = iv.finite_hi;
        return iv;
    }
    // sum_{p >= P} p^-s <= sum_{m >= P} m^-s <= (P - 1)^(1 - s) / (s - 1)
    const Rational tail = h.constant * rpow(Rational(Integer(static_cast<unsigned long>(cutoff - 1))), 1 - h.exponent) /
                          Rational(h.exponent - 1);
    const Rational factor = tail >= 1 ? Rational(0) : Rational(1) - tail;
    iv.finite_lo = iv.finite_hi * factor;
    iv.finite_lo.canonicalize();
    iv.lo = real * iv.finite_lo;
    iv.lo.canonicalize();
    return iv;
}

std::pair<std::string, std::string> decimalize(const CertifiedInterval& iv, int digits) {
    if (digits < 1) throw PreconditionViolated("digits must be at least 1");
    return {to_decimal(iv.lo, digits, false), to_decimal(iv.hi, digits, true)};
}

}  // namespace locsol
