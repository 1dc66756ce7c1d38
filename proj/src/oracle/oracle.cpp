#include "oracle.hpp"

#include <vector>

#include "locsol/arith.hpp"

namespace locsol::oracle {

namespace {

int residue_valuation(std::uint64_t x, std::uint64_t p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

LiftingResult lifting_tree(const CoefficientVector& a, std::uint64_t p, int max_level, std::size_t node_cap) {
    const int k = a.degree();
    const std::size_t len = a.size();
    LiftingResult result;

    // x_i -> p^-q x_i brings every valuation below k
    std::vector<Integer> coeff(len);
    std::vector<int> vals(len);
    const Integer pp(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < len; ++i) {
        const int v = valuation(a[i], p);
        const int q = v / k;
        coeff[i] = a[i] / ipow(pp, static_cast<unsigned>(k * q));
        vals[i] = v - k * q;
    }
    const int vk = valuation(static_cast<std::int64_t>(k), p);

    std::uint64_t modulus = p;
    std::vector<std::uint64_t> cm(len);
    auto reduce_coefficients = [&] {
        for (std::size_t i = 0; i < len; ++i) cm[i] = mod_u64(coeff[i], modulus);
    };
    auto vanishes = [&](const std::vector<std::uint64_t>& x) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < len; ++i) {
            s = (s + mulmod(cm[i], powmod(x[i], static_cast<std::uint64_t>(k), modulus), modulus)) % modulus;
        }
        return s == 0;
    };

    auto fires = [&](const std::vector<std::uint64_t>& x, int m) {
        for (std::size_t i = 0; i < len; ++i) {
            if (x[i] != 0 && 2 * (vk + vals[i] + (k - 1) * residue_valuation(x[i], p, m)) < m) return true;
        }
        return false;
    };

    // level 1: primitive vectors mod p with first nonzero coordinate 1
    reduce_coefficients();
    std::vector<std::vector<std::uint64_t>> alive;
    {
        std::vector<std::uint64_t> x(len, 0);
        const std::uint64_t total = checked_pow(p, static_cast<unsigned>(len));
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            std::uint64_t r = idx;
            for (std::size_t j = 0; j < len; ++j, r /= p) x[j] = r % p;
            std::size_t first = 0;
            while (x[first] == 0) ++first;
            if (x[first] == 1 && vanishes(x)) alive.push_back(x);
        }
    }

    for (int m = 1;; ++m) {
        result.level = m;
        result.max_frontier = std::max(result.max_frontier, alive.size());
        if (alive.empty()) {
            result.verdict = Verdict::Insoluble;
            return result;
        }
        for (const auto& x : alive) {
            if (fires(x, m)) {
                result.verdict = Verdict::Soluble;
                return result;
            }
        }
        if (m == max_level) break;

        // children x + p^m d with f = 0 mod p^(m+1), normalised coordinate fixed
        const std::uint64_t step = modulus;
        modulus *= p;
        reduce_coefficients();
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& x : alive) {
            std::size_t first = 0;
            while (x[first] % p == 0) ++first;
            std::vector<std::uint64_t> d(len, 0), y(len);
            for (;;) {
                for (std::size_t j = 0; j < len; ++j) y[j] = x[j] + step * d[j];
                if (vanishes(y)) {
                    if (fires(y, m + 1)) {
                        result.level = m + 1;
                        result.verdict = Verdict::Soluble;
                        return result;
                    }
                    next.push_back(y);
                    if (next.size() > node_cap) return result;
                }
                std::size_t j = 0;
                for (; j < len; ++j) {
                    if (j == first) continue;
                    if (++d[j] < p) break;
                    d[j] = 0;
                }
                if (j == len) break;
            }
        }
        alive = std::move(next);
    }
    result.verdict = Verdict::Undecided;
    return result;
}

}  // namespace locsol::oracle
