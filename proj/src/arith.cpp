#include "locsol/arith.hpp"

#include <algorithm>
#include <limits>

#include "locsol/errors.hpp"

namespace locsol {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
    constexpr std::uint64_t limit = std::uint64_t{1} << 62;
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > limit / p) return 0;
        r *= p;
    }
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

int valuation(const Integer& x, std::uint64_t p) {
    if (x == 0) throw DegenerateInput("valuation of zero is infinite");
    if (p < 2) throw PreconditionViolated("valuation needs a prime");
    Integer y = abs(x);
    const Integer pp(static_cast<unsigned long>(p));
    int v = 0;
    while (mpz_divisible_p(y.get_mpz_t(), pp.get_mpz_t()) != 0) {
        y /= pp;
        ++v;
    }
    return v;
}

int valuation(std::int64_t x, std::uint64_t p) {
    if (x == 0) throw DegenerateInput("valuation of zero is infinite");
    std::uint64_t y = x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1 : static_cast<std::uint64_t>(x);
    int v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
    Integer r;
    const Integer mm(static_cast<unsigned long>(m));
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
    return r.get_ui();
}

Integer ipow(const Integer& base, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw DegenerateInput("negative power of zero");
        return rpow(Rational(1) / base, -e);
    }
    Rational r(ipow(base.get_num(), static_cast<unsigned>(e)), ipow(base.get_den(), static_cast<unsigned>(e)));
    r.canonicalize();
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound <= 2) return out;
    std::vector<bool> composite(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
    }
    return out;
}

namespace {

// Pollard-Brent on a composite n with no small factors.
Integer find_factor(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        std::size_t r = 1;
        constexpr std::size_t m = 128;
        auto f = [&](const Integer& v) {
            Integer w = v * v + c;
            mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
            return w;
        };
        while (g == 1) {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = f(y);
            std::size_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer d = abs(x - y);
                    q = (q * d) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                Integer d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        out.push_back(n);
        return;
    }
    Integer d = find_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<Integer> prime_divisors(const Integer& x) {
    if (x == 0) throw DegenerateInput("prime divisors of zero");
    Integer n = abs(x);
    std::vector<Integer> out;
    for (unsigned long q = 2; q < 10000 && n > 1; q += (q == 2 ? 1 : 2)) {
        if (Integer(q * q) > n) {
            out.push_back(n);
            n = 1;
            break;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
            out.emplace_back(q);
            while (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) n /= q;
        }
    }
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string to_decimal(const Rational& q, int digits, bool round_up) {
    const Integer scale = ipow(Integer(10), static_cast<unsigned>(digits));
    Integer scaled;
    const Integer num = q.get_num() * scale;
    if (round_up) {
        mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    } else {
        mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    }
    const bool negative = scaled < 0;
    std::string body = Integer(abs(scaled)).get_str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits)) {
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + body : body;
}

}  // namespace locsol
