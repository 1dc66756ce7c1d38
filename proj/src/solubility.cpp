#include "locsol/solubility.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>

#include "locsol/errors.hpp"

namespace locsol {

namespace {

// Residue DP is used when the layer modulus p^(2 v_p(k) + 1) is at most this.
constexpr std::uint64_t kDpModulusCap = std::uint64_t{1} << 16;
// For p not dividing k the modulus is p itself; above this the layer is
// decided from character sums instead of enumeration.
constexpr std::uint64_t kDpPrimeCap = 4096;

Integer to_int(std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

Integer pow_p(std::uint64_t p, int e) { return ipow(to_int(p), static_cast<unsigned>(e)); }

Integer divexact(const Integer& x, const Integer& d) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer mod_pos(const Integer& x, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

int valuation_or(const Integer& x, std::uint64_t p, int if_zero) {
    return x == 0 ? if_zero : valuation(x, p);
}

Integer form_value(const std::vector<Integer>& coeffs, const std::vector<Integer>& xs, int k) {
    Integer s = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (xs[j] != 0) s += coeffs[j] * ipow(xs[j], static_cast<unsigned>(k));
    }
    return s;
}

// One coordinate of the form after dividing the whole vector by p^e and
// shifting every valuation into [0, k).
struct Rotated {
    int shifted_exp;   // v(b_j) in [0, k)
    int quotient;      // v(a_j) = e + shifted_exp + k * quotient
    Integer unit;      // unit part of a_j
    Integer b;         // p^shifted_exp * unit
};

std::vector<Rotated> rotate(const CoefficientVector& a, std::uint64_t p, int e) {
    const int k = a.degree();
    std::vector<Rotated> out;
    for (const auto& x : a.entries()) {
        const int v = valuation(x, p);
        const int shifted = ((v - e) % k + k) % k;
        Rotated r{shifted, (v - e - shifted) / k, divexact(x, pow_p(p, v)), 0};
        r.b = pow_p(p, shifted) * r.unit;
        out.push_back(std::move(r));
    }
    return out;
}

// Reachability over (partial sum mod M, some unit chosen at a valuation-0
// coordinate). Returns residues y_j with sum b_j y_j^k = 0 mod M and y_i a
// unit for some coordinate with shifted_exp = 0.
std::optional<std::vector<std::uint64_t>> residue_dp(const std::vector<Rotated>& coords, std::uint64_t p, int k,
                                                     int t, std::uint64_t m) {
    const std::size_t len = coords.size();
    struct Step {
        std::vector<std::uint64_t> unit_vals;
        std::vector<std::uint64_t> other_vals;
        std::uint64_t b;
        bool eligible;
    };
    std::vector<Step> steps;
    for (const auto& c : coords) {
        Step s;
        s.b = mod_u64(c.b, m);
        s.eligible = c.shifted_exp == 0;
        const auto vs = ValueSetPair::build(s.b, p, k, t);
        s.unit_vals = vs.unit_values;
        std::set<std::uint64_t> other;
        for (std::uint64_t x = 0; x < m; x += p) other.insert(mulmod(s.b, powmod(x, static_cast<std::uint64_t>(k), m), m));
        s.other_vals.assign(other.begin(), other.end());
        steps.push_back(std::move(s));
    }

    // reach[j][f] = states after j coordinates
    std::vector<std::array<std::vector<char>, 2>> reach(len + 1);
    for (auto& r : reach) r = {std::vector<char>(m, 0), std::vector<char>(m, 0)};
    reach[0][0][0] = 1;
    for (std::size_t j = 0; j < len; ++j) {
        const auto& st = steps[j];
        for (int f = 0; f < 2; ++f) {
            const auto& cur = reach[j][f];
            for (std::uint64_t s = 0; s < m; ++s) {
                if (!cur[s]) continue;
                for (std::uint64_t v : st.other_vals) reach[j + 1][f][(s + v) % m] = 1;
                auto& dst = reach[j + 1][(f != 0 || st.eligible) ? 1 : 0];
                for (std::uint64_t v : st.unit_vals) dst[(s + v) % m] = 1;
            }
        }
    }
    if (!reach[len][1][0]) return std::nullopt;

    std::vector<std::uint64_t> ys(len, 0);
    std::uint64_t s = 0;
    int f = 1;
    for (std::size_t j = len; j-- > 0;) {
        const auto& st = steps[j];
        bool found = false;
        for (std::uint64_t x = 0; x < m && !found; ++x) {
            const std::uint64_t val = mulmod(st.b, powmod(x, static_cast<std::uint64_t>(k), m), m);
            const std::uint64_t prev = (s + m - val) % m;
            const bool unit = x % p != 0;
            for (int fp = 0; fp < 2 && !found; ++fp) {
                const int fn = (fp != 0 || (unit && st.eligible)) ? 1 : 0;
                if (fn != f || !reach[j][fp][prev]) continue;
                ys[j] = x;
                s = prev;
                f = fp;
                found = true;
            }
        }
        if (!found) throw std::logic_error("residue DP backtrack failed");
    }
    return ys;
}

// Lifts the layer solution to a witness for `a` itself at level >= certificate_precision.
FiniteWitness lift_witness(const CoefficientVector& a, std::uint64_t p, int e, const std::vector<Rotated>& coords,
                           const std::vector<std::uint64_t>& residues, int t) {
    const int k = a.degree();
    const int vk = valuation(static_cast<std::int64_t>(k), p);
    const std::size_t len = coords.size();

    std::size_t hensel = len;
    std::vector<Integer> y(len);
    for (std::size_t j = 0; j < len; ++j) {
        y[j] = to_int(residues[j]);
        if (hensel == len && coords[j].shifted_exp == 0 && residues[j] % p != 0) hensel = j;
    }

    int top = 0;
    bool any = false;
    for (std::size_t j = 0; j < len; ++j) {
        if (y[j] == 0) continue;
        top = any ? std::max(top, coords[j].quotient) : coords[j].quotient;
        any = true;
    }
    int drop = -1;
    for (std::size_t j = 0; j < len; ++j) {
        if (y[j] == 0) continue;
        const int vx = top - coords[j].quotient + valuation(y[j], p);
        drop = drop < 0 ? vx : std::min(drop, vx);
    }
    const int vx_hensel = top - coords[hensel].quotient - drop;
    const int v_hensel = valuation(a[hensel], p);
    const int level = std::max(certificate_precision(p, k), 2 * (vk + v_hensel + (k - 1) * vx_hensel) + 1);
    const int outer = e + k * top - k * drop;  // f(x) = p^outer * g(y)
    const int target = std::max(t, level - outer);

    // Newton iteration on y_hensel for g(y) = sum b_j y_j^k.
    std::vector<Integer> b(len);
    for (std::size_t j = 0; j < len; ++j) b[j] = coords[j].b;
    const Integer pk = pow_p(p, vk);
    const Integer keep = pow_p(p, target + vk);
    const Integer prec = pow_p(p, target);
    for (int iter = 0; iter < 256; ++iter) {
        const Integer g = form_value(b, y, k);
        if (g == 0 || valuation(g, p) >= target) break;
        const Integer d = k * b[hensel] * ipow(y[hensel], static_cast<unsigned>(k - 1));
        const Integer gs = divexact(g, pk);
        const Integer ds = divexact(d, pk);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), ds.get_mpz_t(), prec.get_mpz_t());
        y[hensel] = mod_pos(y[hensel] - gs * inv, keep);
    }

    const Integer modulus = pow_p(p, level);
    FiniteWitness w;
    w.level = level;
    w.hensel_coordinate = hensel;
    for (std::size_t j = 0; j < len; ++j) {
        Integer x = 0;
        if (y[j] != 0) x = divexact(pow_p(p, top - coords[j].quotient) * y[j], pow_p(p, drop));
        w.residues.push_back(mod_pos(x, modulus));
    }
    if (!witness_certifies(a, p, w)) throw std::logic_error("lifted witness failed the Hensel check for " + a.str());
    return w;
}

// p does not divide k: the layer of valuation-0 coordinates (after rotation)
// is a diagonal form over F_p with unit coefficients, and any nontrivial zero
// of it is nonsingular.
bool unit_layer_soluble(const std::vector<Rotated>& coords, std::uint64_t p, int k) {
    std::vector<Integer> units;
    for (const auto& c : coords) {
        if (c.shifted_exp == 0) units.push_back(c.unit);
    }
    const std::size_t m = units.size();
    if (m < 2) return false;
    const auto& table = unit_class_table(p, k);
    const Integer pp = to_int(p);
    for (std::size_t i = 0; i < m; ++i) {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), units[i].get_mpz_t(), pp.get_mpz_t());
        for (std::size_t j = i + 1; j < m; ++j) {
            if (table.is_kth_power(-units[j] * inv)) return true;
        }
    }
    const std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(k), p - 1);
    if (m > g) return true;  // Chevalley-Warning for sum u_j x_j^g
    if (m < 3) return false;
    // Hasse-Weil on the smooth plane curve of degree g.
    const Integer c = to_int((g - 1) * (g - 2));
    if ((pp + 1) * (pp + 1) > c * c * pp) return true;
    if (p > kDpPrimeCap) throw ResourceBound("F_p layer with few variables beyond enumeration range", static_cast<double>(p));
    return residue_dp(coords, p, k, 1, p).has_value();
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::Soluble: return "soluble";
        case Status::Insoluble: return "insoluble";
        case Status::SolubleTrivially: return "soluble-trivially";
    }
    return "?";
}

ValueSetPair ValueSetPair::build(std::uint64_t coefficient_residue, std::uint64_t p, int k, int modulus_exponent) {
    ValueSetPair out;
    out.p = p;
    out.k = k;
    out.modulus_exponent = modulus_exponent;
    out.modulus = checked_pow(p, static_cast<unsigned>(modulus_exponent));
    if (out.modulus == 0 || out.modulus > kDpModulusCap) {
        throw ResourceBound("value set modulus too large", static_cast<double>(p) * modulus_exponent);
    }
    const std::uint64_t m = out.modulus;
    std::vector<char> unit_seen(m, 0), all_seen(m, 0);
    for (std::uint64_t x = 0; x < m; ++x) {
        const std::uint64_t v = mulmod(coefficient_residue % m, powmod(x, static_cast<std::uint64_t>(k), m), m);
        all_seen[v] = 1;
        if (x % p != 0) unit_seen[v] = 1;
    }
    for (std::uint64_t v = 0; v < m; ++v) {
        if (unit_seen[v]) out.unit_values.push_back(v);
        if (all_seen[v]) out.all_values.push_back(v);
    }
    return out;
}

bool witness_certifies(const CoefficientVector& a, std::uint64_t p, const FiniteWitness& w) {
    const int k = a.degree();
    if (w.residues.size() != a.size() || w.hensel_coordinate >= a.size() || w.level < 1) return false;
    const Integer value = form_value(a.entries(), w.residues, k);
    if (w.exact) {
        return value == 0 && std::any_of(w.residues.begin(), w.residues.end(), [](const Integer& x) { return x != 0; });
    }
    const bool primitive = std::any_of(w.residues.begin(), w.residues.end(),
                                       [&](const Integer& x) { return x != 0 && valuation(x, p) == 0; });
    if (!primitive) return false;
    if (valuation_or(value, p, w.level) < w.level) return false;
    const std::size_t i = w.hensel_coordinate;
    const Integer deriv = k * a[i] * ipow(w.residues[i], static_cast<unsigned>(k - 1));
    if (deriv == 0) return false;
    return 2 * valuation(deriv, p) < w.level;
}

SolubilityVerdict decide_qp(const CoefficientVector& a, std::uint64_t p, const DecideOptions& opts) {
    if (a.is_zero()) throw DegenerateInput("the zero form has no well-defined hypersurface");
    if (!is_prime(p)) throw PreconditionViolated("decide_qp needs a prime, got " + std::to_string(p));
    const int k = a.degree();
    SolubilityVerdict verdict;
    verdict.place = Place::finite(p);

    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) continue;
        FiniteWitness w;
        w.residues.assign(a.size(), 0);
        w.residues[i] = 1;
        w.level = certificate_precision(p, k);
        w.hensel_coordinate = i;
        w.exact = true;
        verdict.status = Status::SolubleTrivially;
        verdict.certificate_level = w.level;
        verdict.witness = std::move(w);
        return verdict;
    }

    const int t = 2 * valuation(static_cast<std::int64_t>(k), p) + 1;
    const std::uint64_t m = checked_pow(p, static_cast<unsigned>(t));
    if (t > 1 && (m == 0 || m > kDpModulusCap)) {
        throw ResourceBound("residue DP modulus too large", static_cast<double>(p) * t);
    }

    std::set<int> layers;
    for (const auto& x : a.entries()) layers.insert(valuation(x, p) % k);

    // A primitive Q_p point has a coordinate minimising v(a_j x_j^k); dividing by
    // that power of p leaves a unit coordinate at valuation 0, and Newton's
    // criterion there needs only precision t = 2 v_p(k) + 1.
    for (int e : layers) {
        const auto coords = rotate(a, p, e);
        std::optional<std::vector<std::uint64_t>> ys;
        if (t > 1) {
            ys = residue_dp(coords, p, k, t, m);
            if (!ys) continue;
        } else if (!unit_layer_soluble(coords, p, k)) {
            continue;
        }
        verdict.status = Status::Soluble;
        verdict.certificate_level = t;
        if (opts.witness && !ys && p <= kDpPrimeCap) ys = residue_dp(coords, p, k, 1, p);
        if (opts.witness && ys) {
            verdict.witness = lift_witness(a, p, e, coords, *ys, t);
            verdict.certificate_level = verdict.witness->level;
        }
        return verdict;
    }
    verdict.status = Status::Insoluble;
    verdict.certificate_level = t;
    return verdict;
}

SolubilityVerdict decide_real(const CoefficientVector& a) {
    SolubilityVerdict verdict;
    verdict.place = Place::infinity();
    if (a.has_zero_entry()) {
        verdict.status = Status::SolubleTrivially;
        return verdict;
    }
    if (a.degree() % 2 == 1) {
        verdict.status = Status::Soluble;
        verdict.real_witness = RealWitness{0, 1};
        return verdict;
    }
    std::optional<std::size_t> pos, neg;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0 && !pos) pos = i;
        if (a[i] < 0 && !neg) neg = i;
    }
    if (pos && neg) {
        verdict.status = Status::Soluble;
        verdict.real_witness = RealWitness{*pos, *neg};
    } else {
        verdict.status = Status::Insoluble;
    }
    return verdict;
}

namespace {

void add_primes_of(const Integer& x, std::set<std::uint64_t>& out) {
    for (const auto& q : prime_divisors(x)) {
        if (!q.fits_ulong_p() || q > (Integer(1) << 62)) {
            throw ResourceBound("prime divisor exceeds 62 bits", q.get_d());
        }
        out.insert(q.get_ui());
    }
}

// Primes not dividing k that may still fail: p < (k-1)(k-2) with gcd(p-1,k) > 1,
// and primes where Hasse-Weil does not force an F_p point on a diagonal curve of
// effective degree g = gcd(k, p-1) with at most g unit coordinates.
void add_small_pathological(int k, int coordinates, std::set<std::uint64_t>& out) {
    const std::uint64_t uk = static_cast<std::uint64_t>(k);
    const std::uint64_t c = (uk - 1) * (uk - 2);
    for (std::uint64_t p : primes_below(std::max<std::uint64_t>(c * c + 2, c + 1))) {
        if (uk % p == 0) continue;
        const std::uint64_t g = gcd_u64(uk, p - 1);
        if (p < c && g > 1) out.insert(p);
        if (g >= 3 && static_cast<std::uint64_t>(coordinates) <= g) {
            const std::uint64_t cg = (g - 1) * (g - 2);
            if ((p + 1) * (p + 1) <= cg * cg * p) out.insert(p);
        }
    }
}

}  // namespace

std::vector<std::uint64_t> relevant_primes(const CoefficientVector& a) {
    if (a.dimension() < 2) throw PreconditionViolated("relevant_primes needs n >= 2");
    if (a.has_zero_entry()) throw DegenerateInput("zero entry: every place is trivially soluble");
    const int k = a.degree();
    std::set<std::uint64_t> out;
    add_primes_of(Integer(k), out);
    add_small_pathological(k, static_cast<int>(a.size()), out);
    for (const auto& x : a.entries()) add_primes_of(x, out);
    return {out.begin(), out.end()};
}

EverywhereLocalReport decide_everywhere_local(const CoefficientVector& a, const EverywhereLocalOptions& opts) {
    EverywhereLocalReport report;
    if (a.has_zero_entry()) {
        report.verdicts.push_back(decide_real(a));
        return report;
    }
    auto record = [&](SolubilityVerdict v) {
        if (!v.soluble()) report.overall = false;
        report.verdicts.push_back(std::move(v));
        return !report.overall && opts.stop_at_first_failure;
    };
    if (record(decide_real(a))) return report;

    std::vector<std::uint64_t> primes;
    if (a.dimension() >= 2) {
        primes = relevant_primes(a);
    } else {
        // Binary forms: no generic-prime shortcut, -a1/a0 must be a k-th power.
        std::set<std::uint64_t> s;
        add_primes_of(Integer(a.degree()), s);
        add_small_pathological(a.degree(), 3, s);
        for (const auto& x : a.entries()) add_primes_of(x, s);
        for (std::uint64_t p : primes_below(opts.binary_prime_bound + 1)) s.insert(p);
        primes.assign(s.begin(), s.end());
    }
    for (std::uint64_t p : primes) {
        if (record(decide_qp(a, p, {opts.witnesses}))) return report;
    }
    return report;
}

}  // namespace locsol
