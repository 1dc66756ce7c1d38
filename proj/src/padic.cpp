#include "locsol/padic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "locsol/errors.hpp"

namespace locsol {

namespace {

constexpr std::uint64_t kExplicitTableCap = std::uint64_t{1} << 22;

Integer unit_part(const Integer& x, std::uint64_t p, int v) {
    Integer u;
    mpz_divexact(u.get_mpz_t(), x.get_mpz_t(), ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned>(v)).get_mpz_t());
    return u;
}

std::vector<std::uint64_t> small_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

CoefficientVector::CoefficientVector(std::vector<Integer> entries, int degree)
    : entries_(std::move(entries)), degree_(degree) {
    if (entries_.size() < 2) throw PreconditionViolated("a coefficient vector needs at least two entries");
    if (degree_ < 2) throw PreconditionViolated("degree must be at least 2");
}

Integer CoefficientVector::max_norm() const {
    Integer m = 0;
    for (const auto& a : entries_) m = std::max<Integer>(m, abs(a));
    return m;
}

bool CoefficientVector::has_zero_entry() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const Integer& a) { return a == 0; });
}

bool CoefficientVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& a) { return a == 0; });
}

std::string CoefficientVector::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? ", " : "") << entries_[i].get_str();
    os << ')';
    return os.str();
}

ValuationVector ValuationVector::canonical() const {
    std::vector<int> best;
    for (int c = 0; c < modulus; ++c) {
        std::vector<int> shifted;
        shifted.reserve(exps.size());
        for (int e : exps) shifted.push_back(((e + c) % modulus + modulus) % modulus);
        std::sort(shifted.begin(), shifted.end());
        if (best.empty() || shifted < best) best = std::move(shifted);
    }
    return {best, modulus};
}

ValuationVector valuations(const CoefficientVector& a, std::uint64_t p) {
    ValuationVector v;
    v.modulus = a.degree();
    for (const auto& x : a.entries()) v.exps.push_back(valuation(x, p));
    return v;
}

UnitClassTable::UnitClassTable(std::uint64_t p, int k) : p_(p), k_(k) {
    if (!is_prime(p)) throw PreconditionViolated("unit class table needs a prime");
    if (k < 2) throw PreconditionViolated("degree must be at least 2");
    precision_ = 2 * valuation(static_cast<std::int64_t>(k), p) + 1;
    modulus_ = checked_pow(p, static_cast<unsigned>(precision_));

    if (modulus_ != 0 && modulus_ <= kExplicitTableCap) {
        const std::uint64_t m = modulus_;
        std::vector<std::uint64_t> powers;
        std::vector<char> seen(m, 0);
        for (std::uint64_t x = 1; x < m; ++x) {
            if (x % p == 0) continue;
            const std::uint64_t y = powmod(x, static_cast<std::uint64_t>(k), m);
            if (!seen[y]) {
                seen[y] = 1;
                powers.push_back(y);
            }
        }
        class_of_.assign(m, -1);
        for (std::uint64_t u = 1; u < m; ++u) {
            if (u % p == 0 || class_of_[u] >= 0) continue;
            const auto id = static_cast<std::int32_t>(reps_.size());
            reps_.push_back(u);
            for (std::uint64_t h : powers) class_of_[mulmod(u, h, m)] = id;
        }
        return;
    }

    if (precision_ != 1 || modulus_ == 0) {
        throw ResourceBound("unit class table modulus too large", static_cast<double>(p) * precision_);
    }
    // p does not divide k: u is a k-th power iff u^((p-1)/g) = 1, g = gcd(k, p-1).
    const std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(k), p - 1);
    char_exponent_ = (p - 1) / g;
    const auto g_primes = small_prime_factors(g);
    std::uint64_t zeta = 1;
    for (std::uint64_t y = 2; g > 1; ++y) {
        const std::uint64_t z = powmod(y, char_exponent_, p);
        const bool generator = std::all_of(g_primes.begin(), g_primes.end(),
                                           [&](std::uint64_t q) { return powmod(z, g / q, p) != 1; });
        if (generator) {
            zeta = z;
            break;
        }
    }
    for (std::uint64_t j = 0, z = 1; j < g; ++j, z = mulmod(z, zeta, p)) roots_.push_back(z);
    reps_.assign(g, 0);
    std::uint64_t found = 0;
    for (std::uint64_t y = 1; found < g; ++y) {
        const auto c = static_cast<std::size_t>(class_of_residue(y));
        if (reps_[c] == 0) {
            reps_[c] = y;
            ++found;
        }
    }
}

int UnitClassTable::class_of_residue(std::uint64_t r) const {
    r %= modulus_;
    if (r % p_ == 0) throw DegenerateInput("class of a non-unit");
    if (is_explicit()) return class_of_[r];
    const std::uint64_t z = powmod(r, char_exponent_, p_);
    const auto it = std::find(roots_.begin(), roots_.end(), z);
    return static_cast<int>(it - roots_.begin());
}

int UnitClassTable::class_of(const Integer& unit) const {
    return class_of_residue(mod_u64(unit, modulus_));
}

int UnitClassTable::multiply(int a, int b) const {
    return class_of_residue(mulmod(representative(a), representative(b), modulus_));
}

std::vector<std::vector<std::uint64_t>> UnitClassTable::classes() const {
    if (!is_explicit()) throw PreconditionViolated("class member lists need an explicit table");
    std::vector<std::vector<std::uint64_t>> out(reps_.size());
    for (std::uint64_t r = 0; r < modulus_; ++r) {
        if (class_of_[r] >= 0) out[static_cast<std::size_t>(class_of_[r])].push_back(r);
    }
    return out;
}

const UnitClassTable& unit_class_table(std::uint64_t p, int k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<UnitClassTable>> tables;
    std::lock_guard lock(mu);
    auto& slot = tables[{p, k}];
    if (!slot) slot = std::make_unique<UnitClassTable>(p, k);
    return *slot;
}

int certificate_precision(std::uint64_t p, int k) {
    return 2 * (valuation(static_cast<std::int64_t>(k), p) + k - 1) + 1;
}

CoefficientVector NormalForm::as_vector() const {
    std::vector<Integer> out;
    const Integer pp(static_cast<unsigned long>(p));
    for (std::size_t j = 0; j < unit_residues.size(); ++j) {
        out.push_back(ipow(pp, static_cast<unsigned>(reduced_exps.exps[j])) * unit_residues[j]);
    }
    return {std::move(out), source.degree()};
}

CoefficientVector NormalForm::reconstruct_source() const {
    const int k = source.degree();
    const Integer pp(static_cast<unsigned long>(p));
    std::vector<Integer> out(source.size());
    for (std::size_t j = 0; j < unit_residues.size(); ++j) {
        const std::size_t s = gamma.permutation[j];
        const int v = reduced_exps.exps[j] + k * gamma.kth_power_shifts[s] - gamma.scalar_shift;
        out[s] = ipow(pp, static_cast<unsigned>(v)) * unit_residues[j];
    }
    return {std::move(out), k};
}

NormalForm normalize(const CoefficientVector& a, std::uint64_t p) {
    if (a.has_zero_entry()) throw DegenerateInput("normal form needs nonzero entries");
    const int k = a.degree();
    const auto& table = unit_class_table(p, k);
    const int precision = certificate_precision(p, k);
    const Integer modulus = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned>(precision));
    const std::size_t len = a.size();

    std::vector<int> v(len), cls(len);
    std::vector<Integer> residue(len);
    for (std::size_t i = 0; i < len; ++i) {
        v[i] = valuation(a[i], p);
        const Integer u = unit_part(a[i], p, v[i]);
        cls[i] = table.class_of(u);
        mpz_fdiv_r(residue[i].get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
    }

    using Key = std::vector<std::tuple<int, int, Integer>>;
    Key best_key;
    std::vector<std::size_t> best_order;
    int best_shift = 0;
    for (int c = 0; c < k; ++c) {
        std::vector<std::size_t> order(len);
        std::iota(order.begin(), order.end(), 0);
        auto entry = [&](std::size_t i) { return std::make_tuple((v[i] + c) % k, cls[i], residue[i]); };
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return entry(x) < entry(y); });
        Key key;
        for (std::size_t i : order) key.push_back(entry(i));
        if (c == 0 || key < best_key) {
            best_key = std::move(key);
            best_order = std::move(order);
            best_shift = c;
        }
    }

    NormalForm nf{a, p, {{}, k}, {}, {}, precision, {}};
    nf.gamma.scalar_shift = best_shift;
    nf.gamma.permutation = best_order;
    nf.gamma.kth_power_shifts.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        nf.gamma.kth_power_shifts[i] = (v[i] + best_shift) / k;
    }
    for (std::size_t j = 0; j < len; ++j) {
        const std::size_t i = best_order[j];
        nf.reduced_exps.exps.push_back((v[i] + best_shift) % k);
        nf.unit_residues.push_back(residue[i]);
        nf.class_ids.push_back(cls[i]);
    }
    return nf;
}

std::string to_string(TypeTag t) {
    switch (t) {
        case TypeTag::I: return "I";
        case TypeTag::II: return "II";
        case TypeTag::III: return "III";
        case TypeTag::None: return "None";
    }
    return "?";
}

TypeTag classify_type(const CoefficientVector& a, std::uint64_t p) {
    if (a.has_zero_entry()) throw DegenerateInput("type classification needs nonzero entries");
    const int k = a.degree();
    const auto& table = unit_class_table(p, k);
    const Integer modulus(static_cast<unsigned long>(table.modulus()));

    std::map<int, std::vector<Integer>> layers;
    for (const auto& x : a.entries()) {
        const int v = valuation(x, p);
        layers[v % k].push_back(unit_part(x, p, v));
    }
    if (std::any_of(layers.begin(), layers.end(), [](const auto& kv) { return kv.second.size() >= 3; })) {
        return TypeTag::I;
    }
    for (const auto& [e, units] : layers) {
        if (units.size() != 2) continue;
        Integer inv;
        mpz_invert(inv.get_mpz_t(), units[0].get_mpz_t(), modulus.get_mpz_t());
        if (table.is_kth_power(-units[1] * inv)) return TypeTag::II;
    }
    // Every layer now has at most two entries and each pair has a non-k-th-power ratio.
    if (std::all_of(layers.begin(), layers.end(), [](const auto& kv) { return kv.second.size() <= 2; })) {
        return TypeTag::III;
    }
    return TypeTag::None;
}

}  // namespace locsol
