#include "locsol/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "locsol/errors.hpp"
#include "locsol/solubility.hpp"

namespace locsol {

namespace {

bool everywhere_soluble(const std::vector<std::int64_t>& entries, int k) {
    std::vector<Integer> xs;
    xs.reserve(entries.size());
    for (auto x : entries) xs.emplace_back(static_cast<long>(x));
    const CoefficientVector a(std::move(xs), k);
    if (a.has_zero_entry()) return true;
    EverywhereLocalOptions opts;
    opts.stop_at_first_failure = true;
    opts.witnesses = false;
    return decide_everywhere_local(a, opts).overall;
}

std::int64_t draw_entry(std::mt19937_64& rng, std::uint64_t width, std::int64_t offset) {
    const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / width) * width;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return static_cast<std::int64_t>(x % width) - offset;
}

}  // namespace

Rational SurveyReport::proportion() const {
    if (total == 0) return 0;
    Rational q(Integer(static_cast<unsigned long>(soluble)), Integer(static_cast<unsigned long>(total)));
    q.canonicalize();
    return q;
}

Rational SurveyReport::proportion_nonzero() const {
    if (total == zero_entry) return 0;
    Rational q(Integer(static_cast<unsigned long>(soluble - zero_entry)),
               Integer(static_cast<unsigned long>(total - zero_entry)));
    q.canonicalize();
    return q;
}

SurveyReport survey_box(int n, int k, std::uint64_t H, const SurveyMode& mode, const SurveyOptions& opts) {
    if (n < 1 || k < 2) throw PreconditionViolated("survey needs n >= 1, k >= 2");
    if (H < 1) throw PreconditionViolated("H must be at least 1");
    if (H > (std::uint64_t{1} << 31)) throw PreconditionViolated("H above 2^31 is not supported");
    if (!mode.exhaustive && mode.count == 0) throw PreconditionViolated("sample count must be positive");

    const std::size_t len = static_cast<std::size_t>(n) + 1;
    const std::uint64_t width = 2 * H - 1;
    const auto offset = static_cast<std::int64_t>(H - 1);

    SurveyReport report;
    report.n = n;
    report.k = k;
    report.H = H;
    report.mode = mode;

    std::vector<std::int64_t> samples;
    std::uint64_t total = 0;
    if (mode.exhaustive) {
        const std::uint64_t size = checked_pow(width, static_cast<unsigned>(len));
        if (size == 0 || size > opts.exhaustive_cap) {
            throw ResourceBound("exhaustive box exceeds cap", std::pow(static_cast<double>(width), static_cast<double>(len)));
        }
        total = size;
    } else {
        total = mode.count;
        samples.resize(total * len);
        std::mt19937_64 rng(mode.seed);
        for (auto& x : samples) x = draw_entry(rng, width, offset);
    }

    std::atomic<std::uint64_t> soluble{0}, zero{0}, next{0};
    constexpr std::uint64_t chunk = 256;
    auto worker = [&] {
        std::vector<std::int64_t> v(len);
        std::uint64_t local_soluble = 0, local_zero = 0;
        for (std::uint64_t start = next.fetch_add(chunk); start < total; start = next.fetch_add(chunk)) {
            for (std::uint64_t i = start; i < std::min(total, start + chunk); ++i) {
                if (mode.exhaustive) {
                    std::uint64_t r = i;
                    for (std::size_t j = 0; j < len; ++j, r /= width) v[j] = static_cast<std::int64_t>(r % width) - offset;
                } else {
                    std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(i * len), len, v.begin());
                }
                const bool has_zero = std::find(v.begin(), v.end(), 0) != v.end();
                local_zero += has_zero ? 1 : 0;
                if (has_zero || everywhere_soluble(v, k)) ++local_soluble;
            }
        }
        soluble += local_soluble;
        zero += local_zero;
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1U, opts.jobs); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    report.total = total;
    report.soluble = soluble;
    report.zero_entry = zero;
    if (opts.with_reference && (k == 2 || k == 3) && n >= 2) {
        report.reference = rho_loc_interval(n, k, opts.reference_cutoff, {Route::ClosedForm, opts.jobs});
    }
    return report;
}

std::vector<SurveyReport> convergence_sweep(int n, int k, const std::vector<std::uint64_t>& Hs, const SurveyMode& mode,
                                            const SurveyOptions& opts) {
    for (std::size_t i = 1; i < Hs.size(); ++i) {
        if (Hs[i] <= Hs[i - 1]) throw PreconditionViolated("H values must be strictly increasing");
    }
    std::vector<SurveyReport> out;
    std::optional<CertifiedInterval> reference;
    for (std::uint64_t H : Hs) {
        SurveyOptions o = opts;
        o.with_reference = opts.with_reference && !reference;
        out.push_back(survey_box(n, k, H, mode, o));
        if (out.back().reference) reference = out.back().reference;
        out.back().reference = reference;
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<SurveyReport>& reports, int digits) {
    os << "n,k,H,mode,seed,total,soluble,proportion_num,proportion_den,ref_lo,ref_hi\n";
    for (const auto& r : reports) {
        const Rational q = r.proportion();
        os << r.n << ',' << r.k << ',' << r.H << ',' << r.mode.str() << ',';
        if (!r.mode.exhaustive) os << r.mode.seed;
        os << ',' << r.total << ',' << r.soluble << ',' << q.get_num().get_str() << ',' << q.get_den().get_str() << ',';
        if (r.reference) {
            const auto [lo, hi] = decimalize(*r.reference, digits);
            os << lo << ',' << hi;
        } else {
            os << ',';
        }
        os << '\n';
    }
}

}  // namespace locsol
