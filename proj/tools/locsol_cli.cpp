// locsol: command-line front end for local solubility of diagonal forms.
//
// Exit codes: 0 success (soluble / all checks pass), 1 insoluble or a failed
// check, 2 usage error or unsupported input, 3 resource cap or internal error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locsol/acceptance.hpp"
#include "locsol/cache.hpp"
#include "locsol/classification.hpp"
#include "locsol/density.hpp"
#include "locsol/errors.hpp"
#include "locsol/padic.hpp"
#include "locsol/product.hpp"
#include "locsol/records.hpp"
#include "locsol/solubility.hpp"
#include "locsol/survey.hpp"

namespace {

using namespace locsol;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

constexpr const char* kAssumption =
    "rho(n,k) = rho_loc(n,k) is conditional on the Brauer-Manin obstruction being the only one; only rho_loc is computed";

struct Global {
    std::uint64_t cutoff = 10'000;
    int digits = 6;
    std::uint64_t seed = 42;
    std::string cache_dir;
    unsigned jobs = 1;
    std::string route = "closed";
    std::string format = "json";
};

CoefficientVector parse_coefficients(const std::vector<std::string>& raw, int k) {
    std::vector<Integer> xs;
    for (const auto& s : raw) {
        Integer x;
        if (x.set_str(s, 10) != 0) throw CLI::ValidationError("coefficient", "not an integer: " + s);
        xs.push_back(x);
    }
    return {std::move(xs), k};
}

std::string text_verdict(const SolubilityVerdict& v) {
    std::ostringstream os;
    os << v.place.str() << ": " << to_string(v.status);
    if (v.witness) {
        os << " witness (";
        for (std::size_t i = 0; i < v.witness->residues.size(); ++i) os << (i ? ", " : "") << v.witness->residues[i].get_str();
        os << ") mod p^" << v.witness->level;
    }
    if (v.real_witness) os << " sign pair (" << v.real_witness->first << ", " << v.real_witness->second << ")";
    return os.str();
}

void emit(const Global& g, const Json& j, const std::string& text, const std::string& csv = {}) {
    if (g.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (g.format == "csv" && !csv.empty()) {
        std::cout << csv;
    } else {
        std::cout << text << "\n";
    }
}

int cmd_decide(const Global& g, int k, const std::string& place, const std::vector<std::string>& raw) {
    const auto a = parse_coefficients(raw, k);
    if (a.is_zero()) throw DegenerateInput("the zero form is not a hypersurface");
    if (!place.empty()) {
        SolubilityVerdict v;
        if (place == "infinity" || place == "inf" || place == "real") {
            v = decide_real(a);
        } else {
            v = decide_qp(a, std::stoull(place));
        }
        emit(g, to_json(v), text_verdict(v), "place,status\n" + v.place.str() + "," + to_string(v.status) + "\n");
        return v.soluble() ? kExitOk : kExitNegative;
    }
    const auto report = decide_everywhere_local(a);
    std::string text = std::string(report.overall ? "everywhere locally soluble" : "not everywhere locally soluble");
    std::string csv = "place,status\n";
    for (const auto& v : report.verdicts) {
        text += "\n  " + text_verdict(v);
        csv += v.place.str() + "," + to_string(v.status) + "\n";
    }
    if (report.generic_primes_skipped) text += "\n  other primes: soluble without testing";
    emit(g, to_json(report), text, csv);
    return report.overall ? kExitOk : kExitNegative;
}

int cmd_rho(const Global& g, int n, int k, const std::string& place, bool infinity, bool loc) {
    const auto cache = Cache::resolve(g.cache_dir);
    if (loc) {
        const auto iv = rho_loc_interval(n, k, g.cutoff, {parse_route(g.route), g.jobs});
        Json j = to_json(iv, g.digits);
        j["note"] = kAssumption;
        const auto [lo, hi] = decimalize(iv, g.digits);
        std::ostringstream text;
        text << "rho_loc(" << n << "," << k << ") in [" << lo << ", " << hi << "]  (P = " << g.cutoff << ")\n"
             << "note: " << kAssumption;
        std::ostringstream csv;
        csv << "n,k,P,lo,hi\n" << n << "," << k << "," << g.cutoff << "," << lo << "," << hi << "\n";
        emit(g, j, text.str(), csv.str());
        return kExitOk;
    }
    DensityRecord rec{n, k, 0, {}};
    if (infinity) {
        rec.density = rho_infinity(n, k);
    } else {
        if (place.empty()) throw CLI::ValidationError("rho", "give -p PRIME, --infinity or --loc");
        rec.p = std::stoull(place);
        rec.density = cached_rho_p(cache ? &*cache : nullptr, n, k, rec.p, parse_route(g.route), {10'000'000, g.jobs});
    }
    const CertifiedInterval point{n, k, rec.density.value, rec.density.value, {}, {}, 0, {}, 0};
    const auto [lo, hi] = decimalize(point, g.digits);
    Json j = to_json(rec);
    j["decimal"] = {{"lo", lo}, {"hi", hi}};
    std::ostringstream text;
    text << "rho_" << (rec.p == 0 ? std::string("infinity") : std::to_string(rec.p)) << "(" << n << "," << k
         << ") = " << rec.density.value.get_str() << "  in [" << lo << ", " << hi << "]  (" << to_string(rec.density.route)
         << ")";
    std::ostringstream csv;
    csv << "n,k,p,numerator,denominator,route\n"
        << n << "," << k << "," << (rec.p == 0 ? std::string("infinity") : std::to_string(rec.p)) << ","
        << rec.density.value.get_num().get_str() << "," << rec.density.value.get_den().get_str() << ","
        << to_string(rec.density.route) << "\n";
    emit(g, j, text.str(), csv.str());
    return kExitOk;
}

int cmd_survey(const Global& g, int n, int k, const std::vector<std::uint64_t>& Hs, std::uint64_t samples, bool reference) {
    const SurveyMode mode = samples == 0 ? SurveyMode::box() : SurveyMode::sample(samples, g.seed);
    SurveyOptions opts;
    opts.jobs = g.jobs;
    opts.with_reference = reference;
    opts.reference_cutoff = g.cutoff;
    const auto reports = convergence_sweep(n, k, Hs, mode, opts);
    Json arr = Json::array();
    std::ostringstream text, csv;
    for (const auto& r : reports) {
        arr.push_back(to_json(r, g.digits));
        text << "H=" << r.H << ": " << r.soluble << "/" << r.total << " = " << to_decimal(r.proportion(), g.digits, false)
             << "...\n";
    }
    write_csv(csv, reports, g.digits);
    std::string t = text.str();
    if (!t.empty()) t.pop_back();
    emit(g, arr, t, csv.str());
    return kExitOk;
}

int cmd_verify(const Global& g, const std::string& subset, bool verbose) {
    const auto cache = Cache::resolve(g.cache_dir);
    AcceptanceOptions opts;
    opts.subset = parse_subset(subset);
    opts.cache = cache ? &*cache : nullptr;
    opts.jobs = g.jobs;
    const auto results = run_acceptance(opts);
    bool all = true;
    for (const auto& r : results) all = all && r.passed();
    if (g.format == "json") {
        Json arr = Json::array();
        for (const auto& r : results) {
            Json checks = Json::array();
            for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}});
        }
        std::cout << Json{{"passed", all}, {"criteria", arr}}.dump(2) << "\n";
    } else {
        print_acceptance(std::cout, results, verbose);
    }
    return all ? kExitOk : kExitNegative;
}

int cmd_classify(const Global& g, int k, std::uint64_t p, const std::vector<std::string>& raw) {
    const auto a = parse_coefficients(raw, k);
    const TypeTag t = classify_type(a, p);
    const auto v = decide_qp(a, p, {false});
    Json j = {{"coefficients", a.str()}, {"p", p}, {"k", k}, {"type", to_string(t)}, {"status", to_string(v.status)}};
    emit(g, j, "type " + to_string(t) + " at p = " + std::to_string(p) + " (" + to_string(v.status) + ")");
    return kExitOk;
}

int cmd_orbit(const Global& g, int k, std::uint64_t p, const std::vector<std::string>& raw) {
    const auto a = parse_coefficients(raw, k);
    const auto nf = normalize(a, p);
    std::ostringstream text;
    text << "normal form " << nf.as_vector().str() << " (exps";
    for (int e : nf.reduced_exps.exps) text << " " << e;
    text << ", classes";
    for (int c : nf.class_ids) text << " " << c;
    text << ")";
    emit(g, to_json(nf), text.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local solubility and local densities of diagonal forms sum a_i x_i^k"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    if (const char* env = std::getenv("LOCSOL_CACHE_DIR")) g.cache_dir = env;
    app.add_option("--cutoff", g.cutoff, "prime cutoff P for rho_loc")->capture_default_str();
    app.add_option("--digits", g.digits, "fractional digits in decimal brackets")->check(CLI::Range(1, 200))->capture_default_str();
    app.add_option("--seed", g.seed, "sampling seed")->capture_default_str();
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default $LOCSOL_CACHE_DIR)");
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1U, 1024U))->capture_default_str();
    app.add_option("--route", g.route, "density route")
        ->check(CLI::IsMember({"closed", "enum", "generic"}))
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();

    int k = 2, n = 2;
    std::string place;
    std::vector<std::string> coeffs;
    std::uint64_t prime = 2;

    auto* decide = app.add_subcommand("decide", "decide solubility at one place or everywhere");
    decide->add_option("-k,--degree", k, "degree")->required()->check(CLI::Range(2, 64));
    decide->add_option("-p,--place", place, "prime or 'infinity'; omit for every place");
    decide->add_option("coefficients", coeffs, "a_0 ... a_n")->required()->expected(2, -1);

    bool infinity = false, loc = false;
    auto* rho = app.add_subcommand("rho", "local density or certified rho_loc interval");
    rho->add_option("-n", n, "dimension")->required()->check(CLI::Range(1, 64));
    rho->add_option("-k,--degree", k, "degree")->required()->check(CLI::Range(2, 64));
    auto* rho_p = rho->add_option("-p,--prime", place, "prime");
    auto* rho_inf = rho->add_flag("--infinity", infinity, "real density");
    auto* rho_loc = rho->add_flag("--loc", loc, "everywhere-local proportion");
    rho_p->excludes(rho_inf)->excludes(rho_loc);
    rho_inf->excludes(rho_loc);

    std::vector<std::uint64_t> Hs;
    std::uint64_t samples = 0;
    bool reference = false;
    auto* survey = app.add_subcommand("survey", "count everywhere locally soluble vectors in boxes");
    survey->add_option("-n", n, "dimension")->required()->check(CLI::Range(1, 64));
    survey->add_option("-k,--degree", k, "degree")->required()->check(CLI::Range(2, 64));
    survey->add_option("-H,--height", Hs, "box radii (|a| < H), comma separated")->required()->delimiter(',');
    survey->add_option("--samples", samples, "sample this many vectors per box (0 = exhaustive)");
    survey->add_flag("--reference", reference, "attach the rho_loc interval");

    std::string subset = "all";
    bool verbose = false;
    auto* verify = app.add_subcommand("verify-paper", "run the acceptance table");
    verify->add_option("--subset", subset, "all, quadratic or cubic")->check(CLI::IsMember({"all", "quadratic", "cubic"}));
    verify->add_flag("-v,--verbose", verbose, "list every check");

    auto* classify = app.add_subcommand("classify", "type I/II/III of a coefficient vector at p");
    classify->add_option("-k,--degree", k, "degree")->required()->check(CLI::Range(2, 64));
    classify->add_option("-p,--prime", prime, "prime")->required();
    classify->add_option("coefficients", coeffs, "a_0 ... a_n")->required()->expected(2, -1);

    auto* orbit = app.add_subcommand("orbit", "normal form of a coefficient vector at p");
    orbit->add_option("-k,--degree", k, "degree")->required()->check(CLI::Range(2, 64));
    orbit->add_option("-p,--prime", prime, "prime")->required();
    orbit->add_option("coefficients", coeffs, "a_0 ... a_n")->required()->expected(2, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decide) return cmd_decide(g, k, place, coeffs);
        if (*rho) return cmd_rho(g, n, k, place, infinity, loc);
        if (*survey) return cmd_survey(g, n, k, Hs, samples, reference);
        if (*verify) return cmd_verify(g, subset, verbose);
        if (*classify) return cmd_classify(g, k, prime, coeffs);
        if (*orbit) return cmd_orbit(g, k, prime, coeffs);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedPair& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceBound& e) {
        std::cerr << "error: " << e.what() << " (needs about " << e.required() << ")\n";
        return kExitResource;
    } catch (const CacheCorrupted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: not a number: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: number out of range\n";
        return kExitUsage;
    }
    return kExitUsage;
}
