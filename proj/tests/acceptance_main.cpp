// Acceptance table: one PASS/FAIL line per criterion.
//   locsol_acceptance_tests [--criterion N] [--subset all|quadratic|cubic] [--verbose] [--cache-dir DIR]

#include <iostream>

#include <CLI11.hpp>

#include "locsol/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int criterion = 0;
    std::string subset = "all";
    std::string cache_dir;
    bool verbose = false;
    unsigned jobs = 1;
    app.add_option("--criterion", criterion, "run only this criterion (1..7)")->check(CLI::Range(1, 7));
    app.add_option("--subset", subset)->check(CLI::IsMember({"all", "quadratic", "cubic"}));
    app.add_option("--cache-dir", cache_dir);
    app.add_option("--jobs", jobs)->check(CLI::Range(1U, 1024U));
    app.add_flag("-v,--verbose", verbose);
    CLI11_PARSE(app, argc, argv);

    const auto cache = locsol::Cache::resolve(cache_dir);
    locsol::AcceptanceOptions opts;
    opts.subset = locsol::parse_subset(subset);
    if (criterion != 0) opts.only = criterion;
    opts.cache = cache ? &*cache : nullptr;
    opts.jobs = jobs;

    const auto results = locsol::run_acceptance(opts);
    locsol::print_acceptance(std::cout, results, verbose);
    bool ok = !results.empty();
    for (const auto& r : results) ok = ok && r.passed();
    return ok ? 0 : 1;
}
