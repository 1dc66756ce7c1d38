#include <doctest.h>

#include "locsol/records.hpp"
#include "support.hpp"

using namespace locsol;
using testing_support::vec;

TEST_CASE("rationals round-trip") {
    Rational big(Integer("123456789012345678901234567891"), Integer(7));
    big.canonicalize();
    for (const Rational& x : {Rational(0), Rational(-7, 12), big}) {
        CHECK(rational_from_json(to_json(x)) == x);
    }
}

TEST_CASE("verdicts round-trip") {
    for (auto [a, p] : {std::pair{vec({1, 1, 3}, 2), 2UL}, {vec({1, 2, 4}, 3), 3UL}, {vec({0, 5, 7}, 3), 7UL}}) {
        const auto v = decide_qp(a, p);
        CHECK(verdict_from_json(to_json(v)) == v);
        CHECK(verdict_from_json(Json::parse(to_json(v).dump())) == v);
    }
    const auto r = decide_real(vec({1, -1, 2}, 2));
    CHECK(verdict_from_json(to_json(r)) == r);
    const auto rep = decide_everywhere_local(vec({1, 1, 1, -3}, 2));
    CHECK(everywhere_report_from_json(to_json(rep)) == rep);
}

TEST_CASE("densities, intervals, tables and surveys round-trip") {
    const DensityRecord d{2, 2, 2, rho_p_exact(2, 2, 2)};
    const Json j = to_json(d);
    CHECK(j.at("numerator") == "7");
    CHECK(j.at("denominator") == "12");
    CHECK(j.at("route") == "enumeration");
    CHECK(density_record_from_json(j) == d);
    const DensityRecord inf{3, 2, 0, rho_infinity(3, 2)};
    CHECK(to_json(inf).at("p") == "infinity");
    CHECK(density_record_from_json(to_json(inf)) == inf);

    const auto iv = rho_loc_interval(3, 3, 200);
    CHECK(interval_from_json(to_json(iv)) == iv);

    const auto t = signature_cells(2, 2, 2);
    CHECK(cell_table_from_json(to_json(t)) == t);

    SurveyOptions opts;
    opts.with_reference = true;
    opts.reference_cutoff = 100;
    const auto s = survey_box(3, 3, 3, SurveyMode::sample(200, 5), opts);
    CHECK(survey_report_from_json(to_json(s)) == s);
}
