#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "locsol/survey.hpp"

using namespace locsol;

namespace {

// Global zero of a_0 x_0^2 + ... + a_3 x_3^2 with |x_i| <= 4; for quaternary
// quadratic forms a local point everywhere means a global one.
bool has_small_point(const std::array<long, 4>& a) {
    for (long x0 = -4; x0 <= 4; ++x0)
        for (long x1 = -4; x1 <= 4; ++x1)
            for (long x2 = -4; x2 <= 4; ++x2)
                for (long x3 = -4; x3 <= 4; ++x3) {
                    if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0) continue;
                    if (a[0] * x0 * x0 + a[1] * x1 * x1 + a[2] * x2 * x2 + a[3] * x3 * x3 == 0) return true;
                }
    return false;
}

}  // namespace

TEST_CASE("exhaustive box (3, 2, H = 2) against global points") {
    std::uint64_t expected = 0;
    for (int m = 0; m < 81; ++m) {
        std::array<long, 4> a{};
        int r = m;
        for (auto& x : a) {
            x = r % 3 - 1;
            r /= 3;
        }
        if (has_small_point(a)) ++expected;
    }
    const auto rep = survey_box(3, 2, 2, SurveyMode::box());
    CHECK(rep.total == 81);
    CHECK(rep.soluble == expected);
    CHECK(rep.proportion() == Rational(79, 81));
}

TEST_CASE("H = 1 is the zero vector alone") {
    const auto rep = survey_box(2, 2, 1, SurveyMode::box());
    CHECK(rep.total == 1);
    CHECK(rep.proportion() == 1);
}

TEST_CASE("zero-entry slice has the expected size") {
    for (std::uint64_t H : {2, 3, 5}) {
        const auto rep = survey_box(3, 3, H, SurveyMode::box());
        const double side = 2.0 * static_cast<double>(H) - 1;
        const auto all = static_cast<std::uint64_t>(std::pow(side, 4));
        const auto nonzero = static_cast<std::uint64_t>(std::pow(side - 1, 4));
        CHECK(rep.total == all);
        CHECK(rep.zero_entry == all - nonzero);
        CHECK(rep.soluble >= rep.zero_entry);
    }
}

TEST_CASE("sampling is deterministic and agrees with the exhaustive count") {
    const auto a = survey_box(3, 2, 6, SurveyMode::sample(4000, 99));
    const auto b = survey_box(3, 2, 6, SurveyMode::sample(4000, 99));
    CHECK(a == b);
    CHECK(a.total == 4000);
    const auto full = survey_box(3, 2, 6, SurveyMode::box());
    const double diff = Rational(a.proportion() - full.proportion()).get_d();
    CHECK(std::abs(diff) < 0.03);
    SurveyOptions two;
    two.jobs = 2;
    CHECK(survey_box(3, 2, 6, SurveyMode::sample(4000, 99), two) == a);
    CHECK(survey_box(3, 2, 6, SurveyMode::box(), two) == full);
}

TEST_CASE("convergence sweep and CSV") {
    SurveyOptions opts;
    opts.with_reference = true;
    opts.reference_cutoff = 200;
    const auto reps = convergence_sweep(2, 2, {10, 40}, SurveyMode::sample(3000, 1), opts);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].reference.has_value());
    CHECK(reps[1].proportion() < reps[0].proportion());
    std::ostringstream os;
    write_csv(os, reps);
    const std::string csv = os.str();
    CHECK(csv.rfind("n,k,H,mode,seed,total,soluble,proportion_num,proportion_den,ref_lo,ref_hi\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
