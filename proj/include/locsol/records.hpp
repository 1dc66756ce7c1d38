#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "locsol/density.hpp"
#include "locsol/padic.hpp"
#include "locsol/product.hpp"
#include "locsol/solubility.hpp"
#include "locsol/survey.hpp"

namespace locsol {

using Json = nlohmann::json;

// Big integers travel as decimal strings; rationals as {"num", "den"}.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const SolubilityVerdict& v);
SolubilityVerdict verdict_from_json(const Json& j);

Json to_json(const EverywhereLocalReport& r);
EverywhereLocalReport everywhere_report_from_json(const Json& j);

/// {n, k, p | "infinity", numerator, denominator, route}; p = 0 stands for infinity.
struct DensityRecord {
    int n = 0;
    int k = 0;
    std::uint64_t p = 0;
    Density density;

    bool operator==(const DensityRecord&) const = default;
};

Json to_json(const DensityRecord& r);
DensityRecord density_record_from_json(const Json& j);

/// {n, k, P, lo, hi, decimal: {lo, hi}, ...}; the decimal bracket is output only.
Json to_json(const CertifiedInterval& iv, int digits = 6);
CertifiedInterval interval_from_json(const Json& j);

Json to_json(const SurveyReport& r, int digits = 6);
SurveyReport survey_report_from_json(const Json& j);

Json to_json(const CellTable& t);
CellTable cell_table_from_json(const Json& j);

Json to_json(const NormalForm& nf);

}  // namespace locsol
