#include "locsol/records.hpp"

#include "locsol/errors.hpp"

namespace locsol {

namespace {

Json int_array(const std::vector<Integer>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.get_str());
    return a;
}

std::vector<Integer> int_array_from(const Json& j) {
    std::vector<Integer> out;
    for (const auto& x : j) out.emplace_back(x.get<std::string>());
    return out;
}

Status status_from(const std::string& s) {
    if (s == "soluble") return Status::Soluble;
    if (s == "insoluble") return Status::Insoluble;
    if (s == "soluble-trivially") return Status::SolubleTrivially;
    throw PreconditionViolated("unknown status: " + s);
}

}  // namespace

Json to_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rational rational_from_json(const Json& j) {
    Rational q(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
    q.canonicalize();
    return q;
}

Json to_json(const SolubilityVerdict& v) {
    Json j;
    j["place"] = v.place.real ? Json("infinity") : Json(v.place.prime);
    j["status"] = to_string(v.status);
    j["certificate_level"] = v.certificate_level;
    j["witness"] = nullptr;
    if (v.witness) {
        j["witness"] = {{"residues", int_array(v.witness->residues)},
                        {"level", v.witness->level},
                        {"hensel_coordinate", v.witness->hensel_coordinate},
                        {"exact", v.witness->exact}};
    }
    j["real_witness"] = nullptr;
    if (v.real_witness) j["real_witness"] = {{"first", v.real_witness->first}, {"second", v.real_witness->second}};
    return j;
}

SolubilityVerdict verdict_from_json(const Json& j) {
    SolubilityVerdict v;
    v.place = j.at("place").is_string() ? Place::infinity() : Place::finite(j.at("place").get<std::uint64_t>());
    v.status = status_from(j.at("status").get<std::string>());
    v.certificate_level = j.at("certificate_level").get<int>();
    if (!j.at("witness").is_null()) {
        const auto& w = j.at("witness");
        v.witness = FiniteWitness{int_array_from(w.at("residues")), w.at("level").get<int>(),
                                  w.at("hensel_coordinate").get<std::size_t>(), w.at("exact").get<bool>()};
    }
    if (!j.at("real_witness").is_null()) {
        const auto& w = j.at("real_witness");
        v.real_witness = RealWitness{w.at("first").get<std::size_t>(), w.at("second").get<std::size_t>()};
    }
    return v;
}

Json to_json(const EverywhereLocalReport& r) {
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    return {{"overall", r.overall}, {"verdicts", verdicts}, {"generic_primes_skipped", r.generic_primes_skipped}};
}

EverywhereLocalReport everywhere_report_from_json(const Json& j) {
    EverywhereLocalReport r;
    r.overall = j.at("overall").get<bool>();
    r.generic_primes_skipped = j.at("generic_primes_skipped").get<bool>();
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
    return r;
}

Json to_json(const DensityRecord& r) {
    return {{"n", r.n},
            {"k", r.k},
            {"p", r.p == 0 ? Json("infinity") : Json(r.p)},
            {"numerator", r.density.value.get_num().get_str()},
            {"denominator", r.density.value.get_den().get_str()},
            {"route", to_string(r.density.route)}};
}

DensityRecord density_record_from_json(const Json& j) {
    DensityRecord r;
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    r.p = j.at("p").is_string() ? 0 : j.at("p").get<std::uint64_t>();
    r.density.value = Rational(Integer(j.at("numerator").get<std::string>()), Integer(j.at("denominator").get<std::string>()));
    r.density.value.canonicalize();
    r.density.route = parse_route(j.at("route").get<std::string>());
    return r;
}

Json to_json(const CertifiedInterval& iv, int digits) {
    const auto [lo, hi] = decimalize(iv, digits);
    return {{"n", iv.n},
            {"k", iv.k},
            {"P", iv.cutoff},
            {"lo", to_json(iv.lo)},
            {"hi", to_json(iv.hi)},
            {"finite_lo", to_json(iv.finite_lo)},
            {"finite_hi", to_json(iv.finite_hi)},
            {"tail", {{"A", to_json(iv.tail_constant)}, {"s", iv.tail_exponent}}},
            {"decimal", {{"lo", lo}, {"hi", hi}}}};
}

CertifiedInterval interval_from_json(const Json& j) {
    CertifiedInterval iv;
    iv.n = j.at("n").get<int>();
    iv.k = j.at("k").get<int>();
    iv.cutoff = j.at("P").get<std::uint64_t>();
    iv.lo = rational_from_json(j.at("lo"));
    iv.hi = rational_from_json(j.at("hi"));
    iv.finite_lo = rational_from_json(j.at("finite_lo"));
    iv.finite_hi = rational_from_json(j.at("finite_hi"));
    iv.tail_constant = rational_from_json(j.at("tail").at("A"));
    iv.tail_exponent = j.at("tail").at("s").get<int>();
    return iv;
}

Json to_json(const SurveyReport& r, int digits) {
    Json j = {{"n", r.n},
              {"k", r.k},
              {"H", r.H},
              {"mode", r.mode.str()},
              {"count", r.mode.count},
              {"seed", r.mode.seed},
              {"total", r.total},
              {"soluble", r.soluble},
              {"zero_entry", r.zero_entry},
              {"proportion", to_json(r.proportion())}};
    j["reference"] = r.reference ? to_json(*r.reference, digits) : Json(nullptr);
    return j;
}

SurveyReport survey_report_from_json(const Json& j) {
    SurveyReport r;
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    r.H = j.at("H").get<std::uint64_t>();
    r.mode.exhaustive = j.at("mode").get<std::string>() == "exhaustive";
    r.mode.count = j.at("count").get<std::uint64_t>();
    r.mode.seed = j.at("seed").get<std::uint64_t>();
    r.total = j.at("total").get<std::uint64_t>();
    r.soluble = j.at("soluble").get<std::uint64_t>();
    r.zero_entry = j.at("zero_entry").get<std::uint64_t>();
    if (!j.at("reference").is_null()) r.reference = interval_from_json(j.at("reference"));
    return r;
}

Json to_json(const CellTable& t) {
    Json cells = Json::array();
    for (const auto& c : t.cells) {
        Json letters = Json::array();
        for (const auto& [e, cls] : c.letters) letters.push_back({e, cls});
        cells.push_back({{"letters", letters}, {"measure", to_json(c.measure)}, {"soluble", c.soluble}});
    }
    return {{"p", t.p}, {"k", t.k}, {"n", t.n}, {"class_count", t.class_count}, {"cells", cells}};
}

CellTable cell_table_from_json(const Json& j) {
    CellTable t;
    t.p = j.at("p").get<std::uint64_t>();
    t.k = j.at("k").get<int>();
    t.n = j.at("n").get<int>();
    t.class_count = j.at("class_count").get<int>();
    for (const auto& c : j.at("cells")) {
        SignatureCell cell;
        for (const auto& l : c.at("letters")) cell.letters.emplace_back(l.at(0).get<int>(), l.at(1).get<int>());
        cell.measure = rational_from_json(c.at("measure"));
        cell.soluble = c.at("soluble").get<bool>();
        t.cells.push_back(std::move(cell));
    }
    return t;
}

Json to_json(const NormalForm& nf) {
    return {{"source", int_array(nf.source.entries())},
            {"p", nf.p},
            {"k", nf.source.degree()},
            {"exps", nf.reduced_exps.exps},
            {"residues", int_array(nf.unit_residues)},
            {"classes", nf.class_ids},
            {"residue_precision", nf.residue_precision},
            {"gamma",
             {{"scalar_shift", nf.gamma.scalar_shift},
              {"kth_power_shifts", nf.gamma.kth_power_shifts},
              {"permutation", nf.gamma.permutation}}}};
}

}  // namespace locsol
