#include "locsol/classification.hpp"

#include <algorithm>
#include <set>

#include "locsol/errors.hpp"
#include "locsol/solubility.hpp"

namespace locsol {

namespace {

using Key = std::vector<SignatureLetter>;

std::string letters_str(const Key& key) {
    std::string s = "[";
    for (std::size_t i = 0; i < key.size(); ++i) {
        s += (i ? " " : "") + std::to_string(key[i].first) + ":" + std::to_string(key[i].second);
    }
    return s + "]";
}

CoefficientVector vec(std::initializer_list<long> xs, int k) {
    std::vector<Integer> out;
    for (long x : xs) out.emplace_back(x);
    return {std::move(out), k};
}

std::set<Key> orbit_keys_of(const std::vector<CoefficientVector>& reps, std::uint64_t p) {
    std::set<Key> out;
    for (const auto& a : reps) out.insert(orbit_key(signature_of(a, p)));
    return out;
}

// Cells whose verdict set is pinned down by a list of orbit representatives.
void check_listed_orbits(ClassificationReport& report, const std::vector<CoefficientVector>& reps, bool reps_are_soluble) {
    const auto expected = orbit_keys_of(reps, report.p);
    for (const auto& a : reps) {
        if (decide_qp(a, report.p, {false}).soluble() != reps_are_soluble) {
            report.mismatches.push_back("listed representative " + a.str() + " has the wrong verdict");
        }
    }
    const auto table = signature_cells(report.n, report.k, report.p);
    std::set<Key> found;
    for (const auto& cell : table.cells) {
        ++report.checked;
        if (cell.soluble == reps_are_soluble) found.insert(orbit_key({report.p, report.k, cell.letters}));
    }
    for (const auto& key : found) {
        if (!expected.count(key)) {
            report.mismatches.push_back("unlisted orbit " + letters_str(key) +
                                        (reps_are_soluble ? " is soluble" : " is insoluble"));
        }
    }
    for (const auto& key : expected) {
        if (!found.count(key)) report.mismatches.push_back("listed orbit " + letters_str(key) + " not realised");
    }
}

void check_all_soluble(ClassificationReport& report) {
    const auto table = signature_cells(report.n, report.k, report.p);
    for (const auto& cell : table.cells) {
        ++report.checked;
        if (!cell.soluble) {
            const LocalSignature s{report.p, report.k, cell.letters};
            report.mismatches.push_back("insoluble cell " + s.representative().str());
        }
    }
}

// {+-u mod 9} for units u
std::set<int> pm_mod9(const std::vector<std::uint64_t>& us) {
    std::set<int> out;
    for (auto u : us) {
        out.insert(static_cast<int>(u % 9));
        out.insert(static_cast<int>((9 - u % 9) % 9));
    }
    return out;
}

const std::set<int> kBadCubicSet = {1, 2, 4, 5, 7, 8};

void check_cubic_curve(ClassificationReport& report) {
    std::vector<std::uint64_t> units;
    for (std::uint64_t u = 1; u < 27; ++u) {
        if (u % 3 != 0) units.push_back(u);
    }
    for (auto u0 : units) {
        for (auto u1 : units) {
            for (auto u2 : units) {
                auto decide = [&](long a, long b, long c) { return decide_qp(vec({a, b, c}, 3), 3, {false}).soluble(); };
                const long a = static_cast<long>(u0), b = static_cast<long>(u1), c = static_cast<long>(u2);
                const bool pm = (u0 % 9 == u1 % 9) || ((u0 + u1) % 9 == 0);
                const std::pair<bool, bool> clauses[] = {
                    {decide(a, 3 * b, 9 * c), false},
                    {decide(a, b, 9 * c), pm},
                    {decide(a, b, 3 * c), true},
                    {decide(a, b, c), pm_mod9({u0, u1, u2}) != kBadCubicSet},
                };
                const std::string shapes[] = {"(u0, 3u1, 9u2)", "(u0, u1, 9u2)", "(u0, u1, 3u2)", "(u0, u1, u2)"};
                for (int i = 0; i < 4; ++i) {
                    ++report.checked;
                    if (clauses[i].first != clauses[i].second) {
                        report.mismatches.push_back(shapes[i] + " with u = (" + std::to_string(u0) + ", " +
                                                    std::to_string(u1) + ", " + std::to_string(u2) + ")");
                    }
                }
            }
        }
    }
}

void check_cubic_surface(ClassificationReport& report) {
    const std::set<std::vector<int>> always = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 0, 1, 2}};
    const auto& table = unit_class_table(3, 3);
    const auto cells = signature_cells(3, 3, 3);
    for (const auto& cell : cells.cells) {
        ++report.checked;
        const LocalSignature sig{3, 3, cell.letters};
        ValuationVector v{{}, 3};
        for (const auto& [e, cls] : cell.letters) v.exps.push_back(e);
        const auto canon = v.canonical().exps;
        bool expected = false;
        if (always.count(canon)) {
            expected = true;
        } else if (canon == std::vector<int>{0, 0, 0, 2}) {
            // shift so that three coordinates sit at valuation 0
            for (int c = 0; c < 3; ++c) {
                std::vector<std::uint64_t> units;
                for (const auto& [e, cls] : cell.letters) {
                    if ((e + c) % 3 == 0) units.push_back(table.representative(cls));
                }
                if (units.size() == 3) {
                    expected = pm_mod9(units) != kBadCubicSet;
                    break;
                }
            }
        } else {
            report.mismatches.push_back("valuation class outside the known list: " + sig.representative().str());
            continue;
        }
        if (cell.soluble != expected) {
            report.mismatches.push_back("cell " + sig.representative().str() + (cell.soluble ? " soluble" : " insoluble"));
        }
    }
}

}  // namespace

std::vector<SignatureLetter> orbit_key(const LocalSignature& s) {
    const auto& table = unit_class_table(s.p, s.k);
    Key best;
    for (int c = 0; c < s.k; ++c) {
        for (int w = 0; w < table.class_count(); ++w) {
            Key key;
            for (const auto& [e, cls] : s.per_coordinate) key.emplace_back((e + c) % s.k, table.multiply(cls, w));
            std::sort(key.begin(), key.end());
            if (best.empty() || key < best) best = std::move(key);
        }
    }
    return best;
}

bool classification_supported(std::uint64_t p, int k, int n) {
    return n >= 2 && ((p == 2 && k == 2) || (p == 3 && k == 3));
}

ClassificationReport verify_classification(std::uint64_t p, int k, int n) {
    if (!classification_supported(p, k, n)) {
        throw UnsupportedPair("no known classification for (p, k, n) = (" + std::to_string(p) + ", " +
                              std::to_string(k) + ", " + std::to_string(n) + ")");
    }
    ClassificationReport report{p, k, n, 0, {}};
    if (k == 2 && n == 2) {
        check_listed_orbits(report,
                            {vec({1, 1, 3}, 2), vec({1, 1, 7}, 2), vec({1, 3, 7}, 2), vec({1, 1, 6}, 2),
                             vec({1, 1, 14}, 2), vec({1, 5, 2}, 2), vec({1, 7, 2}, 2), vec({1, 7, 6}, 2)},
                            true);
    } else if (k == 2 && n == 3) {
        check_listed_orbits(report,
                            {vec({1, 1, 1, 1}, 2), vec({1, 1, 5, 5}, 2), vec({1, 1, 2, 2}, 2), vec({1, 1, 10, 10}, 2),
                             vec({1, 3, 2, 6}, 2), vec({1, 3, 10, 14}, 2), vec({1, 5, 6, 14}, 2)},
                            false);
    } else if (k == 3 && n == 2) {
        check_cubic_curve(report);
    } else if (k == 3 && n == 3) {
        check_cubic_surface(report);
    } else {
        check_all_soluble(report);
    }
    return report;
}

void require_classification(std::uint64_t p, int k, int n) {
    const auto report = verify_classification(p, k, n);
    if (!report.passed()) throw ClassificationMismatch(report.mismatches.front());
}

}  // namespace locsol
