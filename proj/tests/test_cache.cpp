#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "locsol/cache.hpp"
#include "locsol/errors.hpp"

using namespace locsol;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("locsol-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
}

}  // namespace

TEST_CASE("sha256 of known strings") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("warm reads equal cold computation") {
    TempDir tmp;
    const Cache cache(tmp.path);
    CHECK_FALSE(cache.load_cells(2, 3, 3).has_value());
    const auto cold = cached_signature_cells(&cache, 2, 3, 3);
    CHECK(fs::exists(cache.cells_path(2, 3, 3)));
    CHECK(cached_signature_cells(&cache, 2, 3, 3) == cold);
    CHECK(cold == signature_cells(2, 3, 3));

    const auto d = cached_rho_p(&cache, 2, 3, 3, Route::Enumeration);
    CHECK(d.value == Rational(13831, 19773));
    CHECK(cache.load_density(2, 3, 3, Route::Enumeration) == d);
    CHECK(cached_rho_p(&cache, 3, 3, 7, Route::ClosedForm) == rho_p_closed_form(3, 3, 7));
    CHECK(cache.load_density(3, 3, 7, Route::ClosedForm).has_value());
}

TEST_CASE("corrupted files are rejected") {
    TempDir tmp;
    const Cache cache(tmp.path);
    cached_signature_cells(&cache, 2, 2, 2);
    const auto path = cache.cells_path(2, 2, 2);
    std::string body = slurp(path);
    const auto pos = body.find("true");
    REQUIRE(pos != std::string::npos);
    body.replace(pos, 4, "fals");
    spit(path, body);
    CHECK_THROWS_AS(cache.load_cells(2, 2, 2), CacheCorrupted);
    spit(path, "{\"format\":\"locsol-cache\"}\n");
    CHECK_THROWS_AS(cache.load_cells(2, 2, 2), CacheCorrupted);
    spit(path, "not json\n{}\n");
    CHECK_THROWS_AS(cache.load_cells(2, 2, 2), CacheCorrupted);
}

TEST_CASE("files from another module version are ignored") {
    TempDir tmp;
    const Cache cache(tmp.path);
    cache.store_density(2, 2, 5, rho_p_closed_form(2, 2, 5));
    const auto path = cache.density_path(2, 2, 5, Route::ClosedForm);
    std::string body = slurp(path);
    const std::string head = body.substr(0, body.find('\n') + 1);
    std::string rest = body.substr(head.size());
    rest = rest.substr(0, rest.rfind("{\"sha256\""));
    std::string old_head = head;
    const std::string tag = "\"version\":" + std::to_string(Cache::kModuleVersion);
    REQUIRE(old_head.find(tag) != std::string::npos);
    old_head.replace(old_head.find(tag), tag.size(), "\"version\":0");
    const std::string stale = old_head + rest;
    spit(path, stale + "{\"sha256\":\"" + sha256_hex(stale) + "\"}\n");
    CHECK_FALSE(cache.load_density(2, 2, 5, Route::ClosedForm).has_value());
    // Recomputed and rewritten on the next cached read.
    CHECK(cached_rho_p(&cache, 2, 2, 5, Route::ClosedForm).value == Rational(19, 24));
    CHECK(cache.load_density(2, 2, 5, Route::ClosedForm).has_value());
}

TEST_CASE("writes leave no temporary files") {
    TempDir tmp;
    const Cache cache(tmp.path / "nested");
    for (int n = 2; n <= 3; ++n) cached_signature_cells(&cache, n, 2, 3);
    for (const auto& e : fs::directory_iterator(cache.dir())) {
        CHECK(e.path().extension() == ".jsonl");
    }
}
