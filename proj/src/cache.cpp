#include "locsol/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include <openssl/evp.h>
#include <unistd.h>

#include "locsol/errors.hpp"
#include "locsol/records.hpp"

namespace locsol {

namespace fs = std::filesystem;

namespace {

Json header(const std::string& kind, int n, int k, std::uint64_t p) {
    return {{"format", "locsol-cache"}, {"version", Cache::kModuleVersion}, {"kind", kind}, {"n", n}, {"k", k}, {"p", p}};
}

void write_atomic(const fs::path& path, const Json& head, const std::vector<Json>& lines) {
    std::string body = head.dump() + "\n";
    for (const auto& l : lines) body += l.dump() + "\n";
    body += Json{{"sha256", sha256_hex(body)}}.dump() + "\n";

    fs::create_directories(path.parent_path());
    std::random_device rd;
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache file " + tmp.string());
        out << body;
        out.flush();
        if (!out) throw Error("short write to cache file " + tmp.string());
    }
    fs::rename(tmp, path);
}

// Header and payload lines of a verified file; nullopt if absent or stale.
std::optional<std::vector<Json>> read_verified(const fs::path& path, const std::string& kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<std::string> raw;
    for (std::string line; std::getline(in, line);) raw.push_back(line);
    const std::string where = "cache file " + path.string();
    if (raw.size() < 2) throw CacheCorrupted(where + " is truncated");

    std::string body;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) body += raw[i] + "\n";
    std::vector<Json> lines;
    try {
        const Json tail = Json::parse(raw.back());
        if (!tail.contains("sha256") || tail.at("sha256").get<std::string>() != sha256_hex(body)) {
            throw CacheCorrupted(where + " fails its checksum");
        }
        for (std::size_t i = 0; i + 1 < raw.size(); ++i) lines.push_back(Json::parse(raw[i]));
    } catch (const Json::exception& e) {
        throw CacheCorrupted(where + " is not valid JSON lines: " + e.what());
    }
    const Json& head = lines.front();
    if (head.value("format", "") != "locsol-cache" || head.value("kind", "") != kind) {
        throw CacheCorrupted(where + " has an unexpected header");
    }
    if (head.value("version", -1) != Cache::kModuleVersion) return std::nullopt;
    return lines;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

std::optional<Cache> Cache::resolve(const std::string& flag_dir) {
    if (!flag_dir.empty()) return Cache(flag_dir);
    if (const char* env = std::getenv("LOCSOL_CACHE_DIR"); env != nullptr && *env != '\0') return Cache(env);
    return std::nullopt;
}

fs::path Cache::cells_path(int n, int k, std::uint64_t p) const {
    return dir_ / ("cells-n" + std::to_string(n) + "-k" + std::to_string(k) + "-p" + std::to_string(p) + ".jsonl");
}

fs::path Cache::density_path(int n, int k, std::uint64_t p, Route route) const {
    return dir_ / ("density-n" + std::to_string(n) + "-k" + std::to_string(k) + "-p" + std::to_string(p) + "-" +
                   to_string(route) + ".jsonl");
}

std::optional<CellTable> Cache::load_cells(int n, int k, std::uint64_t p) const {
    const auto lines = read_verified(cells_path(n, k, p), "cells");
    if (!lines) return std::nullopt;
    try {
        const Json& head = lines->front();
        if (head.at("n") != n || head.at("k") != k || head.at("p") != p) {
            throw CacheCorrupted("cache file " + cells_path(n, k, p).string() + " describes another table");
        }
        Json table = {{"n", n}, {"k", k}, {"p", p}, {"class_count", head.at("class_count")}, {"cells", Json::array()}};
        for (std::size_t i = 1; i < lines->size(); ++i) table["cells"].push_back((*lines)[i]);
        return cell_table_from_json(table);
    } catch (const Json::exception& e) {
        throw CacheCorrupted("cache file " + cells_path(n, k, p).string() + ": " + e.what());
    }
}

void Cache::store_cells(const CellTable& table) const {
    Json head = header("cells", table.n, table.k, table.p);
    head["class_count"] = table.class_count;
    const Json full = to_json(table);
    std::vector<Json> lines(full.at("cells").begin(), full.at("cells").end());
    write_atomic(cells_path(table.n, table.k, table.p), head, lines);
}

std::optional<Density> Cache::load_density(int n, int k, std::uint64_t p, Route route) const {
    const auto path = density_path(n, k, p, route);
    const auto lines = read_verified(path, "density");
    if (!lines) return std::nullopt;
    try {
        if (lines->size() != 2) throw CacheCorrupted("cache file " + path.string() + " has the wrong line count");
        const auto rec = density_record_from_json((*lines)[1]);
        if (rec.n != n || rec.k != k || rec.p != p || rec.density.route != route) {
            throw CacheCorrupted("cache file " + path.string() + " describes another density");
        }
        return rec.density;
    } catch (const Json::exception& e) {
        throw CacheCorrupted("cache file " + path.string() + ": " + e.what());
    }
}

void Cache::store_density(int n, int k, std::uint64_t p, const Density& d) const {
    write_atomic(density_path(n, k, p, d.route), header("density", n, k, p), {to_json(DensityRecord{n, k, p, d})});
}

CellTable cached_signature_cells(const Cache* cache, int n, int k, std::uint64_t p, const DensityOptions& opts) {
    if (cache == nullptr) return signature_cells(n, k, p, opts);
    if (auto hit = cache->load_cells(n, k, p)) return *hit;
    auto table = signature_cells(n, k, p, opts);
    cache->store_cells(table);
    return table;
}

Density cached_rho_p(const Cache* cache, int n, int k, std::uint64_t p, Route route, const DensityOptions& opts) {
    auto compute = [&] {
        switch (route) {
            case Route::Enumeration: return Density{cached_signature_cells(cache, n, k, p, opts).soluble_measure(), route};
            case Route::ClosedForm: return rho_p_closed_form(n, k, p);
            case Route::GenericSum: return rho_p_generic_sum(n, k, p);
        }
        return rho_p_closed_form(n, k, p);
    };
    if (cache == nullptr) return compute();
    if (auto hit = cache->load_density(n, k, p, route)) return *hit;
    const Density d = compute();
    cache->store_density(n, k, p, d);
    return d;
}

}  // namespace locsol
