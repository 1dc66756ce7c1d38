#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "locsol/density.hpp"

namespace locsol {

/// Versioned JSON-lines store under one directory. Each file holds a header
/// line, payload lines, and a final {"sha256": ...} line over everything before it.
/// Files are written to a temporary name and renamed into place.
class Cache {
public:
    /// Bumped whenever a cached payload would change meaning.
    static constexpr int kModuleVersion = 1;

    explicit Cache(std::filesystem::path dir);

    /// `flag_dir` if non-empty, else $LOCSOL_CACHE_DIR, else no cache.
    static std::optional<Cache> resolve(const std::string& flag_dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }

    std::filesystem::path cells_path(int n, int k, std::uint64_t p) const;
    std::filesystem::path density_path(int n, int k, std::uint64_t p, Route route) const;

    /// nullopt when absent or written by another module version;
    /// CacheCorrupted when the checksum or structure is wrong.
    std::optional<CellTable> load_cells(int n, int k, std::uint64_t p) const;
    void store_cells(const CellTable& table) const;

    std::optional<Density> load_density(int n, int k, std::uint64_t p, Route route) const;
    void store_density(int n, int k, std::uint64_t p, const Density& d) const;

private:
    std::filesystem::path dir_;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Cell table through the cache when one is given.
CellTable cached_signature_cells(const Cache* cache, int n, int k, std::uint64_t p, const DensityOptions& opts = {});

/// rho_p by the given route, through the cache when one is given.
Density cached_rho_p(const Cache* cache, int n, int k, std::uint64_t p, Route route, const DensityOptions& opts = {});

}  // namespace locsol
