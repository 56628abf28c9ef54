/**
 * @file cache.hpp
 * @brief On-disk cache of computed D_r(n) prefixes.
 *
 * Plain text, canonical (r, n) ordering, decimal values, FNV-1a checksum:
 *
 *     rderange-cache v1
 *     <r> <n> <value>
 *     ...
 *     checksum <16 hex digits>
 *
 * Loading then saving an unchanged cache is byte-identical. The cache is
 * advisory: a corrupt file is reported and ignored, never trusted.
 */
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "rderange/bigint.hpp"

namespace rderange {

class DerangementTable;

class SequenceCache {
public:
    /// Harvest all rows of the table (rows above the caps are truncated).
    static SequenceCache from_table(const DerangementTable& table, unsigned max_r = 8,
                                    unsigned max_n = 1024);

    /// Parse a cache file. Returns nullopt (with a diagnostic in *warning)
    /// on a missing, malformed, or checksum-failing file.
    static std::optional<SequenceCache> load(const std::filesystem::path& path,
                                             std::string* warning = nullptr);

    /// Serialize to the canonical byte representation.
    std::string serialize() const;

    /// Atomic write: temp file in the same directory, then rename.
    void save(const std::filesystem::path& path) const;

    /// Seed a table with the cached rows (contiguous prefixes only).
    void apply(DerangementTable& table) const;

    const std::map<std::pair<unsigned, unsigned>, std::string>& entries() const {
        return entries_;
    }

private:
    // (r, n) -> decimal value; the map keeps canonical ordering.
    std::map<std::pair<unsigned, unsigned>, std::string> entries_;
};

/// Resolve the cache location: $RDERANGE_CACHE if set (empty disables),
/// otherwise $XDG_CACHE_HOME/rderange/table.cache or
/// $HOME/.cache/rderange/table.cache; nullopt when unresolvable.
std::optional<std::filesystem::path> default_cache_path();

}  // namespace rderange
