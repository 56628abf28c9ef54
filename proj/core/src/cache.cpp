#include "rderange/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rderange/derangements.hpp"

namespace rderange {

namespace {

constexpr std::string_view kMagic = "rderange-cache v1";

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

}  // namespace

SequenceCache SequenceCache::from_table(const DerangementTable& table, unsigned max_r,
                                        unsigned max_n) {
    SequenceCache cache;
    for (unsigned r = 0; r <= max_r; ++r) {
        auto row = table.row_copy(r);
        for (unsigned n = 0; n < row.size() && n <= max_n; ++n)
            cache.entries_[{r, n}] = row[n].get_str();
    }
    return cache;
}

std::optional<SequenceCache> SequenceCache::load(const std::filesystem::path& path,
                                                 std::string* warning) {
    auto warn = [&](const std::string& msg) {
        if (warning) *warning = msg;
        return std::nullopt;
    };
    std::ifstream in(path);
    if (!in) return warn("cache: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != kMagic) return warn("cache: bad header");

    SequenceCache cache;
    std::string body;
    bool saw_checksum = false;
    while (std::getline(in, line)) {
        if (line.rfind("checksum ", 0) == 0) {
            if (line.substr(9) != fnv1a_hex(body)) return warn("cache: checksum mismatch");
            saw_checksum = true;
            break;
        }
        body += line;
        body += '\n';
        std::istringstream ls(line);
        unsigned r, n;
        std::string value;
        if (!(ls >> r >> n >> value) || value.empty()) return warn("cache: malformed entry");
        cache.entries_[{r, n}] = value;
    }
    if (!saw_checksum) return warn("cache: missing checksum");
    return cache;
}

std::string SequenceCache::serialize() const {
    std::string body;
    for (const auto& [key, value] : entries_) {
        body += std::to_string(key.first);
        body += ' ';
        body += std::to_string(key.second);
        body += ' ';
        body += value;
        body += '\n';
    }
    std::string out(kMagic);
    out += '\n';
    out += body;
    out += "checksum ";
    out += fnv1a_hex(body);
    out += '\n';
    return out;
}

void SequenceCache::save(const std::filesystem::path& path) const {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::filesystem::path tmp = path;
    tmp += ".tmp~";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize();
        if (!out) throw std::runtime_error("cache: write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void SequenceCache::apply(DerangementTable& table) const {
    std::map<unsigned, std::vector<Int>> rows;
    for (const auto& [key, value] : entries_) {
        auto& row = rows[key.first];
        if (key.second != row.size()) continue;  // keep only the contiguous prefix
        row.emplace_back(value, 10);
    }
    // Seed lower orders first: higher rows depend on them.
    for (auto& [r, row] : rows)
        if (static_cast<long>(row.size()) - 1 > table.max_index(r)) table.seed_row(r, row);
}

std::optional<std::filesystem::path> default_cache_path() {
    if (const char* env = std::getenv("RDERANGE_CACHE")) {
        if (*env == '\0') return std::nullopt;  // explicitly disabled
        return std::filesystem::path(env);
    }
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
        return std::filesystem::path(xdg) / "rderange" / "table.cache";
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "rderange" / "table.cache";
    return std::nullopt;
}

}  // namespace rderange
