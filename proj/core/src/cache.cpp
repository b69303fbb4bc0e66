#include "kstab/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kstab {

DiskCache DiskCache::from_env() {
    const char* dir = std::getenv("KSTAB_CACHE_DIR");
    if (!dir || !*dir) return DiskCache();
    return DiskCache(dir);
}

std::optional<std::string> DiskCache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::filesystem::path path = std::filesystem::path(dir_) / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void DiskCache::put(const std::string& key, const std::string& value) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return; // cache is best-effort
    std::filesystem::path path = std::filesystem::path(dir_) / (key + ".json");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << value;
    }
    std::filesystem::rename(tmp, path, ec);
}

} // namespace kstab
