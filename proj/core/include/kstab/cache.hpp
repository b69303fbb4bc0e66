#pragma once

#include <optional>
#include <string>

namespace kstab {

/// Content-addressed file cache under $KSTAB_CACHE_DIR (disabled when the
/// variable is unset). Keys map to <dir>/<key>.json; values are opaque
/// strings (versioned JSON documents, see README).
class DiskCache {
public:
    DiskCache() = default;
    explicit DiskCache(std::string dir) : dir_(std::move(dir)) {}

    static DiskCache from_env();

    bool enabled() const { return !dir_.empty(); }
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value) const;

private:
    std::string dir_;
};

} // namespace kstab
