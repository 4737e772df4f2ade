#pragma once

#include "eistheta/half_integral.hpp"

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

namespace eistheta::local_forms {

// Persistent raw-count cache, one JSON record per line:
//   {"m":..,"n":..,"q":..,"e":..,"primitive":..,"S":"..","T":"..","count":".."}
// Readers may share the file; writes go whole-file via temp + rename.
class DensityCache {
  public:
    DensityCache() = default;
    explicit DensityCache(std::string path);

    std::optional<Int> lookup(int m, int n, long q, long e, bool primitive,
                              const std::string& s_key, const std::string& t_key) const;
    void store(int m, int n, long q, long e, bool primitive, const std::string& s_key,
               const std::string& t_key, const Int& count);

    // write-temp-then-rename; no-op when pathless or clean
    void flush();

    size_t size() const;
    long long hits() const { return hits_; }

  private:
    static std::string key_of(int m, int n, long q, long e, bool primitive,
                              const std::string& s_key, const std::string& t_key);

    std::string path_;
    mutable std::shared_mutex mtx_;
    std::map<std::string, Int> entries_;
    bool dirty_ = false;
    mutable long long hits_ = 0;
};

}  // namespace eistheta::local_forms
