#include "eistheta/density_cache.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

namespace eistheta::local_forms {

using nlohmann::json;

DensityCache::DensityCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) continue;
        std::string key = key_of(j["m"].get<int>(), j["n"].get<int>(), j["q"].get<long>(),
                                 j["e"].get<long>(), j["primitive"].get<bool>(),
                                 j["S"].get<std::string>(), j["T"].get<std::string>());
        entries_[key] = Int(j["count"].get<std::string>());
    }
}

std::string DensityCache::key_of(int m, int n, long q, long e, bool primitive,
                                 const std::string& s_key, const std::string& t_key) {
    std::ostringstream os;
    os << m << '|' << n << '|' << q << '|' << e << '|' << (primitive ? 1 : 0) << '|' << s_key
       << '|' << t_key;
    return os.str();
}

std::optional<Int> DensityCache::lookup(int m, int n, long q, long e, bool primitive,
                                        const std::string& s_key, const std::string& t_key) const {
    std::shared_lock lk(mtx_);
    auto it = entries_.find(key_of(m, n, q, e, primitive, s_key, t_key));
    if (it == entries_.end()) return std::nullopt;
    ++hits_;
    return it->second;
}

void DensityCache::store(int m, int n, long q, long e, bool primitive, const std::string& s_key,
                         const std::string& t_key, const Int& count) {
    std::unique_lock lk(mtx_);
    entries_[key_of(m, n, q, e, primitive, s_key, t_key)] = count;
    dirty_ = true;
}

void DensityCache::flush() {
    std::unique_lock lk(mtx_);
    if (path_.empty() || !dirty_) return;
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        for (const auto& [key, count] : entries_) {
            // key layout: m|n|q|e|prim|S|T
            std::istringstream is(key);
            std::string m, n, q, e, prim, s, t;
            std::getline(is, m, '|');
            std::getline(is, n, '|');
            std::getline(is, q, '|');
            std::getline(is, e, '|');
            std::getline(is, prim, '|');
            std::getline(is, s, '|');
            std::getline(is, t, '|');
            json j{{"m", std::stoi(m)},      {"n", std::stoi(n)},      {"q", std::stol(q)},
                   {"e", std::stol(e)},      {"primitive", prim == "1"}, {"S", s},
                   {"T", t},                 {"count", count.get_str()}};
            out << j.dump() << '\n';
        }
    }
    std::rename(tmp.c_str(), path_.c_str());
    dirty_ = false;
}

size_t DensityCache::size() const {
    std::shared_lock lk(mtx_);
    return entries_.size();
}

}  // namespace eistheta::local_forms
