#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace numenc::cli {

using json = nlohmann::json;

inline std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Run manifest emitted next to every command's outputs.
struct ManifestBuilder {
    json doc;
    explicit ManifestBuilder(const std::string& command) {
        doc["command"] = command;
        doc["tool_version"] = "0.1.0";
        doc["started_at"] = iso_timestamp();
        doc["artifacts"] = json::array();
    }
    void set_config(const json& config) {
        doc["config"] = config;
        doc["config_hash"] = fnv1a_hash(config.dump());
    }
    void add_artifact(const std::string& path) { doc["artifacts"].push_back(path); }
    void write(const std::string& path);
};

/// Serial work loop or a small pull-based thread pool when jobs > 1.
inline void run_units(int jobs, int n_units, const std::function<void(int)>& work) {
    if (jobs <= 1) {
        for (int i = 0; i < n_units; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_units) return;
                work(i);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace numenc::cli
