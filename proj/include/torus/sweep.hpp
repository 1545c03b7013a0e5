// Sweep records, CSV/manifest emission, baseline pinning and a small
// deterministic parallel map for independent sweep cells.

#pragma once

#include <atomic>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <thread>
#include <variant>

#include <json.hpp>

#include "torus/common.hpp"
#include "torus/fit.hpp"

namespace torus {

using Cell = std::variant<long long, double, std::string>;

/// One row of an experiment output. Records of one sweep share the schema
/// (same ordered parameter and measure names).
struct SweepRecord {
    std::string experiment;
    std::vector<std::pair<std::string, Cell>> params;
    std::vector<std::pair<std::string, double>> measures;
    // provenance
    std::uint64_t seed = 0;
    std::string resolution;  // textual, e.g. "4096x4096"
    int oversample = 0;
    std::string version;
};

inline constexpr const char* tool_version = "0.1.0";

/// 17 significant digits: round-trip safe for doubles.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<double>(c)) return format_real(std::get<double>(c));
    return std::get<std::string>(c);
}

/// Header from the first record; one line per record, fixed column order.
inline void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    if (records.empty()) return;
    const auto& first = records.front();
    os << "experiment";
    for (const auto& [name, _] : first.params) os << ',' << name;
    for (const auto& [name, _] : first.measures) os << ',' << name;
    os << ",seed,resolution,oversample,tool_version\n";
    for (const auto& r : records) {
        os << r.experiment;
        for (const auto& [_, v] : r.params) os << ',' << format_cell(v);
        for (const auto& [_, v] : r.measures) os << ',' << format_real(v);
        os << ',' << r.seed << ',' << r.resolution << ',' << r.oversample << ',' << r.version << '\n';
    }
}

inline void write_manifest(std::ostream& os, const std::string& experiment, const std::string& args,
                           std::uint64_t seed, const std::string& resolution, int oversample,
                           std::time_t timestamp) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["args"] = args;
    j["seed"] = seed;
    j["resolution"] = resolution;
    j["oversample"] = oversample;
    j["tool_version"] = tool_version;
    j["timestamp"] = static_cast<long long>(timestamp);
    os << j.dump(2) << '\n';
}

/// Parallel map over n independent cells with per-slot outputs; results are
/// identical to the sequential order because cells never share state.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const int use = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(use));
    for (int t = 0; t < use; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Pins value under key on first sight, otherwise checks the stored value to
/// the given relative tolerance. Returns true when within tolerance.
class BaselineStore {
public:
    explicit BaselineStore(std::string path) : path_(std::move(path)) {
        std::ifstream in(path_);
        if (in.good()) {
            try {
                in >> data_;
            } catch (...) {
                data_ = nlohmann::json::object();
            }
        }
        if (!data_.is_object()) data_ = nlohmann::json::object();
    }

    bool pin_or_check(const std::string& key, double value, double rel_tol, double* stored = nullptr) {
        if (!data_.contains(key)) {
            data_[key] = value;
            dirty_ = true;
            if (stored) *stored = value;
            return true;
        }
        const double ref = data_[key].get<double>();
        if (stored) *stored = ref;
        const double denom = std::max(std::abs(ref), 1e-300);
        return std::abs(value - ref) / denom <= rel_tol;
    }

    bool contains(const std::string& key) const { return data_.contains(key); }
    double get(const std::string& key) const { return data_.at(key).get<double>(); }

    void save() {
        if (!dirty_) return;
        std::ofstream out(path_);
        out << data_.dump(2) << '\n';
        dirty_ = false;
    }

    ~BaselineStore() {
        try {
            save();
        } catch (...) {
        }
    }

private:
    std::string path_;
    nlohmann::json data_;
    bool dirty_ = false;
};

}  // namespace torus
