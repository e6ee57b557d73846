// io.hpp: INI run configuration, CSV emission and the run manifest

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"

namespace dicke {

/// Thrown for malformed or inconsistent configuration (exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Sectioned key = value configuration. Every key must be read by the task;
/// leftovers are reported by check_all_used().
class RunConfig {
public:
    static RunConfig from_file(const std::filesystem::path& path);
    static RunConfig from_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           std::optional<std::string> fallback = std::nullopt) const;
    double get_double(const std::string& section, const std::string& key,
                      std::optional<double> fallback = std::nullopt) const;
    long long get_int(const std::string& section, const std::string& key,
                      std::optional<long long> fallback = std::nullopt) const;
    bool get_bool(const std::string& section, const std::string& key,
                  std::optional<bool> fallback = std::nullopt) const;
    /// Ascending grid: "a, b, c" or "start:step:stop" (stop included within step/1e9).
    std::vector<double> get_grid(const std::string& section, const std::string& key,
                                 std::optional<std::vector<double>> fallback = std::nullopt) const;
    std::vector<long long> get_int_list(const std::string& section, const std::string& key) const;

    /// [model] omega, omega0, lambda, delta, n_atoms, two_j (default n_atoms).
    ModelParams model() const;

    void check_all_used() const;
    /// Echo of every entry in file order.
    const std::vector<std::pair<std::string, std::map<std::string, std::string>>>& sections() const {
        return sections_;
    }

private:
    const std::string* find(const std::string& section, const std::string& key) const;

    std::vector<std::pair<std::string, std::map<std::string, std::string>>> sections_;
    mutable std::set<std::pair<std::string, std::string>> used_;
};

using CsvCell = std::variant<double, long long, std::string>;

/// Shortest round-trip decimal form of a double ("nan", "inf", "-inf" for non-finite).
std::string format_double(double v);

/// Comma-separated table with a header row, '\n' line ends, UTF-8.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);
    void row(const std::vector<CsvCell>& cells);
    const std::filesystem::path& path() const { return path_; }
    void close();

private:
    std::filesystem::path path_;
    std::size_t columns_;
    std::ofstream out_;
};

std::string sha256_hex(const std::filesystem::path& path);

struct ManifestFile {
    std::string name;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

class RunManifest {
public:
    RunManifest(std::string task, const RunConfig& config, std::uint64_t seed, unsigned threads);

    /// Digest is taken now; each name may be added once.
    void add_file(const std::filesystem::path& path);
    void add_timing(const std::string& stage, double seconds);
    void add_n_max(const std::string& point, int n_max);
    void add_warning(const std::string& text);
    void write(const std::filesystem::path& path) const;

    const std::vector<ManifestFile>& files() const { return files_; }

private:
    std::string task_;
    const RunConfig& config_;
    std::uint64_t seed_;
    unsigned threads_;
    std::vector<ManifestFile> files_;
    std::vector<std::pair<std::string, double>> timings_;
    std::vector<std::pair<std::string, int>> n_max_;
    std::vector<std::string> warnings_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace dicke
