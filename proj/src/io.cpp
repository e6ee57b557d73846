// io.cpp: configuration parsing, CSV formatting and manifest digests

#include "dicke/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include "json.hpp"

#include "dicke/errors.hpp"

namespace dicke {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError(where + ": '" + text + "' is not a number");
    return v;
}

long long parse_int(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError(where + ": '" + text + "' is not an integer");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
    boost::property_tree::ptree tree;
    std::istringstream is(text);
    try {
        boost::property_tree::ini_parser::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    RunConfig cfg;
    for (const auto& [name, section] : tree) {
        if (section.empty() && !section.data().empty())
            throw ConfigError("config: key '" + name + "' outside any section");
        std::map<std::string, std::string> entries;
        for (const auto& [key, value] : section) entries[key] = trim(value.data());
        cfg.sections_.emplace_back(name, std::move(entries));
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

const std::string* RunConfig::find(const std::string& section, const std::string& key) const {
    for (const auto& [name, entries] : sections_) {
        if (name != section) continue;
        const auto it = entries.find(key);
        if (it != entries.end()) {
            used_.insert({section, key});
            return &it->second;
        }
    }
    return nullptr;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
    for (const auto& [name, entries] : sections_)
        if (name == section && entries.count(key)) return true;
    return false;
}

std::string RunConfig::get_string(const std::string& section, const std::string& key,
                                  std::optional<std::string> fallback) const {
    if (const auto* v = find(section, key)) return *v;
    if (fallback) return *fallback;
    throw ConfigError("config: missing [" + section + "] " + key);
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             std::optional<double> fallback) const {
    if (const auto* v = find(section, key)) return parse_double(*v, "[" + section + "] " + key);
    if (fallback) return *fallback;
    throw ConfigError("config: missing [" + section + "] " + key);
}

long long RunConfig::get_int(const std::string& section, const std::string& key,
                             std::optional<long long> fallback) const {
    if (const auto* v = find(section, key)) return parse_int(*v, "[" + section + "] " + key);
    if (fallback) return *fallback;
    throw ConfigError("config: missing [" + section + "] " + key);
}

bool RunConfig::get_bool(const std::string& section, const std::string& key,
                         std::optional<bool> fallback) const {
    if (const auto* v = find(section, key)) {
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        throw ConfigError("[" + section + "] " + key + ": '" + *v + "' is not a boolean");
    }
    if (fallback) return *fallback;
    throw ConfigError("config: missing [" + section + "] " + key);
}

std::vector<double> RunConfig::get_grid(const std::string& section, const std::string& key,
                                        std::optional<std::vector<double>> fallback) const {
    const auto* v = find(section, key);
    if (!v) {
        if (fallback) return *fallback;
        throw ConfigError("config: missing [" + section + "] " + key);
    }
    const std::string where = "[" + section + "] " + key;
    std::vector<double> grid;
    if (v->find(':') != std::string::npos) {
        const auto parts = split(*v, ':');
        if (parts.size() != 3) throw ConfigError(where + ": range must be start:step:stop");
        const double a = parse_double(parts[0], where);
        const double h = parse_double(parts[1], where);
        const double b = parse_double(parts[2], where);
        if (!(h > 0.0) || !(b >= a)) throw ConfigError(where + ": need step > 0 and stop >= start");
        const auto n = static_cast<long long>(std::floor((b - a) / h * (1.0 + 1e-12) + 1e-9));
        if (n > 10'000'000) throw ConfigError(where + ": grid too large");
        for (long long i = 0; i <= n; ++i) grid.push_back(a + static_cast<double>(i) * h);
    } else {
        for (const auto& part : split(*v, ',')) grid.push_back(parse_double(part, where));
    }
    if (grid.empty()) throw ConfigError(where + ": empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError(where + ": grid must be strictly ascending");
    return grid;
}

std::vector<long long> RunConfig::get_int_list(const std::string& section,
                                               const std::string& key) const {
    const auto* v = find(section, key);
    if (!v) throw ConfigError("config: missing [" + section + "] " + key);
    std::vector<long long> out;
    for (const auto& part : split(*v, ',')) out.push_back(parse_int(part, "[" + section + "] " + key));
    if (out.empty()) throw ConfigError("[" + section + "] " + key + ": empty list");
    return out;
}

ModelParams RunConfig::model() const {
    ModelParams p;
    p.omega = get_double("model", "omega", 1.0);
    p.omega0 = get_double("model", "omega0", 1.0);
    p.lambda = get_double("model", "lambda", 0.0);
    p.delta = get_double("model", "delta", 0.0);
    p.n_atoms = static_cast<int>(get_int("model", "n_atoms"));
    p.two_j = static_cast<int>(get_int("model", "two_j", p.n_atoms));
    try {
        p.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("[model] ") + e.what());
    }
    return p;
}

void RunConfig::check_all_used() const {
    for (const auto& [name, entries] : sections_)
        for (const auto& [key, value] : entries)
            if (!used_.count({name, key}))
                throw ConfigError("config: unknown key [" + name + "] " + key);
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), columns_(header.size()), out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
    if (cells.size() != columns_) throw ConsistencyError("csv row width differs from header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, double>) out_ << format_double(c);
                else out_ << c;
            },
            cells[i]);
    }
    out_ << '\n';
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw Error("failed writing " + path_.string());
}

std::string sha256_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

RunManifest::RunManifest(std::string task, const RunConfig& config, std::uint64_t seed,
                         unsigned threads)
    : task_(std::move(task)), config_(config), seed_(seed), threads_(threads) {}

void RunManifest::add_file(const std::filesystem::path& path) {
    const std::string name = path.filename().string();
    for (const auto& f : files_)
        if (f.name == name) throw ConsistencyError("file " + name + " emitted twice");
    files_.push_back({name, sha256_hex(path), std::filesystem::file_size(path)});
}

void RunManifest::add_timing(const std::string& stage, double seconds) {
    timings_.emplace_back(stage, seconds);
}

void RunManifest::add_n_max(const std::string& point, int n_max) { n_max_.emplace_back(point, n_max); }

void RunManifest::add_warning(const std::string& text) { warnings_.push_back(text); }

void RunManifest::write(const std::filesystem::path& path) const {
    using nlohmann::ordered_json;
    ordered_json j;
    j["tool"] = "dicke-lab";
    j["version"] = DICKE_VERSION;
    j["task"] = task_;
    j["seed"] = seed_;
    j["threads"] = threads_;
    ordered_json cfg = ordered_json::object();
    for (const auto& [name, entries] : config_.sections()) {
        ordered_json s = ordered_json::object();
        for (const auto& [k, v] : entries) s[k] = v;
        cfg[name] = s;
    }
    j["config"] = cfg;
    ordered_json files = ordered_json::array();
    for (const auto& f : files_) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    j["files"] = files;
    ordered_json timings = ordered_json::object();
    for (const auto& [stage, s] : timings_) timings[stage] = s;
    timings["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    j["timings"] = timings;
    ordered_json nmax = ordered_json::array();
    for (const auto& [point, n] : n_max_) nmax.push_back({{"point", point}, {"n_max_used", n}});
    j["n_max_used"] = nmax;
    j["warnings"] = warnings_;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace dicke
