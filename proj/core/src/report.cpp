#include "specdisc/report.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace specdisc {

const char* version() { return "specdisc 0.1.0"; }

ConfigParseError::ConfigParseError(ConfigError err) : err_(std::move(err)) {
    std::ostringstream os;
    os << "config error";
    if (err_.line > 0) os << " at line " << err_.line;
    if (!err_.key.empty()) os << " (key '" << err_.key << "')";
    os << ": " << err_.message;
    text_ = os.str();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
    ExperimentConfig config;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError({lineno, "", "expected 'key = value'"});
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigParseError({lineno, "", "empty key"});
        if (config.values_.count(key))
            throw ConfigParseError({lineno, key, "duplicate key"});
        config.values_[key] = value;
        config.lines_[key] = lineno;
    }
    return config;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError({0, path, "cannot open config file"});
    std::ostringstream os;
    os << in.rdbuf();
    return parse_string(os.str());
}

bool ExperimentConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception& e) {
        throw ConfigParseError({lines_.count(key) ? lines_.at(key) : 0, key,
                                std::string("not a number: ") + e.what()});
    }
}

std::int64_t ExperimentConfig::get_int(const std::string& key, std::int64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception& e) {
        throw ConfigParseError({lines_.count(key) ? lines_.at(key) : 0, key,
                                std::string("not an integer: ") + e.what()});
    }
}

std::string ExperimentConfig::require_string(const std::string& key) const {
    if (!has(key)) throw ConfigParseError({0, key, "missing required key"});
    return values_.at(key);
}

double ExperimentConfig::require_double(const std::string& key) const {
    if (!has(key)) throw ConfigParseError({0, key, "missing required key"});
    return get_double(key, 0.0);
}

void write_plot_data(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("write_plot_data: length mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_plot_data: cannot open " + path);
    out.precision(17);
    for (std::size_t i = 0; i < xs.size(); ++i) out << xs[i] << " " << ys[i] << "\n";
}

namespace {

using nlohmann::json;

void compare_node(const json& a, const json& b, const std::string& path, double atol, double rtol,
                  std::vector<GoldenDiff>& out) {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>();
        const double y = b.get<double>();
        if (!(std::abs(x - y) <= atol + rtol * std::abs(y)))
            out.push_back({path, a.dump(), b.dump()});
        return;
    }
    if (a.type() != b.type()) {
        out.push_back({path, a.dump(), b.dump()});
        return;
    }
    if (a.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) {
                out.push_back({path + "/" + it.key(), it.value().dump(), "<missing>"});
                continue;
            }
            compare_node(it.value(), b.at(it.key()), path + "/" + it.key(), atol, rtol, out);
        }
        for (auto it = b.begin(); it != b.end(); ++it)
            if (!a.contains(it.key()))
                out.push_back({path + "/" + it.key(), "<missing>", it.value().dump()});
        return;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) {
            out.push_back({path + "/#size", std::to_string(a.size()), std::to_string(b.size())});
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            compare_node(a[i], b[i], path + "/" + std::to_string(i), atol, rtol, out);
        return;
    }
    if (a != b) out.push_back({path, a.dump(), b.dump()});
}

}  // namespace

std::vector<GoldenDiff> golden_compare(const std::string& actual_json,
                                       const std::string& golden_json, double atol, double rtol) {
    const json a = json::parse(actual_json);
    const json b = json::parse(golden_json);
    std::vector<GoldenDiff> out;
    compare_node(a, b, "", atol, rtol, out);
    return out;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::int64_t v = std::stoll(text);
        return {v, v};
    }
    const std::int64_t lo = std::stoll(text.substr(0, dots));
    const std::int64_t hi = std::stoll(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("parse_range: descending range");
    return {lo, hi};
}

}  // namespace specdisc
