#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specdisc {

const char* version();

/// Parse error with the offending location; the CLI maps this to exit
/// code 2.
struct ConfigError {
    int line = 0;
    std::string key;
    std::string message;
};

class ConfigParseError : public std::exception {
public:
    explicit ConfigParseError(ConfigError err);
    const char* what() const noexcept override { return text_.c_str(); }
    const ConfigError& error() const { return err_; }

private:
    ConfigError err_;
    std::string text_;
};

/// Key-value experiment configuration: `key = value` lines, '#' comments.
/// Keys are dot-scoped strings; values are strings parsed on demand.
class ExperimentConfig {
public:
    static ExperimentConfig parse_string(const std::string& text);
    static ExperimentConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;

    /// Required variants throw ConfigParseError naming the key.
    std::string require_string(const std::string& key) const;
    double require_double(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
};

/// Two-column x,y plot data, consumable by any plotter.
void write_plot_data(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& ys);

struct GoldenDiff {
    std::string path;
    std::string actual;
    std::string expected;
};

/// Tolerance-aware structural comparison of two JSON documents. Numbers
/// match when |a-b| <= atol + rtol*|b|; everything else must match exactly.
std::vector<GoldenDiff> golden_compare(const std::string& actual_json,
                                       const std::string& golden_json, double atol = 1e-12,
                                       double rtol = 1e-12);

/// Range expression "a..b" or single "a".
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text);

}  // namespace specdisc
