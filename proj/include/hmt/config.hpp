#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmt/cost.hpp"

namespace hmt {

/// Line-oriented `key = value` configuration with dotted section keys,
/// e.g. `cost.kind = power`. '#' starts a comment; blank lines are
/// ignored. Unknown keys are kept (commands read what they need).
class RunConfig {
public:
    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    std::vector<double> get_doubles(const std::string& key) const; // comma/space separated

    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Builds the cost from the `cost.*` block: cost.kind (power|anisotropic),
/// cost.dim, cost.p, and cost.matrix (row-major, anisotropic only).
CostSpec cost_from_config(const RunConfig& cfg);

} // namespace hmt
