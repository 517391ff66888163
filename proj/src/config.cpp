#include "hmt/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmt {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config: empty key on line " + std::to_string(lineno));
        cfg.values_[key] = value;
    }
    return cfg;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("config: missing key " + key);
    return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::runtime_error("config: key " + key + " is not a number");
    return v;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long RunConfig::get_int(const std::string& key) const {
    const std::string s = get_string(key);
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::runtime_error("config: key " + key + " is not an integer");
    return v;
}

long RunConfig::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> RunConfig::get_doubles(const std::string& key) const {
    std::string s = get_string(key);
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw std::runtime_error("config: key " + key + " is not a number list");
    return out;
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

CostSpec cost_from_config(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("cost.kind");
    const int dim = static_cast<int>(cfg.get_int("cost.dim"));
    const double p = cfg.get_double("cost.p");
    if (kind == "power") return make_power_cost(dim, p);
    if (kind == "anisotropic") {
        const std::vector<double> raw = cfg.get_doubles("cost.matrix");
        if (static_cast<int>(raw.size()) != dim * dim)
            throw std::runtime_error("config: cost.matrix must have dim*dim entries (row-major)");
        Mat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = raw[static_cast<std::size_t>(i) * dim + j];
        return make_anisotropic_cost(dim, p, m);
    }
    throw std::runtime_error("config: cost.kind must be power or anisotropic");
}

} // namespace hmt
