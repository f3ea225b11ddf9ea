#include "molback/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace molback {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": malformed numeric value '" + v + "'");
    }
}

long long parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": malformed integer value '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": malformed unsigned integer value '" + v + "'");
    }
}

void fail_key(const std::string& key, const std::string& why) {
    throw ConfigError("invalid configuration: key '" + key + "' " + why);
}

std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

void validate(const PipelineConfig& cfg) {
    if (!(std::isfinite(cfg.gamma) && cfg.gamma > 0.0 && cfg.gamma < 1.0))
        fail_key("gamma", "must lie in (0, 1)");
    if (!(std::isfinite(cfg.T) && cfg.T > 0.0)) fail_key("T", "must be positive");
    if (!(std::isfinite(cfg.L) && cfg.L > 0.0)) fail_key("L", "must be positive");
    if (cfg.N < 8 || !is_pow2(cfg.N)) fail_key("N", "must be a power of two >= 8");
    if (!(std::isfinite(cfg.tau) && cfg.tau > 0.0)) fail_key("tau", "must be positive");
    if (!(std::isfinite(cfg.s) && cfg.s > 0.0)) fail_key("s", "must be positive");
    if (!(std::isfinite(cfg.theta) && cfg.theta > 1.0)) fail_key("theta", "must exceed 1");
    if (!(std::isfinite(cfg.q) && cfg.q > 0.0 && cfg.q < 1.0)) fail_key("q", "must lie in (0, 1)");
    if (!(std::isfinite(cfg.alpha0) && cfg.alpha0 > 0.0)) fail_key("alpha0", "must be positive");
    if (cfg.max_iters < 1) fail_key("max_iters", "must be >= 1");
    if (cfg.output_dir.empty()) fail_key("output_dir", "must be nonempty");
    if (!(std::isfinite(cfg.fixed_alpha) && cfg.fixed_alpha >= 0.0))
        fail_key("fixed_alpha", "must be >= 0 (0 disables it)");
    if (!(std::isfinite(cfg.psi_h) && cfg.psi_h >= 0.0 && cfg.psi_h <= 0.5))
        fail_key("psi_h", "must lie in [0, 1/2]");
    if (cfg.threads < 1) fail_key("threads", "must be >= 1");
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& where) {
    if (key == "schema") {
        if (parse_int(value, where) != 1)
            throw ConfigError(where + ": unsupported schema version '" + value + "'");
    }
    else if (key == "rng") {
        if (value != kRngAlgorithm)
            throw ConfigError(where + ": unsupported rng '" + value + "' (this build provides " +
                              kRngAlgorithm + ")");
    }
    else if (key == "gamma") cfg.gamma = parse_double(value, where);
    else if (key == "T") cfg.T = parse_double(value, where);
    else if (key == "L") cfg.L = parse_double(value, where);
    else if (key == "N") cfg.N = static_cast<int>(parse_int(value, where));
    else if (key == "tau") cfg.tau = parse_double(value, where);
    else if (key == "s") cfg.s = parse_double(value, where);
    else if (key == "theta") cfg.theta = parse_double(value, where);
    else if (key == "q") cfg.q = parse_double(value, where);
    else if (key == "alpha0") cfg.alpha0 = parse_double(value, where);
    else if (key == "max_iters") cfg.max_iters = static_cast<int>(parse_int(value, where));
    else if (key == "seed") cfg.seed = parse_u64(value, where);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "fixed_alpha") cfg.fixed_alpha = parse_double(value, where);
    else if (key == "psi_h") cfg.psi_h = parse_double(value, where);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(value, where));
    else throw ConfigError(where + ": unknown key '" + key + "'");
}

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(where + ": expected 'key = value'");
        apply_config_entry(cfg, key, value, where);
    }
}

void apply_config_env(PipelineConfig& cfg) {
    static const char* keys[] = {"gamma", "T", "L", "N", "tau", "s", "theta", "q",
                                 "alpha0", "max_iters", "seed", "output_dir",
                                 "fixed_alpha", "psi_h", "threads"};
    for (const char* key : keys) {
        std::string env_name = "MOLBACK_";
        for (const char* c = key; *c; ++c) env_name += static_cast<char>(std::toupper(*c));
        if (const char* v = std::getenv(env_name.c_str()))
            apply_config_entry(cfg, key, v, "environment " + env_name);
    }
}

std::map<int, std::pair<std::string, std::string>> config_entries(const PipelineConfig& cfg) {
    std::map<int, std::pair<std::string, std::string>> m;
    int i = 0;
    auto put = [&](const std::string& k, const std::string& v) { m[i++] = {k, v}; };
    put("schema", "1");
    put("rng", kRngAlgorithm);
    put("gamma", format_shortest(cfg.gamma));
    put("T", format_shortest(cfg.T));
    put("L", format_shortest(cfg.L));
    put("N", std::to_string(cfg.N));
    put("tau", format_shortest(cfg.tau));
    put("s", format_shortest(cfg.s));
    put("theta", format_shortest(cfg.theta));
    put("q", format_shortest(cfg.q));
    put("alpha0", format_shortest(cfg.alpha0));
    put("max_iters", std::to_string(cfg.max_iters));
    put("seed", std::to_string(cfg.seed));
    put("output_dir", cfg.output_dir);
    put("fixed_alpha", format_shortest(cfg.fixed_alpha));
    put("psi_h", format_shortest(cfg.psi_h));
    put("threads", std::to_string(cfg.threads));
    return m;
}

std::string config_echo(const PipelineConfig& cfg) {
    std::ostringstream os;
    os << "# effective configuration\n";
    for (const auto& [idx, kv] : config_entries(cfg)) {
        (void)idx;
        os << kv.first << " = " << kv.second << "\n";
    }
    return os.str();
}

}  // namespace molback
