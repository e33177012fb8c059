#include "perp/run_config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "perp/errors.hpp"

namespace perp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    throw ConfigError(origin + " line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& origin, std::size_t line, const std::string& key,
                  const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        fail(origin, line, key + ": not a number: '" + value + "'");
    return out;
}

int parse_int(const std::string& origin, std::size_t line, const std::string& key,
              const std::string& value) {
    int out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        fail(origin, line, key + ": not an integer: '" + value + "'");
    return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    return parse(in, path, std::filesystem::path(path).parent_path().string());
}

RunConfig RunConfig::parse(std::istream& in, const std::string& origin,
                           const std::string& base_dir) {
    RunConfig cfg;
    std::string section;
    AssetConfig* asset = nullptr;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;

        if (text.front() == '[') {
            if (text.back() != ']') fail(origin, line_no, "unterminated section header");
            const std::string inner = trim(text.substr(1, text.size() - 2));
            if (inner.rfind("asset", 0) == 0) {
                const std::string symbol = trim(inner.substr(5));
                if (symbol.empty()) fail(origin, line_no, "asset section without a symbol");
                for (const AssetConfig& a : cfg.assets)
                    if (a.symbol == symbol)
                        fail(origin, line_no, "duplicate asset " + symbol);
                cfg.assets.push_back(AssetConfig{symbol, "", ""});
                asset = &cfg.assets.back();
                section = "asset";
            } else if (inner == "run" || inner == "theory" || inner == "strategy" ||
                       inner == "grid" || inner == "analysis") {
                section = inner;
                asset = nullptr;
            } else {
                fail(origin, line_no, "unknown section [" + inner + "]");
            }
            continue;
        }

        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) fail(origin, line_no, "expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail(origin, line_no, "empty key");
        if (section.empty()) fail(origin, line_no, "key before any section");

        if (section == "run") {
            if (key == "output_dir")
                cfg.output_dir = resolve(base_dir, value);
            else if (key == "tier")
                cfg.tier = value;
            else
                fail(origin, line_no, "unknown [run] key " + key);
        } else if (section == "theory") {
            if (key == "r")
                cfg.theory.r = parse_real(origin, line_no, key, value);
            else if (key == "kappa")
                cfg.theory.kappa = parse_real(origin, line_no, key, value);
            else
                fail(origin, line_no, "unknown [theory] key " + key);
        } else if (section == "strategy") {
            if (key == "kind") {
                if (value == "random_maturity")
                    cfg.kind = RunStrategyKind::random_maturity;
                else if (value == "two_threshold")
                    cfg.kind = RunStrategyKind::two_threshold;
                else if (value == "adaptive")
                    cfg.kind = RunStrategyKind::adaptive;
                else
                    fail(origin, line_no, "unknown strategy kind '" + value + "'");
            } else if (key == "u") {
                cfg.u = parse_real(origin, line_no, key, value);
            } else if (key == "l") {
                cfg.l = parse_real(origin, line_no, key, value);
            } else if (key == "restriction") {
                if (value == "unrestricted")
                    cfg.restriction = strategy::Restriction::unrestricted;
                else if (value == "long_spot_only")
                    cfg.restriction = strategy::Restriction::long_spot_only;
                else
                    fail(origin, line_no, "unknown restriction '" + value + "'");
            } else {
                fail(origin, line_no, "unknown [strategy] key " + key);
            }
        } else if (section == "grid") {
            if (key == "min")
                cfg.grid.grid_min = parse_real(origin, line_no, key, value);
            else if (key == "max")
                cfg.grid.grid_max = parse_real(origin, line_no, key, value);
            else if (key == "step")
                cfg.grid.grid_step = parse_real(origin, line_no, key, value);
            else if (key == "lookback_months")
                cfg.grid.lookback_months = parse_int(origin, line_no, key, value);
            else
                fail(origin, line_no, "unknown [grid] key " + key);
        } else if (section == "analysis") {
            if (key == "past_return_months")
                cfg.past_return_months = parse_int(origin, line_no, key, value);
            else if (key == "hac_lag")
                cfg.hac_lag = parse_int(origin, line_no, key, value);
            else if (key == "exogenous")
                cfg.exogenous_path = resolve(base_dir, value);
            else
                fail(origin, line_no, "unknown [analysis] key " + key);
        } else {  // asset
            if (key == "prices")
                asset->prices_path = resolve(base_dir, value);
            else if (key == "funding")
                asset->funding_path = resolve(base_dir, value);
            else
                fail(origin, line_no, "unknown [asset] key " + key);
        }
    }
    return cfg;
}

void RunConfig::validate() const {
    theory::FeeTier::standard(tier);  // throws ConfigError on unknown names
    try {
        theory.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("theory: ") + e.what());
    }
    if (kind == RunStrategyKind::two_threshold) {
        try {
            strategy::StrategySpec::two_threshold(u, l, restriction);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("strategy: ") + e.what());
        }
    }
    if (kind == RunStrategyKind::adaptive && grid.lookback_months <= 0)
        throw ConfigError("grid: lookback_months must be positive");
    if (assets.empty()) throw ConfigError("no [asset] sections configured");
    for (const AssetConfig& a : assets) {
        if (a.prices_path.empty())
            throw ConfigError("asset " + a.symbol + ": prices file not set");
        if (!std::filesystem::exists(a.prices_path))
            throw ConfigError("asset " + a.symbol + ": prices file not found: " +
                              a.prices_path);
        if (a.funding_path.empty())
            throw ConfigError("asset " + a.symbol + ": funding file not set");
        if (!std::filesystem::exists(a.funding_path))
            throw ConfigError("asset " + a.symbol + ": funding file not found: " +
                              a.funding_path);
    }
    if (!exogenous_path.empty() && !std::filesystem::exists(exogenous_path))
        throw ConfigError("analysis: exogenous file not found: " + exogenous_path);
}

strategy::StrategySpec RunConfig::fixed_spec() const {
    const theory::FeeTier fee = theory::FeeTier::standard(tier);
    switch (kind) {
        case RunStrategyKind::random_maturity:
            return strategy::StrategySpec::random_maturity(
                theory::deviation_bounds(theory, fee),
                theory::benchmark_deviation(theory), restriction);
        case RunStrategyKind::two_threshold:
            return strategy::StrategySpec::two_threshold(u, l, restriction);
        case RunStrategyKind::adaptive:
            break;
    }
    throw ConfigError("strategy: adaptive runs have no fixed specification");
}

}  // namespace perp
