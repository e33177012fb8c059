#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "perp/errors.hpp"
#include "perp/run_config.hpp"
#include "perp/theory.hpp"

using namespace perp;
namespace fs = std::filesystem;

namespace {

RunConfig parse_text(const std::string& text, const std::string& base_dir = "") {
    std::istringstream in(text);
    return RunConfig::parse(in, "test.cfg", base_dir);
}

std::string error_of(const std::string& text) {
    try {
        parse_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

struct TempTree {
    fs::path dir;
    TempTree() {
        dir = fs::temp_directory_path() /
              ("perp_cfg_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~TempTree() { fs::remove_all(dir); }
    static int& counter() {
        static int n = 0;
        return n;
    }
    fs::path touch(const std::string& name, const std::string& content = "x\n") const {
        const fs::path p = dir / name;
        std::ofstream(p) << content;
        return p;
    }
};

const char* kFullConfig = R"(# full configuration
[run]
output_dir = results
tier = medium

[theory]
r = 0.05
kappa = 1095

[strategy]
kind = two_threshold
u = 0.30
l = 0.10
restriction = long_spot_only

[grid]
min = 0.0
max = 1.0
step = 0.25
lookback_months = 3

[analysis]
past_return_months = 6
hac_lag = 8
exogenous = exo.csv

; a second asset follows the first
[asset BTC]
prices = btc_prices.csv
funding = btc_funding.csv

[asset ETH]
prices = /abs/eth_prices.csv
funding = eth_funding.csv
)";

}  // namespace

TEST_CASE("a full config file parses into every field") {
    const RunConfig cfg = parse_text(kFullConfig, "/base");

    CHECK(cfg.output_dir == "/base/results");
    CHECK(cfg.tier == "medium");
    CHECK(cfg.theory.r == 0.05);
    CHECK(cfg.theory.kappa == 1095.0);
    CHECK(cfg.kind == RunStrategyKind::two_threshold);
    CHECK(cfg.u == 0.30);
    CHECK(cfg.l == 0.10);
    CHECK(cfg.restriction == strategy::Restriction::long_spot_only);
    CHECK(cfg.grid.grid_min == 0.0);
    CHECK(cfg.grid.grid_max == 1.0);
    CHECK(cfg.grid.grid_step == 0.25);
    CHECK(cfg.grid.lookback_months == 3);
    CHECK(cfg.past_return_months == 6);
    CHECK(cfg.hac_lag == 8);
    CHECK(cfg.exogenous_path == "/base/exo.csv");

    REQUIRE(cfg.assets.size() == 2);
    CHECK(cfg.assets[0].symbol == "BTC");
    CHECK(cfg.assets[0].prices_path == "/base/btc_prices.csv");
    CHECK(cfg.assets[0].funding_path == "/base/btc_funding.csv");
    CHECK(cfg.assets[1].symbol == "ETH");
    CHECK(cfg.assets[1].prices_path == "/abs/eth_prices.csv");  // absolute kept
    CHECK(cfg.assets[1].funding_path == "/base/eth_funding.csv");
}

TEST_CASE("an empty config keeps the documented defaults") {
    const RunConfig cfg = parse_text("");
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.tier == "none");
    CHECK(cfg.kind == RunStrategyKind::adaptive);
    CHECK(cfg.theory.r == 0.1095);
    CHECK(cfg.theory.kappa == 1095.0);
    CHECK(cfg.grid.grid_min == 0.0);
    CHECK(cfg.grid.grid_max == 2.0);
    CHECK(cfg.grid.grid_step == 0.10);
    CHECK(cfg.grid.lookback_months == 6);
    CHECK(cfg.past_return_months == 4);
    CHECK(cfg.hac_lag == -1);
    CHECK(cfg.exogenous_path.empty());
    CHECK(cfg.assets.empty());
}

TEST_CASE("parse errors carry the file name and line number") {
    using doctest::Contains;

    CHECK(error_of("[run]\nfoo = 1\n") ==
          std::string("test.cfg line 2: unknown [run] key foo"));
    CHECK_THROWS_WITH_AS(parse_text("[nope]\n"),
                         Contains("test.cfg line 1: unknown section [nope]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[run\n"), Contains("unterminated section"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("tier = low\n"), Contains("key before any section"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[run]\ntier low\n"), Contains("expected key = value"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[run]\n= low\n"), Contains("empty key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[theory]\nr = fast\n"),
                         Contains("line 2: r: not a number: 'fast'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[grid]\nlookback_months = wide\n"),
                         Contains("not an integer"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[strategy]\nkind = martingale\n"),
                         Contains("unknown strategy kind"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[strategy]\nrestriction = shorts_ok\n"),
                         Contains("unknown restriction"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[asset]\n"), Contains("asset section without a symbol"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[asset BTC]\nprices = a\n[asset BTC]\n"),
                         Contains("line 3: duplicate asset BTC"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[asset BTC]\nleverage = 10\n"),
                         Contains("unknown [asset] key leverage"), ConfigError);
}

TEST_CASE("validate checks tiers, strategy levels, and referenced files") {
    TempTree tree;
    tree.touch("p.csv");
    tree.touch("f.csv");

    RunConfig cfg;
    cfg.kind = RunStrategyKind::two_threshold;
    cfg.u = 0.3;
    cfg.l = 0.1;
    cfg.assets.push_back({"BTC", (tree.dir / "p.csv").string(), (tree.dir / "f.csv").string()});
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("unknown tier") {
        cfg.tier = "platinum";
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("unknown fee tier"),
                             ConfigError);
    }
    SUBCASE("bad theory parameters") {
        cfg.theory.r = -0.1;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("theory:"), ConfigError);
    }
    SUBCASE("inconsistent thresholds") {
        cfg.u = 0.1;
        cfg.l = 0.3;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("strategy:"), ConfigError);
    }
    SUBCASE("no assets") {
        cfg.assets.clear();
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("no [asset] sections"),
                             ConfigError);
    }
    SUBCASE("missing price file") {
        cfg.assets[0].prices_path = (tree.dir / "absent.csv").string();
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("BTC: prices file not found"), ConfigError);
    }
    SUBCASE("unset funding file") {
        cfg.assets[0].funding_path.clear();
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("BTC: funding file not set"), ConfigError);
    }
    SUBCASE("missing exogenous file") {
        cfg.exogenous_path = (tree.dir / "exo.csv").string();
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("exogenous file not found"),
                             ConfigError);
    }
    SUBCASE("adaptive lookback must be positive") {
        cfg.kind = RunStrategyKind::adaptive;
        cfg.grid.lookback_months = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("lookback_months"),
                             ConfigError);
    }
}

TEST_CASE("load resolves paths relative to the config directory") {
    TempTree tree;
    tree.touch("p.csv");
    tree.touch("f.csv");
    tree.touch("run.cfg",
               "[run]\noutput_dir = out\n[strategy]\nkind = two_threshold\nu = 0.3\nl = 0.1\n"
               "[asset BTC]\nprices = p.csv\nfunding = f.csv\n");

    const RunConfig cfg = RunConfig::load((tree.dir / "run.cfg").string());
    CHECK(cfg.assets[0].prices_path == (tree.dir / "p.csv").string());
    CHECK(cfg.output_dir == (tree.dir / "out").string());
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_WITH_AS(RunConfig::load((tree.dir / "absent.cfg").string()),
                         doctest::Contains("cannot open config"), ConfigError);
}

TEST_CASE("fixed_spec reflects the configured strategy") {
    RunConfig cfg;
    cfg.kind = RunStrategyKind::two_threshold;
    cfg.u = 0.4;
    cfg.l = 0.2;
    cfg.restriction = strategy::Restriction::long_spot_only;

    const auto spec = cfg.fixed_spec();
    CHECK(spec.kind == strategy::StrategyKind::two_threshold);
    CHECK(spec.open_upper == 0.4);
    CHECK(spec.open_lower == -0.4);
    CHECK(spec.close_level == 0.2);
    CHECK(spec.restriction == strategy::Restriction::long_spot_only);

    SUBCASE("random-maturity uses the tier bounds and benchmark close") {
        cfg.kind = RunStrategyKind::random_maturity;
        cfg.tier = "low";
        const auto rma = cfg.fixed_spec();
        const auto bounds =
            theory::deviation_bounds(cfg.theory, theory::FeeTier::standard("low"));
        CHECK(rma.kind == strategy::StrategyKind::random_maturity);
        CHECK(rma.open_upper == bounds.rho_u);
        CHECK(rma.open_lower == bounds.rho_l);
        CHECK(rma.close_level == theory::benchmark_deviation(cfg.theory));
    }
    SUBCASE("adaptive has no fixed spec") {
        cfg.kind = RunStrategyKind::adaptive;
        CHECK_THROWS_AS(cfg.fixed_spec(), ConfigError);
    }
}
