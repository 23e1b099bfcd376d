#include <cstdlib>
#include <string>

#include <doctest.h>

#include "pvsim/config.hpp"
#include "pvsim/errors.hpp"

using namespace pvsim;

namespace {

const char* kGoodConfig = R"(# comment
[panel]
voc_n = 36.0
isc_n = 8.4
kv = -0.123
ki = 0.0032
n_series = 60
ideality = 1.8
r_s = 0.3
r_sh = 100.0

[bus]
v_l = 60.0

[profile]
kind = step
segment = 0.0 1000.0 25.0
segment = 2.5 600.0 25.0   # trailing comment

[controller]
name = po
step = 0.02

[sim]
duration = 2.0
dt = 0.005
)";

}  // namespace

TEST_CASE("a full scenario parses with every field applied") {
    const Scenario sc = parse_scenario(kGoodConfig);
    CHECK(sc.panel.voc_n == 36.0);
    CHECK(sc.panel.n_series == 60);
    CHECK(sc.bus.v_l == 60.0);
    CHECK(sc.bus.efficiency == 1.0);  // default
    CHECK(sc.profile.kind == ProfileKind::Step);
    CHECK(sc.profile.segments.size() == 2);
    CHECK(sc.profile.segments[1].start == 2.5);
    CHECK(sc.controller.name == "po");
    CHECK(sc.controller.step == 0.02);
    CHECK(sc.controller.k == 0.75);  // default
    CHECK(sc.duration == 2.0);
    CHECK(sc.dt == 0.005);
}

TEST_CASE("unknown keys are rejected with the line and key") {
    std::string cfg = kGoodConfig;
    cfg += "\n[bus]\nvoltage = 60\n";
    try {
        parse_scenario(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "voltage");
        CHECK(e.line() > 0);
        CHECK(std::string(e.what()).find("voltage") != std::string::npos);
    }
}

TEST_CASE("malformed numbers are rejected with the offending key") {
    std::string cfg = kGoodConfig;
    cfg += "\n[sim]\ndt = fast\n";
    try {
        parse_scenario(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "dt");
        CHECK(std::string(e.what()).find("fast") != std::string::npos);
    }
}

TEST_CASE("unknown controller names list the valid set") {
    std::string cfg = kGoodConfig;
    cfg += "\n[controller]\nname = magic\n";
    try {
        parse_scenario(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("magic") != std::string::npos);
        CHECK(msg.find("hybrid") != std::string::npos);
        CHECK(msg.find("inccond") != std::string::npos);
    }
}

TEST_CASE("missing sections and keys are reported") {
    CHECK_THROWS_AS(parse_scenario("[panel]\nvoc_n = 36\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(""), ConfigError);

    // drop one required panel key
    std::string cfg = kGoodConfig;
    const auto pos = cfg.find("r_sh = 100.0");
    cfg.erase(pos, 12);
    try {
        parse_scenario(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "r_sh");
    }
}

TEST_CASE("segment lines must have three or four tokens") {
    std::string cfg = kGoodConfig;
    cfg += "\n[profile]\nsegment = 3.0 500.0\n";
    CHECK_THROWS_AS(parse_scenario(cfg), ConfigError);
    cfg = kGoodConfig;
    cfg += "\n[profile]\nsegment = 3.0 500.0 25.0 wiggle\n";
    CHECK_THROWS_AS(parse_scenario(cfg), ConfigError);
}

TEST_CASE("keys before any section are rejected") {
    CHECK_THROWS_AS(parse_scenario("voc_n = 36\n"), ConfigError);
}

TEST_CASE("n_series must be an integer") {
    std::string cfg = kGoodConfig;
    const auto pos = cfg.find("n_series = 60");
    cfg.replace(pos, 13, "n_series = 60.5");
    CHECK_THROWS_AS(parse_scenario(cfg), ConfigError);
}

TEST_CASE("semantic violations surface as config errors") {
    std::string cfg = kGoodConfig;
    const auto pos = cfg.find("dt = 0.005");
    cfg.replace(pos, 10, "dt = -1");
    CHECK_THROWS_AS(parse_scenario(cfg), ConfigError);
}

TEST_CASE("parsing is deterministic") {
    const Scenario a = parse_scenario(kGoodConfig);
    const Scenario b = parse_scenario(kGoodConfig);
    CHECK(scenario_fingerprint(a) == scenario_fingerprint(b));
}

TEST_CASE("shipped scenario files match the canonical in-code scenarios") {
    const char* dir = std::getenv("PVSIM_SCENARIO_DIR");
    if (dir == nullptr) return;  // only checked under ctest
    for (const auto& [name, sc] : canonical_scenarios()) {
        INFO(name);
        const Scenario parsed = load_scenario_file(std::string(dir) + "/" + name + ".cfg");
        CHECK(scenario_fingerprint(parsed) == scenario_fingerprint(sc));
    }
}
