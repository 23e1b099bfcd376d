#include <sstream>
#include <string>

#include <doctest.h>

#include "pvsim/errors.hpp"
#include "pvsim/trace_io.hpp"

using namespace pvsim;

namespace {

Trace tiny_trace() {
    Trace tr;
    tr.scenario_hash = 0xabcddcba;
    tr.records.push_back({0.0, 1000.0, 25.0, 0.55, 27.0, 1.0 / 3.0, 9.0, 200.180108,
                          ControlMode::Calc});
    tr.records.push_back({0.01, 1000.0, 25.0, 0.545, 27.3, 7.5, 204.75, 200.180108,
                          ControlMode::Fine});
    return tr;
}

}  // namespace

TEST_CASE("trace CSV starts with the exact header") {
    const std::string csv = trace_to_csv(tiny_trace());
    CHECK(csv.rfind("time_s,g_w_m2,t_c,duty,v_pv,i_pv,p_pv,p_ideal,mode\n", 0) == 0);
}

TEST_CASE("floats are written with nine significant digits") {
    const std::string csv = trace_to_csv(tiny_trace());
    CHECK(csv.find("0.333333333") != std::string::npos);  // 1/3 at 9 digits
    CHECK(csv.find("200.180108") != std::string::npos);
    CHECK(csv.find(",calc\n") != std::string::npos);
    CHECK(csv.find(",fine\n") != std::string::npos);
}

TEST_CASE("trace CSV has one line per record plus the header") {
    const std::string csv = trace_to_csv(tiny_trace());
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
}

TEST_CASE("mode labels cover every branch") {
    CHECK(std::string(mode_label(ControlMode::Calc)) == "calc");
    CHECK(std::string(mode_label(ControlMode::Fine)) == "fine");
    CHECK(std::string(mode_label(ControlMode::Probe)) == "probe");
    CHECK(std::string(mode_label(ControlMode::Hold)) == "hold");
}

TEST_CASE("sample column reader accepts plain numbers and a header") {
    std::istringstream in("value\n1.5\n-2.5\n\n3e-2,\n");
    const auto samples = read_sample_column(in);
    REQUIRE(samples.size() == 3);
    CHECK(samples[0] == 1.5);
    CHECK(samples[1] == -2.5);
    CHECK(samples[2] == 0.03);
}

TEST_CASE("sample column reader reports bad lines") {
    std::istringstream in("1.5\nbroken\n");
    try {
        read_sample_column(in);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
    }
}
