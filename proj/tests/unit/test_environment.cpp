#include <doctest.h>

#include "pvsim/environment.hpp"
#include "pvsim/errors.hpp"

using namespace pvsim;

namespace {

Profile make_profile(ProfileKind kind, std::vector<ProfileSegment> segs) {
    Profile p;
    p.kind = kind;
    p.segments = std::move(segs);
    return p;
}

}  // namespace

TEST_CASE("constant profile ignores time") {
    const auto p = make_profile(ProfileKind::Constant, {{0.0, 1000.0, 25.0}});
    for (double t : {0.0, 0.37, 4.99, 100.0}) {
        const auto env = sample(p, t);
        CHECK(env.g == 1000.0);
        CHECK(env.t == 25.0);
        CHECK(env.time == t);
    }
}

TEST_CASE("step profile holds each segment and switches exactly at boundaries") {
    const auto p = make_profile(ProfileKind::Step, {{0.0, 1000.0, 25.0}, {2.5, 600.0, 45.0}});
    CHECK(sample(p, 2.4999).g == 1000.0);
    CHECK(sample(p, 2.5).g == 600.0);  // boundary belongs to the new segment
    CHECK(sample(p, 2.5).t == 45.0);
    CHECK(sample(p, 9.0).g == 600.0);  // holds after the last segment
}

TEST_CASE("ramp profile interpolates linearly") {
    const auto p = make_profile(ProfileKind::Ramp, {{0.0, 200.0, 10.0}, {10.0, 1000.0, 30.0}});
    CHECK(sample(p, 5.0).g == doctest::Approx(600.0));
    CHECK(sample(p, 5.0).t == doctest::Approx(20.0));
    CHECK(sample(p, 10.0).g == 1000.0);
    CHECK(sample(p, 12.0).g == 1000.0);  // hold beyond the end
}

TEST_CASE("piecewise profile follows each segment's own rule") {
    const auto p = make_profile(ProfileKind::Piecewise,
                                {{0.0, 1000.0, 25.0, SegmentInterp::Hold},
                                 {2.0, 600.0, 25.0, SegmentInterp::Linear},
                                 {4.0, 800.0, 35.0, SegmentInterp::Hold}});
    CHECK(sample(p, 1.0).g == 1000.0);                    // hold
    CHECK(sample(p, 3.0).g == doctest::Approx(700.0));    // linear toward next
    CHECK(sample(p, 3.0).t == doctest::Approx(30.0));
    CHECK(sample(p, 4.5).g == 800.0);                     // final hold
}

TEST_CASE("sampling is deterministic") {
    const auto p = make_profile(ProfileKind::Ramp, {{0.0, 200.0, 10.0}, {10.0, 1000.0, 30.0}});
    for (double t : {0.1, 3.33, 7.77}) {
        const auto a = sample(p, t);
        const auto b = sample(p, t);
        CHECK(a.g == b.g);
        CHECK(a.t == b.t);
    }
}

TEST_CASE("negative time is out of range") {
    const auto p = make_profile(ProfileKind::Constant, {{0.0, 1000.0, 25.0}});
    CHECK_THROWS_AS(sample(p, -0.001), OutOfRangeError);
}

TEST_CASE("profile validation") {
    auto p = make_profile(ProfileKind::Step, {{0.0, 1000.0, 25.0}, {0.0, 600.0, 25.0}});
    CHECK_THROWS_AS(p.validate(), Error);  // non-increasing times
    p = make_profile(ProfileKind::Step, {{0.0, -5.0, 25.0}});
    CHECK_THROWS_AS(p.validate(), Error);  // negative irradiance
    p = make_profile(ProfileKind::Constant, {});
    CHECK_THROWS_AS(p.validate(), Error);  // empty
    p = make_profile(ProfileKind::Constant, {{0.0, 1000.0, 25.0}, {1.0, 500.0, 25.0}});
    CHECK_THROWS_AS(p.validate(), Error);  // constant takes one segment
}

TEST_CASE("scenario validation bounds the step count") {
    Scenario sc = canonical_scenarios()[0].second;
    CHECK_NOTHROW(sc.validate());
    sc.dt = -1.0;
    CHECK_THROWS_AS(sc.validate(), Error);
    sc.dt = 1e-9;
    sc.duration = 100.0;
    CHECK_THROWS_AS(sc.validate(), Error);  // > 1e7 steps
}

TEST_CASE("canonical scenarios include the STC reference conditions") {
    const auto all = canonical_scenarios();
    CHECK(all.size() == 4);
    const auto& stc = all[0];
    CHECK(stc.first == "stc");
    const auto env = sample(stc.second.profile, 1.23);
    CHECK(env.g == 1000.0);
    CHECK(env.t == 25.0);
}

TEST_CASE("fingerprints separate scenarios and stay stable across calls") {
    const auto all = canonical_scenarios();
    const auto h0 = scenario_fingerprint(all[0].second);
    CHECK(h0 == scenario_fingerprint(all[0].second));
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(scenario_fingerprint(all[i].second) != h0);

    Scenario tweaked = all[0].second;
    tweaked.controller.k = 0.76;
    CHECK(scenario_fingerprint(tweaked) != h0);
}
