#include "pvsim/environment.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "pvsim/errors.hpp"

namespace pvsim {

void Profile::validate() const {
    if (segments.empty()) throw Error("profile: needs at least one segment");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].g < 0.0) throw Error("profile: irradiance must be >= 0");
        if (i > 0 && !(segments[i].start > segments[i - 1].start))
            throw Error("profile: segment times must be strictly increasing");
    }
    if (kind == ProfileKind::Constant && segments.size() != 1)
        throw Error("profile: constant kind takes exactly one segment");
}

EnvSample sample(const Profile& profile, double time) {
    if (time < 0.0) throw OutOfRangeError("profile sampled at negative time");
    const auto& segs = profile.segments;

    if (profile.kind == ProfileKind::Constant)
        return {segs.front().g, segs.front().t, time};

    // last segment whose start <= time; before the first, hold the first
    auto it = std::upper_bound(segs.begin(), segs.end(), time,
                               [](double t, const ProfileSegment& s) { return t < s.start; });
    const std::size_t idx = it == segs.begin() ? 0 : std::size_t(it - segs.begin()) - 1;
    const ProfileSegment& seg = segs[idx];

    const bool linear =
        profile.kind == ProfileKind::Ramp ||
        (profile.kind == ProfileKind::Piecewise && seg.interp == SegmentInterp::Linear);
    const bool has_next = idx + 1 < segs.size();
    if (!linear || !has_next || time <= seg.start)
        return {seg.g, seg.t, time};

    const ProfileSegment& next = segs[idx + 1];
    const double w = std::clamp((time - seg.start) / (next.start - seg.start), 0.0, 1.0);
    return {seg.g + w * (next.g - seg.g), seg.t + w * (next.t - seg.t), time};
}

void Scenario::validate() const {
    panel.validate();
    bus.validate();
    profile.validate();
    if (!(duration > 0.0)) throw Error("sim: duration must be > 0");
    if (!(dt > 0.0)) throw Error("sim: dt must be > 0");
    if (duration / dt > 1e7) throw Error("sim: duration/dt exceeds the 1e7 step bound");
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
}

void fnv_mix(std::uint64_t& h, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g|", v);
    for (const char* c = buf; *c; ++c) {
        h ^= static_cast<unsigned char>(*c);
        h *= kFnvPrime;
    }
}

}  // namespace

std::uint64_t scenario_fingerprint(const Scenario& sc) {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, sc.panel.voc_n);
    fnv_mix(h, sc.panel.isc_n);
    fnv_mix(h, sc.panel.kv);
    fnv_mix(h, sc.panel.ki);
    fnv_mix(h, double(sc.panel.n_series));
    fnv_mix(h, sc.panel.ideality);
    fnv_mix(h, sc.panel.r_s);
    fnv_mix(h, sc.panel.r_sh);
    fnv_mix(h, sc.bus.v_l);
    fnv_mix(h, sc.bus.efficiency);
    fnv_mix(h, double(int(sc.profile.kind)));
    for (const auto& seg : sc.profile.segments) {
        fnv_mix(h, seg.start);
        fnv_mix(h, seg.g);
        fnv_mix(h, seg.t);
        fnv_mix(h, double(int(seg.interp)));
    }
    fnv_mix(h, sc.controller.name);
    fnv_mix(h, sc.controller.k);
    fnv_mix(h, sc.controller.kk);
    fnv_mix(h, sc.controller.t_threshold);
    fnv_mix(h, sc.controller.fine_step);
    fnv_mix(h, sc.controller.step);
    fnv_mix(h, sc.controller.eps);
    fnv_mix(h, sc.controller.probe_interval);
    fnv_mix(h, sc.controller.fixed_duty);
    fnv_mix(h, sc.duration);
    fnv_mix(h, sc.dt);
    return h;
}

std::vector<std::pair<std::string, Scenario>> canonical_scenarios() {
    Scenario base;
    base.panel = reference_panel();
    base.bus = BusParams{};
    base.duration = 5.0;
    base.dt = 0.01;

    std::vector<std::pair<std::string, Scenario>> out;

    {
        Scenario sc = base;
        sc.profile.kind = ProfileKind::Constant;
        sc.profile.segments = {{0.0, 1000.0, 25.0}};
        sc.controller.name = "hybrid";
        out.emplace_back("stc", sc);
    }
    {
        Scenario sc = base;
        sc.profile.kind = ProfileKind::Step;
        sc.profile.segments = {{0.0, 1000.0, 25.0}, {2.5, 600.0, 25.0}};
        sc.controller.name = "hybrid";
        out.emplace_back("irradiance_step", sc);
    }
    {
        Scenario sc = base;
        sc.profile.kind = ProfileKind::Step;
        sc.profile.segments = {{0.0, 1000.0, 25.0}, {2.5, 1000.0, 45.0}};
        sc.controller.name = "hybrid";
        out.emplace_back("temperature_step", sc);
    }
    {
        Scenario sc = base;
        sc.profile.kind = ProfileKind::Ramp;
        sc.profile.segments = {{0.0, 400.0, 15.0}, {4.0, 1000.0, 40.0}, {5.0, 1000.0, 40.0}};
        sc.controller.name = "inccond";
        out.emplace_back("combined_ramp", sc);
    }
    return out;
}

}  // namespace pvsim
