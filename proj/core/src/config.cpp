#include "pvsim/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "pvsim/errors.hpp"

namespace pvsim {

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

double parse_number(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': not a number: '" + value + "'", line, key);
    return v;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    const double v = parse_number(value, line, key);
    const int i = static_cast<int>(v);
    if (double(i) != v)
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'",
                          line, key);
    return i;
}

struct SectionSeen {
    bool panel = false;
    bool bus = false;
    bool profile = false;
    bool controller = false;
};

// splits "0.0 1000 25 [hold|linear]" into a profile segment
ProfileSegment parse_segment(const std::string& value, int line) {
    std::istringstream iss(value);
    ProfileSegment seg;
    std::string interp;
    if (!(iss >> seg.start >> seg.g >> seg.t))
        throw ConfigError("key 'segment': expected '<start_s> <g> <t> [hold|linear]', got '" +
                              value + "'",
                          line, "segment");
    if (iss >> interp) {
        if (interp == "hold")
            seg.interp = SegmentInterp::Hold;
        else if (interp == "linear")
            seg.interp = SegmentInterp::Linear;
        else
            throw ConfigError("key 'segment': unknown interpolation '" + interp + "'", line,
                              "segment");
        std::string extra;
        if (iss >> extra)
            throw ConfigError("key 'segment': trailing tokens after '" + interp + "'", line,
                              "segment");
    }
    return seg;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    sc.profile.segments.clear();

    SectionSeen seen;
    std::vector<bool> panel_field_set(8, false);
    bool kind_set = false;
    bool controller_named = false;

    std::string section;
    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_no = 0;

    while (std::getline(stream, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header '" + line + "'", line_no);
            section = line.substr(1, line.size() - 2);
            if (section == "panel") seen.panel = true;
            else if (section == "bus") seen.bus = true;
            else if (section == "profile") seen.profile = true;
            else if (section == "controller") seen.controller = true;
            else if (section != "sim")
                throw ConfigError("unknown section '[" + section + "]'", line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty())
            throw ConfigError("key '" + key + "': empty value", line_no, key);
        if (section.empty())
            throw ConfigError("key '" + key + "' appears before any section", line_no, key);

        auto num = [&] { return parse_number(value, line_no, key); };

        if (section == "panel") {
            if (key == "voc_n") { sc.panel.voc_n = num(); panel_field_set[0] = true; }
            else if (key == "isc_n") { sc.panel.isc_n = num(); panel_field_set[1] = true; }
            else if (key == "kv") { sc.panel.kv = num(); panel_field_set[2] = true; }
            else if (key == "ki") { sc.panel.ki = num(); panel_field_set[3] = true; }
            else if (key == "n_series") { sc.panel.n_series = parse_int(value, line_no, key); panel_field_set[4] = true; }
            else if (key == "ideality") { sc.panel.ideality = num(); panel_field_set[5] = true; }
            else if (key == "r_s") { sc.panel.r_s = num(); panel_field_set[6] = true; }
            else if (key == "r_sh") { sc.panel.r_sh = num(); panel_field_set[7] = true; }
            else throw ConfigError("unknown key '" + key + "' in [panel]", line_no, key);
        } else if (section == "bus") {
            if (key == "v_l") sc.bus.v_l = num();
            else if (key == "efficiency") sc.bus.efficiency = num();
            else throw ConfigError("unknown key '" + key + "' in [bus]", line_no, key);
        } else if (section == "profile") {
            if (key == "kind") {
                kind_set = true;
                if (value == "constant") sc.profile.kind = ProfileKind::Constant;
                else if (value == "step") sc.profile.kind = ProfileKind::Step;
                else if (value == "ramp") sc.profile.kind = ProfileKind::Ramp;
                else if (value == "piecewise") sc.profile.kind = ProfileKind::Piecewise;
                else
                    throw ConfigError("key 'kind': unknown profile kind '" + value +
                                          "' (constant, step, ramp, piecewise)",
                                      line_no, key);
            } else if (key == "segment") {
                sc.profile.segments.push_back(parse_segment(value, line_no));
            } else {
                throw ConfigError("unknown key '" + key + "' in [profile]", line_no, key);
            }
        } else if (section == "controller") {
            if (key == "name") {
                controller_named = true;
                const auto& names = controller_names();
                if (std::find(names.begin(), names.end(), value) == names.end()) {
                    std::string joined;
                    for (const auto& n : names) {
                        if (!joined.empty()) joined += ", ";
                        joined += n;
                    }
                    throw ConfigError("unknown controller '" + value +
                                          "'; valid names: " + joined,
                                      line_no, key);
                }
                sc.controller.name = value;
            }
            else if (key == "k") sc.controller.k = num();
            else if (key == "kk") sc.controller.kk = num();
            else if (key == "t_threshold") sc.controller.t_threshold = num();
            else if (key == "fine_step") sc.controller.fine_step = num();
            else if (key == "step") sc.controller.step = num();
            else if (key == "eps") sc.controller.eps = num();
            else if (key == "probe_interval") sc.controller.probe_interval = num();
            else throw ConfigError("unknown key '" + key + "' in [controller]", line_no, key);
        } else if (section == "sim") {
            if (key == "duration") sc.duration = num();
            else if (key == "dt") sc.dt = num();
            else throw ConfigError("unknown key '" + key + "' in [sim]", line_no, key);
        }
    }

    if (!seen.panel) throw ConfigError("missing [panel] section");
    if (!seen.bus) throw ConfigError("missing [bus] section");
    if (!seen.profile) throw ConfigError("missing [profile] section");
    if (!seen.controller) throw ConfigError("missing [controller] section");

    static const char* panel_keys[] = {"voc_n", "isc_n", "kv", "ki",
                                       "n_series", "ideality", "r_s", "r_sh"};
    for (int i = 0; i < 8; ++i)
        if (!panel_field_set[i])
            throw ConfigError(std::string("missing [panel] key '") + panel_keys[i] + "'", 0,
                              panel_keys[i]);
    if (!kind_set) throw ConfigError("missing [profile] key 'kind'", 0, "kind");
    if (sc.profile.segments.empty())
        throw ConfigError("missing [profile] key 'segment'", 0, "segment");
    if (!controller_named)
        throw ConfigError("missing [controller] key 'name'", 0, "name");

    try {
        sc.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace pvsim
