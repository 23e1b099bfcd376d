#include "pvsim/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "pvsim/errors.hpp"

namespace pvsim {

namespace {

void append_field(std::string& line, double v, char sep) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    line += buf;
    line += sep;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << kTraceCsvHeader << '\n';
    std::string line;
    for (const auto& r : trace.records) {
        line.clear();
        append_field(line, r.time, ',');
        append_field(line, r.g, ',');
        append_field(line, r.t, ',');
        append_field(line, r.duty, ',');
        append_field(line, r.v_pv, ',');
        append_field(line, r.i_pv, ',');
        append_field(line, r.p_pv, ',');
        append_field(line, r.p_ideal, ',');
        line += mode_label(r.mode);
        line += '\n';
        out << line;
    }
}

std::string trace_to_csv(const Trace& trace) {
    std::ostringstream oss;
    write_trace_csv(oss, trace);
    return oss.str();
}

std::vector<double> read_sample_column(std::istream& in) {
    std::vector<double> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r,");
        const std::string field = line.substr(a, b - a + 1);

        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') {
            if (samples.empty() && line_no == 1) continue;  // header line
            throw ConfigError("not a number: '" + field + "'", line_no);
        }
        samples.push_back(v);
    }
    return samples;
}

}  // namespace pvsim
