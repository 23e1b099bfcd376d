#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pvsim/sim_engine.hpp"

namespace pvsim {

/// Exact column set of the trace CSV, in order.
inline constexpr const char* kTraceCsvHeader =
    "time_s,g_w_m2,t_c,duty,v_pv,i_pv,p_pv,p_ideal,mode";

/// Writes the trace as CSV: header line, then one record per line with
/// floating-point fields at 9 significant digits.
void write_trace_csv(std::ostream& out, const Trace& trace);

std::string trace_to_csv(const Trace& trace);

/// Reads a one-column CSV of waveform samples. A non-numeric first line is
/// treated as a header; blank lines are skipped; anything else non-numeric is
/// a ConfigError with the line number.
std::vector<double> read_sample_column(std::istream& in);

}  // namespace pvsim
