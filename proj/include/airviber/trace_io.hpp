#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "airviber/types.hpp"

namespace airviber {

// Malformed trace or schedule file; line is 1-based.
struct FormatError : std::runtime_error {
    int line;
    FormatError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Trace file v1:
//   # air-viber-trace v1 sample_rate_hz=<int> quantization_step=<float-or-0>
//   <ax>,<ay>,<az>            (decimal floats, up to 9 significant digits, LF)
void write_trace(const SampleTrace& trace, std::ostream& out);
SampleTrace read_trace(std::istream& in);

void write_trace_file(const SampleTrace& trace, const std::string& path);
SampleTrace read_trace_file(const std::string& path);

}  // namespace airviber
