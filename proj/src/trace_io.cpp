#include "airviber/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace airviber {

namespace {

std::string fmt_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void write_trace(const SampleTrace& trace, std::ostream& out) {
    if (trace.sample_rate_hz <= 0)
        throw std::invalid_argument("write_trace: sample_rate_hz must be positive");
    if (trace.samples.empty())
        throw std::invalid_argument("write_trace: trace must hold at least one sample");
    out << "# air-viber-trace v1 sample_rate_hz=" << trace.sample_rate_hz
        << " quantization_step=" << fmt_g9(trace.quantization_step) << "\n";
    for (const auto& s : trace.samples)
        out << fmt_g9(s.ax) << ',' << fmt_g9(s.ay) << ',' << fmt_g9(s.az) << "\n";
    if (!out) throw std::runtime_error("write_trace: sink write failure");
}

SampleTrace read_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(1, "empty input, expected v1 header");

    SampleTrace trace;
    int rate = 0;
    double qstep = 0.0;
    if (std::sscanf(line.c_str(), "# air-viber-trace v1 sample_rate_hz=%d quantization_step=%lf",
                    &rate, &qstep) != 2)
        throw FormatError(1, "bad header, expected '# air-viber-trace v1 sample_rate_hz=<int> quantization_step=<float>'");
    if (rate <= 0) throw FormatError(1, "sample_rate_hz must be positive");
    if (qstep < 0.0) throw FormatError(1, "quantization_step must be >= 0");
    trace.sample_rate_hz = rate;
    trace.quantization_step = qstep;

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Sample s;
        char trail;
        int n = std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &s.ax, &s.ay, &s.az, &trail);
        if (n != 3) throw FormatError(lineno, "expected '<ax>,<ay>,<az>'");
        trace.samples.push_back(s);
    }
    if (trace.samples.empty()) throw FormatError(lineno + 1, "trace holds no samples");
    return trace;
}

void write_trace_file(const SampleTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_trace(trace, out);
}

SampleTrace read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_trace(in);
}

}  // namespace airviber
