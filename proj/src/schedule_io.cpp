#include "airviber/schedule_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "airviber/trace_io.hpp"

namespace airviber {

void write_schedule(const RpmSchedule& schedule, int pad_bits, std::ostream& out) {
    out << "# air-viber-schedule v1 rpm_max=" << static_cast<int>(schedule.rpm_max)
        << " pad_bits=" << pad_bits << "\n";
    char buf[64];
    for (const auto& s : schedule.segments) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", s.duration_s, s.rpm);
        out << buf;
    }
    if (!out) throw std::runtime_error("write_schedule: sink write failure");
}

RpmSchedule read_schedule(std::istream& in, int* pad_bits) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(1, "empty input, expected v1 header");

    int rpm_max = 0, pads = 0;
    if (std::sscanf(line.c_str(), "# air-viber-schedule v1 rpm_max=%d pad_bits=%d",
                    &rpm_max, &pads) != 2)
        throw FormatError(1, "bad header, expected '# air-viber-schedule v1 rpm_max=<int> pad_bits=<int>'");
    if (rpm_max <= 0) throw FormatError(1, "rpm_max must be positive");
    if (pads < 0) throw FormatError(1, "pad_bits must be >= 0");

    RpmSchedule schedule;
    schedule.rpm_max = rpm_max;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double dur = 0.0, rpm = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &dur, &rpm) != 2)
            throw FormatError(lineno, "expected '<duration_s>,<rpm>'");
        try {
            schedule.append(dur, rpm);
        } catch (const std::invalid_argument& e) {
            throw FormatError(lineno, e.what());
        }
    }
    if (pad_bits) *pad_bits = pads;
    return schedule;
}

void write_schedule_file(const RpmSchedule& schedule, int pad_bits, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_schedule(schedule, pad_bits, out);
}

RpmSchedule read_schedule_file(const std::string& path, int* pad_bits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_schedule(in, pad_bits);
}

}  // namespace airviber
