#pragma once

#include <iosfwd>
#include <string>

#include "airviber/types.hpp"

namespace airviber {

// Schedule file v1:
//   # air-viber-schedule v1 rpm_max=<int> pad_bits=<int>
//   <duration_s>,<rpm>
void write_schedule(const RpmSchedule& schedule, int pad_bits, std::ostream& out);
RpmSchedule read_schedule(std::istream& in, int* pad_bits = nullptr);

void write_schedule_file(const RpmSchedule& schedule, int pad_bits, const std::string& path);
RpmSchedule read_schedule_file(const std::string& path, int* pad_bits = nullptr);

}  // namespace airviber
