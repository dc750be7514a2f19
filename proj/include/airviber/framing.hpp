#pragma once

#include <cstdint>
#include <utility>

#include "airviber/types.hpp"

namespace airviber {

struct FramingConfig {
    BitStream preamble = {1, 0, 1, 0};
    int payload_len = 32;
    CheckMode check_mode = CheckMode::Parity;
    uint8_t crc_polynomial = 0x07;  // CRC-8/ATM: init 0, no reflection, no xorout

    int check_len() const { return check_mode == CheckMode::Parity ? 1 : 8; }
    int framed_len() const { return static_cast<int>(preamble.size()) + payload_len + check_len(); }
    void validate() const;
};

// CRC-8 of a bit stream, MSB-first long division.
uint8_t crc8(const BitStream& bits, uint8_t polynomial);

// preamble || payload || check
BitStream frame(const BitStream& payload, const FramingConfig& config);

// Strips the preamble, recomputes the check over the payload. The payload is
// returned either way; the flag reports whether the received check matched.
std::pair<BitStream, bool> deframe(const BitStream& bits, const FramingConfig& config);

}  // namespace airviber
