#include "airviber/framing.hpp"

#include <stdexcept>

namespace airviber {

void FramingConfig::validate() const {
    if (payload_len <= 0) throw std::invalid_argument("FramingConfig: payload_len must be > 0");
    if (preamble.empty()) throw std::invalid_argument("FramingConfig: empty preamble");
    for (size_t i = 1; i < preamble.size(); ++i)
        if (preamble[i] == preamble[i - 1])
            throw std::invalid_argument("FramingConfig: preamble must alternate");
}

uint8_t crc8(const BitStream& bits, uint8_t polynomial) {
    uint8_t reg = 0x00;
    for (uint8_t bit : bits) {
        const uint8_t top = (reg >> 7) ^ (bit & 1);
        reg = static_cast<uint8_t>(reg << 1);
        if (top) reg ^= polynomial;
    }
    return reg;
}

namespace {

BitStream compute_check(const BitStream& payload, const FramingConfig& config) {
    if (config.check_mode == CheckMode::Parity) {
        uint8_t parity = 0;
        for (uint8_t b : payload) parity ^= b;
        return {parity};  // even parity
    }
    const uint8_t crc = crc8(payload, config.crc_polynomial);
    BitStream check(8);
    for (int i = 0; i < 8; ++i) check[i] = (crc >> (7 - i)) & 1;  // MSB first
    return check;
}

}  // namespace

BitStream frame(const BitStream& payload, const FramingConfig& config) {
    config.validate();
    if (static_cast<int>(payload.size()) != config.payload_len)
        throw std::invalid_argument("frame: payload length does not match config");
    BitStream out = config.preamble;
    out.insert(out.end(), payload.begin(), payload.end());
    const BitStream check = compute_check(payload, config);
    out.insert(out.end(), check.begin(), check.end());
    return out;
}

std::pair<BitStream, bool> deframe(const BitStream& bits, const FramingConfig& config) {
    config.validate();
    if (static_cast<int>(bits.size()) != config.framed_len())
        throw std::invalid_argument("deframe: bit count does not match framed length");
    const size_t plen = static_cast<size_t>(config.payload_len);
    BitStream payload(bits.begin() + config.preamble.size(),
                      bits.begin() + config.preamble.size() + plen);
    BitStream received(bits.end() - config.check_len(), bits.end());
    const bool ok = compute_check(payload, config) == received;
    return {std::move(payload), ok};
}

}  // namespace airviber
