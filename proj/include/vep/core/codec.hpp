#pragma once

#include <cstddef>

#include "vep/core/types.hpp"

namespace vep {

// Byte-level model of the lower protocol stack. header_pad_bytes stands in
// for the MAC/LLC/GeoNetworking/BTP headers that frame a facility message;
// min_packet_bytes pads short frames up to the smallest packet the radio
// produces. See docs/wire.md for the full layout.
struct CodecConfig {
    std::uint32_t header_pad_bytes = 30;
    std::uint32_t min_packet_bytes = 92;
};

inline constexpr std::uint8_t kVeeMagic[3] = {0x56, 0x45, 0x45}; // "VEE"
inline constexpr std::uint8_t kWireVersion = 1;

enum class ExtStatus : std::uint8_t { ABSENT, VALID, INVALID };

struct Decoded {
    ItsMessage msg;
    std::size_t base_len = 0; // bytes consumed by the extension-unaware path
    ExtStatus ext_status = ExtStatus::ABSENT;
};

// Deterministic encoding; the extension (if any) is appended after the base
// message so an extension-unaware decoder consumes exactly the base bytes.
Bytes encode(const ItsMessage& msg, const CodecConfig& cfg = {});

// Decodes the base message and, when the VEE magic tag introduces a valid
// extension region, the extension as well. A malformed extension region never
// invalidates the base message.
Decoded decode(ByteView wire, const CodecConfig& cfg = {});

// Extension region alone (magic, framing and CRC included).
Bytes encode_extension(const VeeExtension& ext);

std::size_t encoded_container_size(const TokenContainer& c);

} // namespace vep
