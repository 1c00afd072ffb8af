#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "vep/core/bytes.hpp"

namespace vep {

using Hash32 = std::array<std::uint8_t, 32>;

Hash32 sha256(ByteView data);
std::string hash_hex(const Hash32& h);

struct Hash32Hasher {
    std::size_t operator()(const Hash32& h) const {
        std::size_t v;
        static_assert(sizeof(v) <= 32);
        __builtin_memcpy(&v, h.data(), sizeof(v));
        return v;
    }
};

} // namespace vep
