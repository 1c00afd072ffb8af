#include "vep/core/hash.hpp"

#include <openssl/sha.h>

namespace vep {

Hash32 sha256(ByteView data) {
    Hash32 out;
    SHA256(data.data(), data.size(), out.data());
    return out;
}

std::string hash_hex(const Hash32& h) {
    return to_hex(ByteView(h.data(), h.size()));
}

} // namespace vep
