#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>

#include "vep/core/bytes.hpp"
#include "vep/core/errors.hpp"
#include "vep/core/hash.hpp"

namespace vep {

enum class SignerKind : std::uint8_t { NULL_TAG, ECDSA };

struct KeyPair {
    Bytes priv;
    Bytes pub;
};

// Signature backend. The NULL_TAG backend is a deterministic keyed 32-byte
// tag (shared-secret model, pub == priv) used where reproducible runs matter;
// the ECDSA backend signs SHA-256 digests on brainpoolP256r1 with fixed-width
// 64-byte (r ‖ s) signatures.
class SignerBackend {
public:
    virtual ~SignerBackend() = default;
    virtual SignerKind kind() const = 0;
    virtual KeyPair generate(std::uint64_t seed) const = 0;
    virtual Bytes sign(const Bytes& priv, ByteView payload) const = 0;
    virtual bool verify(const Bytes& pub, ByteView payload, ByteView sig) const = 0;
    virtual std::size_t signature_size() const = 0;
};

std::shared_ptr<SignerBackend> make_null_signer();
std::shared_ptr<SignerBackend> make_ecdsa_signer();
std::shared_ptr<SignerBackend> make_signer(SignerKind kind);

// Station identity keys plus sign/verify with configurable on-wire signature
// width (padding past the backend's natural size, for packet calibration).
class KeyStore {
public:
    KeyStore(std::shared_ptr<SignerBackend> backend, std::uint32_t signature_bytes);

    void register_station(std::uint32_t id, std::uint64_t seed);
    bool has(std::uint32_t id) const { return keys_.count(id) != 0; }
    const Bytes& pubkey(std::uint32_t id) const;

    Bytes sign(std::uint32_t id, ByteView payload) const;
    bool verify(std::uint32_t id, ByteView payload, ByteView sig) const;
    bool verify_with_key(const Bytes& pub, ByteView payload, ByteView sig) const;

    const SignerBackend& backend() const { return *backend_; }
    std::uint32_t signature_bytes() const { return signature_bytes_; }

private:
    std::shared_ptr<SignerBackend> backend_;
    std::uint32_t signature_bytes_;
    std::unordered_map<std::uint32_t, KeyPair> keys_;
};

} // namespace vep
