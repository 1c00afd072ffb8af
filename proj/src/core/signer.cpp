#include "vep/core/signer.hpp"

#include <cstring>

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/ecdsa.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>
#include <openssl/param_build.h>

namespace vep {

namespace {

class NullSigner final : public SignerBackend {
public:
    SignerKind kind() const override { return SignerKind::NULL_TAG; }

    KeyPair generate(std::uint64_t seed) const override {
        ByteWriter w;
        w.u64(seed);
        w.bytes(ByteView(reinterpret_cast<const std::uint8_t*>("null-key"), 8));
        Hash32 secret = sha256(w.data());
        Bytes k(secret.begin(), secret.end());
        return KeyPair{k, k};
    }

    Bytes sign(const Bytes& priv, ByteView payload) const override {
        ByteWriter w;
        w.bytes(priv);
        w.bytes(payload);
        Hash32 tag = sha256(w.data());
        return Bytes(tag.begin(), tag.end());
    }

    bool verify(const Bytes& pub, ByteView payload, ByteView sig) const override {
        if (sig.size() < 32) return false;
        Bytes expected = sign(pub, payload);
        return std::memcmp(expected.data(), sig.data(), 32) == 0;
    }

    std::size_t signature_size() const override { return 32; }
};

struct EvpPkeyDeleter {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, EvpPkeyDeleter>;

constexpr int kCurveNid = NID_brainpoolP256r1;
const char* kCurveName = "brainpoolP256r1";
constexpr std::size_t kFieldBytes = 32;

PkeyPtr pkey_from_raw(const Bytes& priv, const Bytes& pub) {
    OSSL_PARAM_BLD* bld = OSSL_PARAM_BLD_new();
    if (!bld) throw KeyError("param build");
    BIGNUM* d = nullptr;
    OSSL_PARAM* params = nullptr;
    EVP_PKEY* pkey = nullptr;
    EVP_PKEY_CTX* ctx = nullptr;
    bool ok = OSSL_PARAM_BLD_push_utf8_string(bld, OSSL_PKEY_PARAM_GROUP_NAME, kCurveName, 0);
    if (ok && !priv.empty()) {
        d = BN_bin2bn(priv.data(), static_cast<int>(priv.size()), nullptr);
        ok = d && OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_PRIV_KEY, d);
    }
    if (ok && !pub.empty())
        ok = OSSL_PARAM_BLD_push_octet_string(bld, OSSL_PKEY_PARAM_PUB_KEY, pub.data(),
                                              pub.size());
    if (ok) params = OSSL_PARAM_BLD_to_param(bld);
    if (params) {
        ctx = EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr);
        if (ctx && EVP_PKEY_fromdata_init(ctx) > 0)
            EVP_PKEY_fromdata(ctx, &pkey, priv.empty() ? EVP_PKEY_PUBLIC_KEY : EVP_PKEY_KEYPAIR,
                              params);
    }
    EVP_PKEY_CTX_free(ctx);
    OSSL_PARAM_free(params);
    BN_free(d);
    OSSL_PARAM_BLD_free(bld);
    if (!pkey) throw KeyError("key material rejected");
    return PkeyPtr(pkey);
}

class EcdsaSigner final : public SignerBackend {
public:
    SignerKind kind() const override { return SignerKind::ECDSA; }

    // Key material is derived from the seed (private scalar = H(seed) mod n),
    // so key generation is reproducible even though signatures are not.
    KeyPair generate(std::uint64_t seed) const override {
        EC_GROUP* group = EC_GROUP_new_by_curve_name(kCurveNid);
        if (!group) throw KeyError("curve unavailable");
        BIGNUM* order = BN_new();
        BIGNUM* d = BN_new();
        EC_POINT* q = EC_POINT_new(group);
        KeyPair kp;
        bool ok = order && d && q && EC_GROUP_get_order(group, order, nullptr);
        if (ok) {
            std::uint64_t counter = 0;
            do {
                ByteWriter w;
                w.u64(seed);
                w.u64(counter++);
                w.bytes(ByteView(reinterpret_cast<const std::uint8_t*>("ecdsa-priv"), 10));
                Hash32 h = sha256(w.data());
                ok = BN_bin2bn(h.data(), 32, d) && BN_mod(d, d, order, bn_ctx());
            } while (ok && BN_is_zero(d));
        }
        if (ok) ok = EC_POINT_mul(group, q, d, nullptr, nullptr, bn_ctx());
        if (ok) {
            kp.priv.resize(kFieldBytes);
            BN_bn2binpad(d, kp.priv.data(), static_cast<int>(kFieldBytes));
            std::size_t len = EC_POINT_point2oct(group, q, POINT_CONVERSION_UNCOMPRESSED,
                                                 nullptr, 0, bn_ctx());
            kp.pub.resize(len);
            ok = EC_POINT_point2oct(group, q, POINT_CONVERSION_UNCOMPRESSED, kp.pub.data(), len,
                                    bn_ctx()) == len;
        }
        EC_POINT_free(q);
        BN_free(d);
        BN_free(order);
        EC_GROUP_free(group);
        if (!ok) throw KeyError("key generation failed");
        return kp;
    }

    Bytes sign(const Bytes& priv, ByteView payload) const override {
        KeyPair kp{priv, {}};
        PkeyPtr pkey = pkey_from_raw(kp.priv, kp.pub);
        EVP_MD_CTX* md = EVP_MD_CTX_new();
        Bytes der;
        bool ok = md && EVP_DigestSignInit(md, nullptr, EVP_sha256(), nullptr, pkey.get()) > 0;
        if (ok) {
            std::size_t len = 0;
            ok = EVP_DigestSign(md, nullptr, &len, payload.data(), payload.size()) > 0;
            if (ok) {
                der.resize(len);
                ok = EVP_DigestSign(md, der.data(), &len, payload.data(), payload.size()) > 0;
                if (ok) der.resize(len);
            }
        }
        EVP_MD_CTX_free(md);
        if (!ok) throw KeyError("signing failed");
        return der_to_raw(der);
    }

    bool verify(const Bytes& pub, ByteView payload, ByteView sig) const override {
        if (sig.size() < 2 * kFieldBytes) return false;
        Bytes der = raw_to_der(sig.first(2 * kFieldBytes));
        if (der.empty()) return false;
        PkeyPtr pkey;
        try {
            pkey = pkey_from_raw({}, pub);
        } catch (const KeyError&) {
            return false;
        }
        EVP_MD_CTX* md = EVP_MD_CTX_new();
        bool ok = md && EVP_DigestVerifyInit(md, nullptr, EVP_sha256(), nullptr, pkey.get()) > 0 &&
                  EVP_DigestVerify(md, der.data(), der.size(), payload.data(), payload.size()) > 0;
        EVP_MD_CTX_free(md);
        return ok;
    }

    std::size_t signature_size() const override { return 2 * kFieldBytes; }

private:
    static BN_CTX* bn_ctx() {
        static thread_local BN_CTX* ctx = BN_CTX_new();
        return ctx;
    }

    static Bytes der_to_raw(const Bytes& der) {
        const std::uint8_t* p = der.data();
        ECDSA_SIG* s = d2i_ECDSA_SIG(nullptr, &p, static_cast<long>(der.size()));
        if (!s) throw KeyError("bad DER signature");
        Bytes raw(2 * kFieldBytes, 0);
        const BIGNUM *r = nullptr, *sv = nullptr;
        ECDSA_SIG_get0(s, &r, &sv);
        BN_bn2binpad(r, raw.data(), static_cast<int>(kFieldBytes));
        BN_bn2binpad(sv, raw.data() + kFieldBytes, static_cast<int>(kFieldBytes));
        ECDSA_SIG_free(s);
        return raw;
    }

    static Bytes raw_to_der(ByteView raw) {
        BIGNUM* r = BN_bin2bn(raw.data(), static_cast<int>(kFieldBytes), nullptr);
        BIGNUM* s = BN_bin2bn(raw.data() + kFieldBytes, static_cast<int>(kFieldBytes), nullptr);
        ECDSA_SIG* sig = ECDSA_SIG_new();
        Bytes der;
        if (r && s && sig && ECDSA_SIG_set0(sig, r, s)) {
            r = s = nullptr;
            int len = i2d_ECDSA_SIG(sig, nullptr);
            if (len > 0) {
                der.resize(static_cast<std::size_t>(len));
                std::uint8_t* p = der.data();
                i2d_ECDSA_SIG(sig, &p);
            }
        }
        BN_free(r);
        BN_free(s);
        ECDSA_SIG_free(sig);
        return der;
    }
};

} // namespace

std::shared_ptr<SignerBackend> make_null_signer() { return std::make_shared<NullSigner>(); }
std::shared_ptr<SignerBackend> make_ecdsa_signer() { return std::make_shared<EcdsaSigner>(); }

std::shared_ptr<SignerBackend> make_signer(SignerKind kind) {
    return kind == SignerKind::ECDSA ? make_ecdsa_signer() : make_null_signer();
}

KeyStore::KeyStore(std::shared_ptr<SignerBackend> backend, std::uint32_t signature_bytes)
    : backend_(std::move(backend)), signature_bytes_(signature_bytes) {
    if (signature_bytes_ < backend_->signature_size())
        signature_bytes_ = static_cast<std::uint32_t>(backend_->signature_size());
}

void KeyStore::register_station(std::uint32_t id, std::uint64_t seed) {
    keys_[id] = backend_->generate(seed);
}

const Bytes& KeyStore::pubkey(std::uint32_t id) const {
    auto it = keys_.find(id);
    if (it == keys_.end()) throw KeyError("unknown key id");
    return it->second.pub;
}

Bytes KeyStore::sign(std::uint32_t id, ByteView payload) const {
    auto it = keys_.find(id);
    if (it == keys_.end()) throw KeyError("unknown key id");
    Bytes sig = backend_->sign(it->second.priv, payload);
    sig.resize(signature_bytes_, 0); // calibration padding
    return sig;
}

bool KeyStore::verify(std::uint32_t id, ByteView payload, ByteView sig) const {
    auto it = keys_.find(id);
    if (it == keys_.end()) throw KeyError("unknown key id");
    return backend_->verify(it->second.pub, payload, sig);
}

bool KeyStore::verify_with_key(const Bytes& pub, ByteView payload, ByteView sig) const {
    return backend_->verify(pub, payload, sig);
}

} // namespace vep
