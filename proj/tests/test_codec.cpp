#include "doctest.h"

#include <random>

#include "vep/core/codec.hpp"
#include "vep/core/signer.hpp"

using namespace vep;

namespace {

ItsMessage sample_msg(bool with_ext) {
    ItsMessage m;
    m.msg_type = MsgType::CAM;
    m.sender = 7;
    m.timestamp_ms = 123456;
    m.seq = 42;
    m.body = Bytes{1, 2, 3, 4, 5};
    m.signature = Bytes(32, 0xAB);
    if (with_ext) {
        VeeExtension ext;
        ext.event_id = 9;
        ext.sp_id = 2;
        LedgerContainer lc;
        lc.localchain_id = 1;
        lc.prev_block_hash = sha256(m.body);
        lc.info_flag = InfoFlag::SUCCESS;
        ext.ledger = lc;
        m.extension = ext;
    }
    return m;
}

} // namespace

TEST_CASE("codec round-trips messages with and without extensions") {
    for (bool with_ext : {false, true}) {
        ItsMessage m = sample_msg(with_ext);
        Bytes wire = encode(m);
        Decoded d = decode(wire);
        CHECK(d.msg == m);
        CHECK(d.ext_status == (with_ext ? ExtStatus::VALID : ExtStatus::ABSENT));
    }
}

TEST_CASE("codec round-trips all container kinds") {
    ItsMessage m = sample_msg(false);
    VeeExtension ext;
    ext.event_id = 77;
    ext.sp_id = 3;
    ConsensusContainer cc;
    cc.process_id = {4, 19};
    cc.stage = PbftStage::PRE_PREPARE;
    cc.view = 0;
    cc.proposal_payload = Bytes(32, 0x55);
    cc.proposal_digest = sha256(*cc.proposal_payload);
    cc.membership = std::vector<StationId>{0, 1, 2, 3};
    ext.consensus = cc;
    TokenContainer tc;
    tc.mechanism = TokenMechanism::OFFER;
    tc.amount = 30;
    tc.outputs.push_back({Address32{}, 30});
    tc.tx_nonce = 5;
    tc.tx_signature = Bytes(64, 1);
    tc.certificate = Bytes(40, 2);
    ext.token = tc;
    m.extension = ext;

    Bytes wire = encode(m);
    Decoded d = decode(wire);
    CHECK(d.ext_status == ExtStatus::VALID);
    CHECK(d.msg == m);
}

TEST_CASE("extension bytes are appended after the base message") {
    ItsMessage plain = sample_msg(false);
    ItsMessage extended = sample_msg(true);
    Bytes wire_plain = encode(plain);
    Bytes wire_ext = encode(extended);

    REQUIRE(wire_ext.size() > wire_plain.size());
    CHECK(std::equal(wire_plain.begin(), wire_plain.end(), wire_ext.begin()));

    // Extension-unaware path: consume exactly the base message.
    Decoded d = decode(wire_ext);
    CHECK(d.base_len == wire_plain.size());
    Decoded unaware = decode(ByteView(wire_ext.data(), d.base_len));
    CHECK(unaware.ext_status == ExtStatus::ABSENT);
    CHECK(unaware.msg == plain);
}

TEST_CASE("minimal CAM with empty body pads to the 92-byte floor") {
    ItsMessage m;
    m.msg_type = MsgType::CAM;
    m.sender = 1;
    m.timestamp_ms = 0;
    m.seq = 0;
    m.signature = Bytes(32, 0);
    CHECK(encode(m).size() == 92);

    m.signature.clear(); // even shorter: still padded up
    Bytes wire = encode(m);
    CHECK(wire.size() == 92);
    CHECK(decode(wire).msg == m);
}

TEST_CASE("corrupting any single extension byte never touches the base message") {
    ItsMessage m = sample_msg(true);
    Bytes wire = encode(m);
    std::size_t base_len = decode(wire).base_len;
    ItsMessage base = m;
    base.extension.reset();

    for (std::size_t i = base_len; i < wire.size(); ++i) {
        for (std::uint8_t flip : {0x01, 0x80, 0xFF}) {
            Bytes corrupted = wire;
            corrupted[i] ^= flip;
            Decoded d = decode(corrupted);
            CHECK(d.ext_status == ExtStatus::INVALID);
            CHECK(d.msg == base);
        }
    }
}

TEST_CASE("truncated base message raises DecodeError") {
    Bytes wire = encode(sample_msg(false));
    Decoded full = decode(wire);
    for (std::size_t len = 0; len < full.base_len; ++len)
        CHECK_THROWS_AS(decode(ByteView(wire.data(), len)), DecodeError);
}

TEST_CASE("field overflow raises EncodingError") {
    ItsMessage m = sample_msg(false);
    m.timestamp_ms = -1;
    CHECK_THROWS_AS(encode(m), EncodingError);
    m = sample_msg(false);
    m.signature.assign(70000, 0);
    CHECK_THROWS_AS(encode(m), EncodingError);
    m = sample_msg(false);
    m.extension = VeeExtension{}; // no containers
    CHECK_THROWS_AS(encode(m), EncodingError);
}

TEST_CASE("signer backends round-trip and reject altered payloads") {
    for (auto kind : {SignerKind::NULL_TAG, SignerKind::ECDSA}) {
        KeyStore store(make_signer(kind), 64);
        store.register_station(1, 1001);
        Bytes payload{10, 20, 30};
        Bytes sig = store.sign(1, payload);
        CHECK(sig.size() == 64);
        CHECK(store.verify(1, payload, sig));

        Bytes altered = payload;
        altered[0] ^= 1;
        CHECK_FALSE(store.verify(1, altered, sig));

        Bytes bad_sig = sig;
        bad_sig[4] ^= 1;
        CHECK_FALSE(store.verify(1, payload, bad_sig));

        CHECK_THROWS_AS(store.sign(99, payload), KeyError);
        CHECK_THROWS_AS((void)store.pubkey(99), KeyError);
    }
}

TEST_CASE("messages signed by one station do not verify under another") {
    KeyStore store(make_null_signer(), 32);
    store.register_station(1, 11);
    store.register_station(2, 22);
    Bytes payload{1, 2, 3};
    Bytes sig = store.sign(1, payload);
    CHECK(store.verify(1, payload, sig));
    CHECK_FALSE(store.verify(2, payload, sig));
}

TEST_CASE("ecdsa key generation is reproducible from the seed") {
    auto backend = make_ecdsa_signer();
    KeyPair a = backend->generate(5);
    KeyPair b = backend->generate(5);
    KeyPair c = backend->generate(6);
    CHECK(a.pub == b.pub);
    CHECK(a.priv == b.priv);
    CHECK(a.pub != c.pub);
}
