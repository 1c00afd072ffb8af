#include "vep/core/codec.hpp"

#include <cstring>
#include <limits>

namespace vep {

namespace {

constexpr std::size_t kFixedBaseBytes = 1 + 1 + 4 + 8 + 8 + 2 + 4 + 2;

constexpr std::uint8_t kHasLedger = 0x01;
constexpr std::uint8_t kHasConsensus = 0x02;
constexpr std::uint8_t kHasToken = 0x04;

constexpr std::uint8_t kHasPayload = 0x01;
constexpr std::uint8_t kHasMembership = 0x02;

void write_hash(ByteWriter& w, const Hash32& h) { w.bytes(ByteView(h.data(), h.size())); }

Hash32 read_hash(ByteReader& r) {
    Hash32 h;
    ByteView v = r.bytes(32);
    std::memcpy(h.data(), v.data(), 32);
    return h;
}

void write_ledger(ByteWriter& w, const LedgerContainer& c) {
    w.varint(c.localchain_id);
    write_hash(w, c.prev_block_hash);
    w.u8(static_cast<std::uint8_t>(c.info_flag));
}

LedgerContainer read_ledger(ByteReader& r) {
    LedgerContainer c;
    std::uint64_t id = r.varint();
    if (id > std::numeric_limits<std::uint32_t>::max()) throw DecodeError("localchain id");
    c.localchain_id = static_cast<std::uint32_t>(id);
    c.prev_block_hash = read_hash(r);
    std::uint8_t flag = r.u8();
    if (flag > 2) throw DecodeError("info flag");
    c.info_flag = static_cast<InfoFlag>(flag);
    return c;
}

void write_consensus(ByteWriter& w, const ConsensusContainer& c) {
    w.varint(c.process_id.proposer);
    w.varint(c.process_id.nonce);
    w.u8(static_cast<std::uint8_t>(c.stage));
    w.varint(c.view);
    write_hash(w, c.proposal_digest);
    std::uint8_t presence = 0;
    if (c.proposal_payload) presence |= kHasPayload;
    if (c.membership) presence |= kHasMembership;
    w.u8(presence);
    if (c.proposal_payload) {
        w.varint(c.proposal_payload->size());
        w.bytes(*c.proposal_payload);
    }
    if (c.membership) {
        w.varint(c.membership->size());
        for (StationId s : *c.membership) w.varint(s);
    }
}

ConsensusContainer read_consensus(ByteReader& r) {
    ConsensusContainer c;
    std::uint64_t proposer = r.varint();
    if (proposer > std::numeric_limits<std::uint32_t>::max()) throw DecodeError("proposer id");
    c.process_id.proposer = static_cast<StationId>(proposer);
    c.process_id.nonce = r.varint();
    std::uint8_t stage = r.u8();
    if (stage > 2) throw DecodeError("stage");
    c.stage = static_cast<PbftStage>(stage);
    std::uint64_t view = r.varint();
    if (view > std::numeric_limits<std::uint32_t>::max()) throw DecodeError("view");
    c.view = static_cast<std::uint32_t>(view);
    c.proposal_digest = read_hash(r);
    std::uint8_t presence = r.u8();
    if (presence & ~(kHasPayload | kHasMembership)) throw DecodeError("presence bits");
    if (presence & kHasPayload) {
        std::uint64_t n = r.varint();
        if (n > r.remaining()) throw DecodeError("payload length");
        ByteView v = r.bytes(static_cast<std::size_t>(n));
        c.proposal_payload = Bytes(v.begin(), v.end());
    }
    if (presence & kHasMembership) {
        std::uint64_t n = r.varint();
        if (n > r.remaining()) throw DecodeError("membership length");
        std::vector<StationId> members;
        members.reserve(static_cast<std::size_t>(n));
        for (std::uint64_t i = 0; i < n; ++i) {
            std::uint64_t m = r.varint();
            if (m > std::numeric_limits<std::uint32_t>::max()) throw DecodeError("member id");
            members.push_back(static_cast<StationId>(m));
        }
        c.membership = std::move(members);
    }
    return c;
}

void write_token(ByteWriter& w, const TokenContainer& c) {
    w.u8(static_cast<std::uint8_t>(c.mechanism));
    w.varint(c.amount);
    w.varint(c.outputs.size());
    for (const TokenOutput& o : c.outputs) {
        w.bytes(ByteView(o.address.data(), o.address.size()));
        w.varint(o.amount);
    }
    w.varint(c.tx_nonce);
    w.varint(c.tx_signature.size());
    w.bytes(c.tx_signature);
    w.varint(c.certificate.size());
    w.bytes(c.certificate);
}

TokenContainer read_token(ByteReader& r) {
    TokenContainer c;
    std::uint8_t mech = r.u8();
    if (mech > 3) throw DecodeError("token mechanism");
    c.mechanism = static_cast<TokenMechanism>(mech);
    c.amount = r.varint();
    std::uint64_t n = r.varint();
    if (n > r.remaining() / 33) throw DecodeError("outputs length");
    for (std::uint64_t i = 0; i < n; ++i) {
        TokenOutput o;
        ByteView v = r.bytes(32);
        std::memcpy(o.address.data(), v.data(), 32);
        o.amount = r.varint();
        c.outputs.push_back(o);
    }
    c.tx_nonce = r.varint();
    std::uint64_t sig_len = r.varint();
    if (sig_len > r.remaining()) throw DecodeError("signature length");
    ByteView sig = r.bytes(static_cast<std::size_t>(sig_len));
    c.tx_signature = Bytes(sig.begin(), sig.end());
    std::uint64_t cert_len = r.varint();
    if (cert_len > r.remaining()) throw DecodeError("certificate length");
    ByteView cert = r.bytes(static_cast<std::size_t>(cert_len));
    c.certificate = Bytes(cert.begin(), cert.end());
    return c;
}

Bytes extension_content(const VeeExtension& ext) {
    ByteWriter w;
    w.varint(ext.event_id);
    w.varint(ext.sp_id);
    std::uint8_t bitmap = 0;
    if (ext.ledger) bitmap |= kHasLedger;
    if (ext.consensus) bitmap |= kHasConsensus;
    if (ext.token) bitmap |= kHasToken;
    w.u8(bitmap);
    if (ext.ledger) write_ledger(w, *ext.ledger);
    if (ext.consensus) write_consensus(w, *ext.consensus);
    if (ext.token) write_token(w, *ext.token);
    return w.take();
}

VeeExtension parse_extension_content(ByteView content) {
    ByteReader r(content);
    VeeExtension ext;
    std::uint64_t event_id = r.varint();
    if (event_id > std::numeric_limits<std::uint32_t>::max()) throw DecodeError("event id");
    ext.event_id = static_cast<std::uint32_t>(event_id);
    std::uint64_t sp_id = r.varint();
    if (sp_id > std::numeric_limits<std::uint16_t>::max()) throw DecodeError("sp id");
    ext.sp_id = static_cast<std::uint16_t>(sp_id);
    std::uint8_t bitmap = r.u8();
    if (bitmap == 0 || (bitmap & ~(kHasLedger | kHasConsensus | kHasToken)))
        throw DecodeError("container bitmap");
    if (bitmap & kHasLedger) ext.ledger = read_ledger(r);
    if (bitmap & kHasConsensus) ext.consensus = read_consensus(r);
    if (bitmap & kHasToken) ext.token = read_token(r);
    if (!r.done()) throw DecodeError("trailing extension content");
    return ext;
}

} // namespace

const char* msg_type_name(MsgType t) {
    switch (t) {
        case MsgType::CAM: return "CAM";
        case MsgType::MCM_REQUEST: return "MCM_REQUEST";
        case MsgType::MCM_RESPONSE: return "MCM_RESPONSE";
        case MsgType::DENM: return "DENM";
        case MsgType::SAEM: return "SAEM";
        case MsgType::TUM: return "TUM";
        case MsgType::TUMACK: return "TUMACK";
        case MsgType::OTHER: return "OTHER";
    }
    return "?";
}

const char* stage_name(PbftStage s) {
    switch (s) {
        case PbftStage::PRE_PREPARE: return "PRE_PREPARE";
        case PbftStage::PREPARE: return "PREPARE";
        case PbftStage::COMMIT: return "COMMIT";
    }
    return "?";
}

Bytes message_signing_payload(const ItsMessage& m) {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(m.msg_type));
    w.u32(m.sender);
    w.u64(static_cast<std::uint64_t>(m.timestamp_ms));
    w.u64(m.seq);
    w.u32(static_cast<std::uint32_t>(m.body.size()));
    w.bytes(m.body);
    return w.take();
}

Bytes token_signing_payload(const TokenContainer& c) {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(c.mechanism));
    w.u64(c.amount);
    w.u32(static_cast<std::uint32_t>(c.outputs.size()));
    for (const TokenOutput& o : c.outputs) {
        w.bytes(ByteView(o.address.data(), o.address.size()));
        w.u64(o.amount);
    }
    w.u64(c.tx_nonce);
    return w.take();
}

Bytes encode_extension(const VeeExtension& ext) {
    if (!ext.has_any_container()) throw EncodingError("extension without containers");
    Bytes content = extension_content(ext);
    if (content.size() > std::numeric_limits<std::uint16_t>::max())
        throw EncodingError("extension too large");
    ByteWriter w;
    w.bytes(ByteView(kVeeMagic, 3));
    ByteWriter framed;
    framed.u8(kWireVersion);
    framed.u16(static_cast<std::uint16_t>(content.size()));
    framed.bytes(content);
    std::uint16_t crc = crc16(framed.data());
    w.bytes(framed.data());
    w.u16(crc);
    return w.take();
}

std::size_t encoded_container_size(const TokenContainer& c) {
    ByteWriter w;
    write_token(w, c);
    return w.size();
}

Bytes encode(const ItsMessage& msg, const CodecConfig& cfg) {
    if (msg.timestamp_ms < 0) throw EncodingError("negative timestamp");
    if (msg.body.size() > std::numeric_limits<std::uint32_t>::max())
        throw EncodingError("body too large");
    if (msg.signature.size() > std::numeric_limits<std::uint16_t>::max())
        throw EncodingError("signature too large");

    std::size_t natural =
        kFixedBaseBytes + cfg.header_pad_bytes + msg.body.size() + msg.signature.size();
    std::size_t pad = cfg.header_pad_bytes;
    if (natural < cfg.min_packet_bytes) pad += cfg.min_packet_bytes - natural;
    if (pad > std::numeric_limits<std::uint16_t>::max()) throw EncodingError("pad too large");

    ByteWriter w;
    w.u8(kWireVersion);
    w.u8(static_cast<std::uint8_t>(msg.msg_type));
    w.u32(msg.sender);
    w.u64(static_cast<std::uint64_t>(msg.timestamp_ms));
    w.u64(msg.seq);
    w.u16(static_cast<std::uint16_t>(pad));
    w.zeros(pad);
    w.u32(static_cast<std::uint32_t>(msg.body.size()));
    w.bytes(msg.body);
    w.u16(static_cast<std::uint16_t>(msg.signature.size()));
    w.bytes(msg.signature);

    if (msg.extension) {
        Bytes ext = encode_extension(*msg.extension);
        w.bytes(ext);
    }
    return w.take();
}

Decoded decode(ByteView wire, const CodecConfig&) {
    Decoded out;
    ByteReader r(wire);

    std::uint8_t version = r.u8();
    if (version != kWireVersion) throw DecodeError("unknown wire version");
    std::uint8_t type = r.u8();
    if (type > static_cast<std::uint8_t>(MsgType::OTHER)) throw DecodeError("message type");
    out.msg.msg_type = static_cast<MsgType>(type);
    out.msg.sender = r.u32();
    out.msg.timestamp_ms = static_cast<std::int64_t>(r.u64());
    out.msg.seq = r.u64();
    std::uint16_t pad = r.u16();
    r.skip(pad);
    std::uint32_t body_len = r.u32();
    ByteView body = r.bytes(body_len);
    out.msg.body = Bytes(body.begin(), body.end());
    std::uint16_t sig_len = r.u16();
    ByteView sig = r.bytes(sig_len);
    out.msg.signature = Bytes(sig.begin(), sig.end());
    out.base_len = r.pos();

    if (r.done()) {
        out.ext_status = ExtStatus::ABSENT;
        return out;
    }

    // Anything after the base message is the extension region. A corrupted
    // region is reported as INVALID without touching the base message.
    out.ext_status = ExtStatus::INVALID;
    try {
        if (r.remaining() < 3) return out;
        ByteView magic = r.bytes(3);
        if (std::memcmp(magic.data(), kVeeMagic, 3) != 0) return out;
        std::size_t framed_start = r.pos();
        std::uint8_t ext_version = r.u8();
        if (ext_version != kWireVersion) return out;
        std::uint16_t content_len = r.u16();
        ByteView content = r.bytes(content_len);
        std::size_t framed_end = r.pos();
        std::uint16_t crc = r.u16();
        if (!r.done()) return out;
        ByteView framed = wire.subspan(framed_start, framed_end - framed_start);
        if (crc16(framed) != crc) return out;
        out.msg.extension = parse_extension_content(content);
        out.ext_status = ExtStatus::VALID;
    } catch (const DecodeError&) {
        out.msg.extension.reset();
        out.ext_status = ExtStatus::INVALID;
    }
    return out;
}

} // namespace vep
