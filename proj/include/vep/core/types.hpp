#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "vep/core/bytes.hpp"
#include "vep/core/hash.hpp"

namespace vep {

using StationId = std::uint32_t;

enum class MsgType : std::uint8_t {
    CAM = 0,
    MCM_REQUEST = 1,
    MCM_RESPONSE = 2,
    DENM = 3,
    SAEM = 4,
    TUM = 5,
    TUMACK = 6,
    OTHER = 7,
};

const char* msg_type_name(MsgType t);

enum class InfoFlag : std::uint8_t { NONE = 0, SUCCESS = 1, FAILURE = 2 };

struct LedgerContainer {
    std::uint32_t localchain_id = 0;
    Hash32 prev_block_hash{};
    InfoFlag info_flag = InfoFlag::NONE;

    bool operator==(const LedgerContainer&) const = default;
};

enum class PbftStage : std::uint8_t { PRE_PREPARE = 0, PREPARE = 1, COMMIT = 2 };

const char* stage_name(PbftStage s);

struct ProcessId {
    StationId proposer = 0;
    std::uint64_t nonce = 0;

    auto operator<=>(const ProcessId&) const = default;
};

struct ConsensusContainer {
    ProcessId process_id;
    PbftStage stage = PbftStage::PRE_PREPARE;
    std::uint32_t view = 0;
    Hash32 proposal_digest{};
    std::optional<Bytes> proposal_payload;            // PRE_PREPARE only
    std::optional<std::vector<StationId>> membership; // PRE_PREPARE only

    bool operator==(const ConsensusContainer&) const = default;
};

enum class TokenMechanism : std::uint8_t {
    OFFER = 0,
    PROMISE_PROPOSAL = 1,
    PROMISE_OUTPUT = 2,
    PROMISE_VERIFY = 3,
};

using Address32 = std::array<std::uint8_t, 32>;

struct TokenOutput {
    Address32 address{};
    std::uint64_t amount = 0;

    bool operator==(const TokenOutput&) const = default;
};

struct TokenContainer {
    TokenMechanism mechanism = TokenMechanism::OFFER;
    // For PROMISE_VERIFY the amount field carries the verdict (1 success,
    // 0 failure); see docs/wire.md.
    std::uint64_t amount = 0;
    std::vector<TokenOutput> outputs;
    std::uint64_t tx_nonce = 0;
    Bytes tx_signature;
    Bytes certificate;

    bool operator==(const TokenContainer&) const = default;
};

// Canonical bytes covered by TokenContainer::tx_signature.
Bytes token_signing_payload(const TokenContainer& c);

struct VeeExtension {
    std::uint32_t event_id = 0;
    std::uint16_t sp_id = 0;
    std::optional<LedgerContainer> ledger;
    std::optional<ConsensusContainer> consensus;
    std::optional<TokenContainer> token;

    bool has_any_container() const {
        return ledger.has_value() || consensus.has_value() || token.has_value();
    }
    bool operator==(const VeeExtension&) const = default;
};

struct ItsMessage {
    MsgType msg_type = MsgType::CAM;
    StationId sender = 0;
    std::int64_t timestamp_ms = 0; // since scenario start
    std::uint64_t seq = 0;         // per-sender counter
    Bytes body;
    Bytes signature;
    std::optional<VeeExtension> extension;

    bool operator==(const ItsMessage&) const = default;
};

// Canonical bytes covered by ItsMessage::signature. The extension is not
// included: its containers carry their own signed content where needed.
Bytes message_signing_payload(const ItsMessage& m);

} // namespace vep
