#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "vep/core/codec.hpp"
#include "vep/core/signer.hpp"
#include "vep/core/types.hpp"

namespace vep {

struct Block {
    Hash32 hash{};
    Hash32 prev_hash{};
    std::uint32_t localchain_id = 0;
    std::vector<Hash32> message_digests;
    // Full encoded messages; present iff the station held every constituent.
    std::optional<std::vector<Bytes>> payload;
    InfoFlag info_flag = InfoFlag::NONE;

    bool operator==(const Block&) const = default;
};

// hash = SHA-256(prev_hash ‖ localchain_id ‖ encoded messages in order).
// Messages must already be in the SP-specified order; every signature must
// verify against the sender's registered key.
Block forge_block(std::uint32_t localchain_id, const Hash32& prev_hash,
                  std::span<const ItsMessage> msgs, InfoFlag flag, const KeyStore& keys,
                  const CodecConfig& codec = {});

// Completeness check in front of forge_block: callers pass who must have
// contributed and what was actually collected.
Block forge_block_checked(std::uint32_t localchain_id, const Hash32& prev_hash,
                          const std::vector<StationId>& expected_senders,
                          const std::map<StationId, ItsMessage>& collected, InfoFlag flag,
                          const KeyStore& keys, const CodecConfig& codec = {});

// Geographically scoped DAG ledger. Stations may know a block only as a
// header (hash and optionally its parent) when payloads never reached them.
class Localchain {
public:
    static Localchain create(std::uint32_t id);
    static Hash32 genesis_hash(std::uint32_t id);

    std::uint32_t id() const { return id_; }
    const Hash32& genesis() const { return genesis_; }

    void append(Block block);

    // Header-only knowledge (sharding): record that a block exists.
    void note_header(const Hash32& hash, std::optional<Hash32> prev = {});

    bool has_block(const Hash32& h) const { return entries_.count(h) != 0; }
    bool has_payload(const Hash32& h) const;
    const Block* block(const Hash32& h) const;

    const std::set<Hash32>& tips() const { return tips_; }
    // Deterministic link target: lexicographically smallest tip hash.
    LedgerContainer make_container(InfoFlag flag) const;

    bool is_dangling(const Hash32& h) const;
    std::size_t size() const { return entries_.size(); }

    // Walk parents back to genesis; stops at a dangling or unknown link.
    // Throws IntegrityViolation if a cycle is encountered.
    std::vector<Hash32> walk_to_genesis(const Hash32& from) const;

    // Child -> parent linkage check usable with header-only knowledge.
    bool verify_link(const Hash32& child, const Hash32& parent) const;

    std::vector<const Block*> blocks_in_order() const;

private:
    struct Entry {
        std::optional<Hash32> prev;
        std::optional<Block> block;
        bool dangling_parent = false;
    };

    void link_or_mark_dangling(const Hash32& hash, const Hash32& prev);
    void refresh_tip(const Hash32& hash);

    std::uint32_t id_ = 0;
    Hash32 genesis_{};
    std::unordered_map<Hash32, Entry, Hash32Hasher> entries_;
    std::unordered_map<Hash32, std::vector<Hash32>, Hash32Hasher> waiting_children_;
    std::set<Hash32> tips_;
    std::set<Hash32> has_child_;
    std::vector<Hash32> insertion_order_;
};

} // namespace vep
