#include "vep/ledger/ledger.hpp"

#include <algorithm>

namespace vep {

Block forge_block(std::uint32_t localchain_id, const Hash32& prev_hash,
                  std::span<const ItsMessage> msgs, InfoFlag flag, const KeyStore& keys,
                  const CodecConfig& codec) {
    if (msgs.empty()) throw IncompleteBlockError("no messages for block");

    Block b;
    b.prev_hash = prev_hash;
    b.localchain_id = localchain_id;
    b.info_flag = flag;

    ByteWriter hasher;
    hasher.bytes(ByteView(prev_hash.data(), prev_hash.size()));
    hasher.u32(localchain_id);
    std::vector<Bytes> encoded;
    for (const ItsMessage& m : msgs) {
        if (!keys.verify(m.sender, message_signing_payload(m), m.signature))
            throw InvalidMessageError("unverifiable message signature");
        Bytes wire = encode(m, codec);
        b.message_digests.push_back(sha256(wire));
        hasher.bytes(wire);
        encoded.push_back(std::move(wire));
    }
    b.hash = sha256(hasher.data());
    b.payload = std::move(encoded);
    return b;
}

Block forge_block_checked(std::uint32_t localchain_id, const Hash32& prev_hash,
                          const std::vector<StationId>& expected_senders,
                          const std::map<StationId, ItsMessage>& collected, InfoFlag flag,
                          const KeyStore& keys, const CodecConfig& codec) {
    std::vector<ItsMessage> msgs;
    for (StationId s : expected_senders) {
        auto it = collected.find(s);
        if (it == collected.end()) throw IncompleteBlockError("missing message for block");
        msgs.push_back(it->second);
    }
    // Block order is ascending by station id.
    std::sort(msgs.begin(), msgs.end(),
              [](const ItsMessage& a, const ItsMessage& b) { return a.sender < b.sender; });
    return forge_block(localchain_id, prev_hash, msgs, flag, keys, codec);
}

Hash32 Localchain::genesis_hash(std::uint32_t id) {
    ByteWriter w;
    w.u32(id);
    w.bytes(ByteView(reinterpret_cast<const std::uint8_t*>("GENESIS"), 7));
    return sha256(w.data());
}

Localchain Localchain::create(std::uint32_t id) {
    Localchain c;
    c.id_ = id;
    c.genesis_ = genesis_hash(id);
    Entry e;
    e.block = Block{c.genesis_, Hash32{}, id, {}, std::nullopt, InfoFlag::NONE};
    c.entries_[c.genesis_] = std::move(e);
    c.tips_.insert(c.genesis_);
    c.insertion_order_.push_back(c.genesis_);
    return c;
}

bool Localchain::has_payload(const Hash32& h) const {
    auto it = entries_.find(h);
    return it != entries_.end() && it->second.block && it->second.block->payload;
}

const Block* Localchain::block(const Hash32& h) const {
    auto it = entries_.find(h);
    if (it == entries_.end() || !it->second.block) return nullptr;
    return &*it->second.block;
}

void Localchain::refresh_tip(const Hash32& hash) {
    if (!has_child_.count(hash)) tips_.insert(hash);
}

void Localchain::link_or_mark_dangling(const Hash32& hash, const Hash32& prev) {
    auto& entry = entries_[hash];
    if (entries_.count(prev)) {
        entry.dangling_parent = false;
        has_child_.insert(prev);
        tips_.erase(prev);
    } else {
        entry.dangling_parent = true;
        waiting_children_[prev].push_back(hash);
    }
}

void Localchain::append(Block block) {
    if (block.localchain_id != id_) throw IntegrityViolation("block for another localchain");
    auto it = entries_.find(block.hash);
    if (it != entries_.end() && it->second.block) {
        if (*it->second.block == block) return; // idempotent re-append
        throw IntegrityViolation("conflicting content for known block hash");
    }

    bool known_header = it != entries_.end();
    Entry& entry = entries_[block.hash];
    if (known_header && entry.prev && *entry.prev != block.prev_hash)
        throw IntegrityViolation("conflicting parent for known block hash");
    entry.prev = block.prev_hash;
    Hash32 prev = block.prev_hash;
    Hash32 hash = block.hash;
    entry.block = std::move(block);
    if (!known_header) insertion_order_.push_back(hash);

    link_or_mark_dangling(hash, prev);
    refresh_tip(hash);

    // A dangling mark clears when the awaited parent arrives.
    auto waiting = waiting_children_.find(hash);
    if (waiting != waiting_children_.end()) {
        for (const Hash32& child : waiting->second) entries_[child].dangling_parent = false;
        has_child_.insert(hash);
        tips_.erase(hash);
        waiting_children_.erase(waiting);
    }
}

void Localchain::note_header(const Hash32& hash, std::optional<Hash32> prev) {
    auto it = entries_.find(hash);
    if (it == entries_.end()) {
        Entry e;
        e.prev = prev;
        entries_[hash] = std::move(e);
        insertion_order_.push_back(hash);
        if (prev) link_or_mark_dangling(hash, *prev);
        refresh_tip(hash);
    } else if (prev && !it->second.prev) {
        it->second.prev = prev;
        link_or_mark_dangling(hash, *prev);
    }
    auto waiting = waiting_children_.find(hash);
    if (waiting != waiting_children_.end()) {
        for (const Hash32& child : waiting->second) entries_[child].dangling_parent = false;
        has_child_.insert(hash);
        tips_.erase(hash);
        waiting_children_.erase(waiting);
    }
}

bool Localchain::is_dangling(const Hash32& h) const {
    auto it = entries_.find(h);
    return it != entries_.end() && it->second.dangling_parent;
}

LedgerContainer Localchain::make_container(InfoFlag flag) const {
    LedgerContainer c;
    c.localchain_id = id_;
    c.prev_block_hash = tips_.empty() ? genesis_ : *tips_.begin();
    c.info_flag = flag;
    return c;
}

std::vector<Hash32> Localchain::walk_to_genesis(const Hash32& from) const {
    std::vector<Hash32> path;
    std::set<Hash32> seen;
    Hash32 cur = from;
    for (;;) {
        if (seen.count(cur)) throw IntegrityViolation("cycle in localchain");
        seen.insert(cur);
        path.push_back(cur);
        if (cur == genesis_) return path;
        auto it = entries_.find(cur);
        if (it == entries_.end() || !it->second.prev || it->second.dangling_parent) return path;
        cur = *it->second.prev;
    }
}

bool Localchain::verify_link(const Hash32& child, const Hash32& parent) const {
    auto it = entries_.find(child);
    return it != entries_.end() && it->second.prev && *it->second.prev == parent;
}

std::vector<const Block*> Localchain::blocks_in_order() const {
    std::vector<const Block*> out;
    for (const Hash32& h : insertion_order_) {
        auto it = entries_.find(h);
        if (it != entries_.end() && it->second.block) out.push_back(&*it->second.block);
    }
    return out;
}

} // namespace vep
