#include "vep/engine/engine.hpp"

namespace vep {

VepEngine::VepEngine(StationId station) : station_(station) {}

void VepEngine::register_sp(std::shared_ptr<SubProtocol> sp) { sps_.push_back(std::move(sp)); }

SubProtocol* VepEngine::sp_by_id(std::uint16_t id) const {
    for (const auto& sp : sps_)
        if (sp->sp_id() == id) return sp.get();
    return nullptr;
}

ItsMessage VepEngine::on_outgoing(ItsMessage msg, SimTime now) {
    if (msg.extension) return msg; // one extension per message, never stacked

    // Interactive mode first: the claiming SP's extension is bound to this
    // specific message; a queued VEE keeps waiting.
    for (const auto& sp : sps_) {
        std::optional<VeeExtension> ext;
        try {
            ext = sp->claim_outgoing(msg);
        } catch (const std::exception&) {
            ++sp_failures_; // SP failure must not invalidate the message
            continue;
        }
        if (ext) {
            msg.extension = std::move(ext);
            sp->on_vee_transmitted(*msg.extension, now);
            return msg;
        }
    }

    if (!queue_.empty() && passive_eligible_.count(msg.msg_type)) {
        QueueEntry entry = std::move(queue_.front());
        queue_.pop_front();
        msg.extension = std::move(entry.ext);
        QueueTraceRow row;
        row.station = station_;
        row.vee_seq = entry.vee_seq;
        row.j_at_enqueue = entry.j_at_enqueue;
        row.enqueue_ms = us_to_ms(entry.enqueue_us);
        row.tx_ms = us_to_ms(now);
        row.delay_ms = row.tx_ms - row.enqueue_ms;
        trace_.push_back(row);
        if (SubProtocol* sp = sp_by_id(msg.extension->sp_id))
            sp->on_vee_transmitted(*msg.extension, now);
    }
    return msg;
}

void VepEngine::on_incoming(const ItsMessage& msg, ExtStatus ext_status, SimTime now) {
    for (const auto& sp : sps_) {
        if (!sp->handled_msg_types().count(msg.msg_type)) continue;
        try {
            sp->on_message(msg, ext_status, now);
        } catch (const std::exception&) {
            ++sp_failures_;
        }
    }
}

void VepEngine::enqueue_passive(VeeExtension ext, SimTime now) {
    if (queue_capacity_ && queue_.size() >= queue_capacity_) {
        queue_.pop_front(); // hard cap configured: drop-oldest
        ++dropped_;
    }
    QueueEntry entry;
    entry.j_at_enqueue = queue_.size();
    entry.ext = std::move(ext);
    entry.enqueue_us = now;
    entry.vee_seq = next_vee_seq_++;
    queue_.push_back(std::move(entry));
    if (queue_.size() > queue_warn_threshold_) ++queue_warnings_;
}

} // namespace vep
