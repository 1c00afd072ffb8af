#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "vep/core/codec.hpp"
#include "vep/core/types.hpp"

namespace vep {

using SimTime = std::int64_t; // microseconds since scenario start

constexpr SimTime ms_to_us(double ms) { return static_cast<SimTime>(ms * 1000.0 + 0.5); }
constexpr double us_to_ms(SimTime us) { return static_cast<double>(us) / 1000.0; }

enum class ModePolicy : std::uint8_t { INTERACTIVE, PASSIVE_ELIGIBLE, IGNORE };

// A sub-protocol plugged into one station's engine. Incoming messages are
// fanned out to every SP whose handled set contains the message type; at most
// one SP may claim an outgoing message interactively.
class SubProtocol {
public:
    virtual ~SubProtocol() = default;

    virtual std::uint16_t sp_id() const = 0;
    virtual const std::set<MsgType>& handled_msg_types() const = 0;

    // Interactive mode: return an extension to bind to this outgoing message.
    virtual std::optional<VeeExtension> claim_outgoing(const ItsMessage&) { return {}; }

    virtual void on_message(const ItsMessage& msg, ExtStatus ext_status, SimTime now) = 0;

    // Called when a VEE issued by this SP leaves the station.
    virtual void on_vee_transmitted(const VeeExtension&, SimTime) {}
};

struct QueueTraceRow {
    StationId station = 0;
    std::uint64_t vee_seq = 0;
    std::size_t j_at_enqueue = 0;
    double enqueue_ms = 0;
    double tx_ms = 0;
    double delay_ms = 0;
};

// Per-station protocol engine: SP registry, interactive dispatch and the
// passive FIFO queue. One instance per station, driven by the event loop.
class VepEngine {
public:
    explicit VepEngine(StationId station);

    void register_sp(std::shared_ptr<SubProtocol> sp);
    void set_passive_eligible(std::set<MsgType> types) { passive_eligible_ = std::move(types); }
    void set_queue_capacity(std::size_t cap) { queue_capacity_ = cap; } // 0 = unbounded
    void set_queue_warn_threshold(std::size_t n) { queue_warn_threshold_ = n; }

    // Attaches at most one extension: an interactive claim wins, otherwise the
    // queue head when the message type is passive-eligible. An SP failure
    // leaves the message unextended.
    ItsMessage on_outgoing(ItsMessage msg, SimTime now);

    void on_incoming(const ItsMessage& msg, ExtStatus ext_status, SimTime now);

    void enqueue_passive(VeeExtension ext, SimTime now);

    std::size_t queue_size() const { return queue_.size(); }
    StationId station() const { return station_; }

    const std::vector<QueueTraceRow>& queue_trace() const { return trace_; }
    std::uint64_t sp_failures() const { return sp_failures_; }
    std::uint64_t dropped_veens() const { return dropped_; }
    std::uint64_t queue_warnings() const { return queue_warnings_; }

private:
    struct QueueEntry {
        VeeExtension ext;
        SimTime enqueue_us;
        std::size_t j_at_enqueue;
        std::uint64_t vee_seq;
    };

    SubProtocol* sp_by_id(std::uint16_t id) const;

    StationId station_;
    std::vector<std::shared_ptr<SubProtocol>> sps_;
    std::set<MsgType> passive_eligible_{MsgType::CAM};
    std::deque<QueueEntry> queue_;
    std::size_t queue_capacity_ = 0;
    std::size_t queue_warn_threshold_ = 64;
    std::uint64_t next_vee_seq_ = 0;
    std::uint64_t sp_failures_ = 0;
    std::uint64_t dropped_ = 0;
    std::uint64_t queue_warnings_ = 0;
    std::vector<QueueTraceRow> trace_;
};

} // namespace vep
