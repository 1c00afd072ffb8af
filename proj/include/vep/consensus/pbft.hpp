#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vep/core/hash.hpp"
#include "vep/core/types.hpp"
#include "vep/engine/engine.hpp"

namespace vep {

struct PbftParams {
    int n = 4;
    double tau_d_ms = 2200;           // retransmission timeout
    int max_retransmissions = 5;      // per station per process
    double process_deadline_ms = 30000;

    int f() const { return (n - 1) / 3; }
    int prepare_quorum() const { return 2 * f(); }
    int commit_quorum() const { return 2 * f() + 1; }
};

enum class PbftOutcome : std::uint8_t { PENDING, DECIDED, FAILED };
enum class FaultMode : std::uint8_t { NONE, SILENT, EQUIVOCATE };

struct PbftProcess {
    ProcessId id;
    std::vector<StationId> membership;
    bool is_primary = false;
    PbftStage stage = PbftStage::PRE_PREPARE;
    std::set<StationId> prepare_votes;
    std::set<StationId> commit_votes;
    Hash32 digest{};
    std::optional<Bytes> payload;
    std::uint32_t view = 0;
    SimTime start_us = 0;
    SimTime last_activity_us = 0;
    SimTime decide_us = 0;
    int retransmissions_used = 0;
    PbftOutcome outcome = PbftOutcome::PENDING;
    bool yielded = false;
    std::optional<ConsensusContainer> last_emitted;
};

struct ProcessTraceRow {
    ProcessId process_id;
    StationId station = 0;
    PbftOutcome outcome = PbftOutcome::PENDING;
    double delay_ms = 0;
    int retransmissions = 0;
};

// Per-station PBFT state machines, one entry per process id. Containers
// travel as passive-mode extensions; the module only sees decoded containers
// and emits new ones through the supplied callback.
class ConsensusModule {
public:
    using EmitFn = std::function<void(const ConsensusContainer&, SimTime)>;
    using TimerFn = std::function<void(const ProcessId&, SimTime when_us)>;
    using DecideFn = std::function<void(const PbftProcess&, SimTime)>;

    ConsensusModule(StationId self, PbftParams params, EmitFn emit, TimerFn timer);

    void set_fault_mode(FaultMode m) { fault_mode_ = m; }
    void on_decided(DecideFn fn) { decided_cb_ = std::move(fn); }
    void on_failed(DecideFn fn) { failed_cb_ = std::move(fn); }
    // Proposal content validation hook; every node accepts by default.
    void set_validator(std::function<bool(const Bytes&)> v) { validator_ = std::move(v); }

    // Primary-side entry point. Throws Busy while a process started by this
    // station is still pending.
    ProcessId start(Bytes payload, std::vector<StationId> membership, SimTime now);

    void on_container(const ConsensusContainer& c, StationId sender, SimTime now);
    void on_timer(const ProcessId& pid, SimTime now);
    // Resets the retransmission clock when the stage message actually leaves.
    void note_transmitted(const ConsensusContainer& c, SimTime now);

    void abort(const ProcessId& pid, SimTime now); // precedence yield

    bool has_active_own() const;
    const PbftProcess* find(const ProcessId& pid) const;
    const std::vector<ProcessTraceRow>& trace() const { return trace_; }
    const PbftParams& params() const { return params_; }
    StationId self() const { return self_; }

private:
    struct BufferedVote {
        PbftStage stage;
        StationId sender;
        Hash32 digest;
    };

    PbftProcess& create_process(const ProcessId& pid, SimTime now);
    void emit_stage(PbftProcess& p, const ConsensusContainer& c, SimTime now);
    void advance_to_commit(PbftProcess& p, SimTime now);
    void maybe_decide(PbftProcess& p, SimTime now);
    void finish(PbftProcess& p, PbftOutcome outcome, SimTime now);
    void record_vote(PbftProcess& p, PbftStage stage, StationId sender, const Hash32& digest,
                     SimTime now);

    StationId self_;
    PbftParams params_;
    EmitFn emit_;
    TimerFn timer_;
    DecideFn decided_cb_;
    DecideFn failed_cb_;
    std::function<bool(const Bytes&)> validator_;
    FaultMode fault_mode_ = FaultMode::NONE;
    std::uint64_t next_nonce_ = 0;
    std::map<ProcessId, PbftProcess> processes_;
    std::map<ProcessId, std::pair<SimTime, std::vector<BufferedVote>>> buffered_;
    std::vector<ProcessTraceRow> trace_;
};

} // namespace vep
