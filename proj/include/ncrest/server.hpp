#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ncrest/protocol.hpp"
#include "ncrest/rlnc.hpp"

namespace ncrest {

struct ServerStats {
    std::uint64_t arrivals = 0;           // every request reaching the server
    std::uint64_t requests_handled = 0;   // arrivals actually processed
    std::uint64_t busy_refusals = 0;
    std::uint64_t protocol_errors = 0;
    std::uint64_t dependent_insertions = 0;
    std::uint64_t duplicate_uncoded = 0;  // re-acked but delivered once
    std::uint64_t responses_sent = 0;
    std::uint64_t response_bytes = 0;
    std::uint64_t decode_time_ns = 0;     // GJE + extraction only, per coded request
    std::uint64_t decode_samples = 0;
};

enum class HandleStatus {
    Responded,  // ack rendered
    Refused,    // busy: nothing stored, nothing acked
    Error,      // malformed request: error body, not a delivery
};

struct HandleResult {
    HandleStatus status = HandleStatus::Responded;
    std::string response_body;
    std::uint32_t seen_newest = 0;
    std::uint32_t unseen_newest = 0;
};

// The receiving endpoint: one decoding context, ack generation, in-order
// handup of decoded messages, busy refusal. Single-threaded by design;
// the busy flag models exactly that serial service discipline.
class ServerSession {
  public:
    explicit ServerSession(Mode mode) : mode_(mode) {}

    void set_busy(bool busy) { busy_ = busy; }
    // Refuse the given arrival ordinals (1-based), for deterministic
    // busy-window experiments.
    void set_busy_schedule(std::set<std::uint64_t> ordinals) {
        busy_schedule_ = std::move(ordinals);
    }

    HandleResult handle(const WireRequest& req);

    // True iff the sink holds exactly ids 1..n.
    bool complete(std::uint32_t n) const {
        return sink_.size() == n && next_expected_ == n + 1;
    }

    const std::vector<NativeMessage>& sink() const { return sink_; }
    const Decoder& decoder() const { return decoder_; }
    const ServerStats& stats() const { return stats_; }

  private:
    HandleResult handle_coded(const WireRequest& req);
    HandleResult handle_uncoded(const WireRequest& req);
    void deliver(NativeMessage m);

    Mode mode_;
    bool busy_ = false;
    std::set<std::uint64_t> busy_schedule_;
    Decoder decoder_;                          // coded mode
    std::set<std::uint32_t> received_ids_;     // uncoded mode
    std::map<std::uint32_t, NativeMessage> reorder_;  // decoded, awaiting in-order handup
    std::vector<NativeMessage> sink_;
    std::uint32_t next_expected_ = 1;
    ServerStats stats_;
};

}  // namespace ncrest
