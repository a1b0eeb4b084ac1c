#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>

#include "ncrest/protocol.hpp"
#include "ncrest/rlnc.hpp"

namespace ncrest {

enum class SendKind { Fresh, Repair, Retransmit };

struct ClientStats {
    std::uint64_t transmissions = 0;
    std::uint64_t fresh_sends = 0;
    std::uint64_t repair_sends = 0;
    std::uint64_t retransmit_sends = 0;
    std::uint64_t request_bytes = 0;          // body + header value, every send
    std::uint64_t native_payload_bytes = 0;   // sum of original payload lengths
    std::uint64_t messages_generated = 0;
    std::uint64_t stale_acks = 0;
    std::uint64_t timeouts = 0;
    std::uint64_t coded_sends = 0;
    std::uint64_t code_time_ns = 0;           // wall time spent in encode()
    // Transmission count per message: keyed by the message id in uncoded
    // mode and by the newest id in the window in coded mode.
    std::map<std::uint32_t, std::uint32_t> per_message_transmissions;
};

struct OutboundRequest {
    SendKind kind = SendKind::Fresh;
    WireRequest request;
    std::uint32_t window_oldest = 0;
    std::uint32_t window_newest = 0;
};

// The sending endpoint. Driven by three event kinds delivered
// sequentially: message arrival, response, timeout. Stop-and-wait: at
// most one request outstanding, enforced here.
class Client {
  public:
    Client(Mode mode, std::uint32_t scb, CoefficientSource coefficients);

    // A new application message enters the coding buffer.
    void push_message(Bytes payload);

    // True when prepare_send() would produce a request right now.
    bool can_send() const;
    bool has_outstanding() const { return outstanding_; }

    // Builds the next request (fresh window, repair, or timeout
    // retransmission) and marks it outstanding. Returns nullopt when idle.
    // Throws if a request is already outstanding.
    std::optional<OutboundRequest> prepare_send();

    // Acknowledgement (seen_newest, unseen_newest). Deletes every buffered
    // message with id <= seen_newest and sets the repair budget to
    // unseen_newest - seen_newest. Stale acks are ignored and counted.
    void on_response(std::uint32_t seen_newest, std::uint32_t unseen_newest);

    // The outstanding request timed out. The next send is a new random
    // combination over the current window in coded mode and a
    // byte-identical resend in uncoded mode.
    void on_timeout();

    bool buffer_empty() const { return buffer_.empty(); }
    std::size_t buffer_size() const { return buffer_.size(); }
    std::uint32_t last_seen() const { return last_seen_; }
    std::uint32_t repair_budget() const { return repair_budget_; }
    const ClientStats& stats() const { return stats_; }

  private:
    CodingWindow current_window() const;

    Mode mode_;
    std::uint32_t scb_;
    CoefficientSource coefficients_;
    std::deque<NativeMessage> buffer_;  // unacknowledged, ids contiguous ascending
    std::uint32_t next_id_ = 1;
    std::uint32_t last_seen_ = 0;
    std::uint32_t repair_budget_ = 0;
    std::uint32_t repair_ceiling_ = 0;  // unseen_newest of the ack that armed the budget
    bool outstanding_ = false;
    bool retransmit_pending_ = false;
    ClientStats stats_;
};

}  // namespace ncrest
