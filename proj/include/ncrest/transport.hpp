#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "ncrest/client.hpp"

namespace ncrest {

// Bernoulli loss draws for the two directions, factorized so that one
// round trip fails with probability exactly p and the fraction alpha of
// failures sits on the request direction:
//   request attempt lost  w.p. alpha * p
//   response attempt lost w.p. (1-alpha)*p / (1 - alpha*p), given the
//                         request survived.
// Regeneration from (p, alpha, seed) is bit-identical; scripted schedules
// replay fixed sequences (exhausted entries mean "no loss").
class LossSchedule {
  public:
    LossSchedule(double p, double alpha, std::uint64_t seed);
    static LossSchedule scripted(std::vector<int> request_losses,
                                 std::vector<int> response_losses);

    bool next_request_lost();
    bool next_response_lost();

    double request_loss_prob() const { return alpha_ * p_; }
    double response_loss_prob() const;

    // Rewind to the initial stream state.
    void regenerate();

    std::uint64_t request_draws() const { return request_draws_; }
    std::uint64_t response_draws() const { return response_draws_; }

  private:
    LossSchedule() = default;

    double p_ = 0.0;
    double alpha_ = 0.0;
    std::uint64_t seed_ = 0;
    bool scripted_ = false;
    std::vector<int> scripted_request_;
    std::vector<int> scripted_response_;
    std::mt19937 request_rng_;
    std::mt19937 response_rng_;
    std::uint64_t request_draws_ = 0;
    std::uint64_t response_draws_ = 0;
};

// Discrete-event clock in simulated milliseconds. Events fire in
// timestamp order with FIFO tie-breaking, which is what makes whole runs
// reproducible bit for bit.
class VirtualClock {
  public:
    std::int64_t now() const { return now_; }

    void schedule(std::int64_t at, std::function<void()> fn);

    // Fires the earliest event. Returns false when the queue is empty.
    bool run_next();

    std::size_t pending() const { return queue_.size(); }

  private:
    struct Event {
        std::int64_t at;
        std::uint64_t seq;
        std::function<void()> fn;
        bool operator>(const Event& o) const {
            return at != o.at ? at > o.at : seq > o.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    std::int64_t now_ = 0;
    std::uint64_t next_seq_ = 0;
};

enum class TraceEvent {
    Arrival,
    Send,
    RequestLost,
    RequestDelivered,
    Busy,
    Response,
    ResponseLost,
    ResponseDelivered,
    Timeout,
    StaleAck,
    Complete,
};

const char* trace_event_name(TraceEvent e);

// One line-delimited record per send/deliver/lose/timeout with virtual
// timestamps, for debugging and assertions.
struct TraceRecord {
    std::int64_t t_ms = 0;
    TraceEvent event = TraceEvent::Arrival;
    SendKind kind = SendKind::Fresh;   // meaningful for Send
    std::uint32_t span_oldest = 0;
    std::uint32_t span_newest = 0;
    std::uint64_t bytes = 0;
    std::uint32_t seen = 0;
    std::uint32_t unseen = 0;

    std::string to_line() const;
    bool operator==(const TraceRecord&) const = default;
};

using TraceLog = std::vector<TraceRecord>;

struct DeliveryOutcome {
    bool delivered = false;
    std::int64_t deliver_at = 0;  // meaningful when delivered
};

// The simulated lossy channel: a loss schedule plus a fixed one-way
// latency. Loss is modeled as drop-plus-timeout; under stop-and-wait that
// is observationally the same as pausing until the timeout expires, and
// it keeps virtual time cheap.
class SimChannel {
  public:
    SimChannel(LossSchedule schedule, std::int64_t latency_ms)
        : schedule_(std::move(schedule)), latency_ms_(latency_ms) {}

    DeliveryOutcome send_request(std::int64_t now);
    DeliveryOutcome send_response(std::int64_t now);

    LossSchedule& schedule() { return schedule_; }
    std::int64_t latency_ms() const { return latency_ms_; }

  private:
    LossSchedule schedule_;
    std::int64_t latency_ms_;
};

}  // namespace ncrest
