#include "ncrest/transport.hpp"

#include "ncrest/errors.hpp"
#include "ncrest/random.hpp"

namespace ncrest {

LossSchedule::LossSchedule(double p, double alpha, std::uint64_t seed)
    : p_(p), alpha_(alpha), seed_(seed) {
    if (p < 0.0 || p >= 1.0) throw DomainError("loss schedule: p must be in [0, 1)");
    if (alpha < 0.0 || alpha > 1.0) throw DomainError("loss schedule: alpha must be in [0, 1]");
    regenerate();
}

LossSchedule LossSchedule::scripted(std::vector<int> request_losses,
                                    std::vector<int> response_losses) {
    LossSchedule s;
    s.scripted_ = true;
    s.scripted_request_ = std::move(request_losses);
    s.scripted_response_ = std::move(response_losses);
    return s;
}

void LossSchedule::regenerate() {
    request_draws_ = 0;
    response_draws_ = 0;
    if (!scripted_) {
        request_rng_ = make_stream(seed_, Stream::RequestLoss);
        response_rng_ = make_stream(seed_, Stream::ResponseLoss);
    }
}

double LossSchedule::response_loss_prob() const {
    const double denom = 1.0 - alpha_ * p_;
    return denom > 0.0 ? (1.0 - alpha_) * p_ / denom : 0.0;
}

bool LossSchedule::next_request_lost() {
    const std::uint64_t i = request_draws_++;
    if (scripted_) return i < scripted_request_.size() && scripted_request_[i] != 0;
    return draw_loss(request_rng_, request_loss_prob());
}

bool LossSchedule::next_response_lost() {
    const std::uint64_t i = response_draws_++;
    if (scripted_) return i < scripted_response_.size() && scripted_response_[i] != 0;
    return draw_loss(response_rng_, response_loss_prob());
}

void VirtualClock::schedule(std::int64_t at, std::function<void()> fn) {
    if (at < now_) throw Error("virtual clock: scheduling into the past");
    queue_.push(Event{at, next_seq_++, std::move(fn)});
}

bool VirtualClock::run_next() {
    if (queue_.empty()) return false;
    Event e = queue_.top();
    queue_.pop();
    now_ = e.at;
    e.fn();
    return true;
}

const char* trace_event_name(TraceEvent e) {
    switch (e) {
        case TraceEvent::Arrival: return "arrival";
        case TraceEvent::Send: return "send";
        case TraceEvent::RequestLost: return "lose_request";
        case TraceEvent::RequestDelivered: return "deliver_request";
        case TraceEvent::Busy: return "busy";
        case TraceEvent::Response: return "respond";
        case TraceEvent::ResponseLost: return "lose_response";
        case TraceEvent::ResponseDelivered: return "deliver_response";
        case TraceEvent::Timeout: return "timeout";
        case TraceEvent::StaleAck: return "stale_ack";
        case TraceEvent::Complete: return "complete";
    }
    return "?";
}

std::string TraceRecord::to_line() const {
    std::string line = "t=" + std::to_string(t_ms) + " ev=" + trace_event_name(event);
    if (event == TraceEvent::Send) {
        const char* k = kind == SendKind::Fresh ? "fresh"
                        : kind == SendKind::Repair ? "repair"
                                                   : "retransmit";
        line += std::string(" kind=") + k;
    }
    if (span_newest != 0)
        line += " span=" + std::to_string(span_oldest) + "-" + std::to_string(span_newest);
    if (bytes != 0) line += " bytes=" + std::to_string(bytes);
    if (event == TraceEvent::Response || event == TraceEvent::ResponseDelivered)
        line += " ack=" + std::to_string(seen) + "," + std::to_string(unseen);
    return line;
}

DeliveryOutcome SimChannel::send_request(std::int64_t now) {
    if (schedule_.next_request_lost()) return {false, 0};
    return {true, now + latency_ms_};
}

DeliveryOutcome SimChannel::send_response(std::int64_t now) {
    if (schedule_.next_response_lost()) return {false, 0};
    return {true, now + latency_ms_};
}

}  // namespace ncrest
