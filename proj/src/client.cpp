#include "ncrest/client.hpp"

#include <algorithm>
#include <chrono>

#include "ncrest/errors.hpp"

namespace ncrest {

Client::Client(Mode mode, std::uint32_t scb, CoefficientSource coefficients)
    : mode_(mode), scb_(scb), coefficients_(std::move(coefficients)) {
    if (scb_ == 0) throw DomainError("client: SCB must be >= 1");
}

void Client::push_message(Bytes payload) {
    NativeMessage m;
    m.id = next_id_++;
    m.payload = std::move(payload);
    stats_.native_payload_bytes += m.payload.size();
    ++stats_.messages_generated;
    buffer_.push_back(std::move(m));
}

bool Client::can_send() const { return !outstanding_ && !buffer_.empty(); }

CodingWindow Client::current_window() const {
    CodingWindow w;
    w.max_size = scb_;
    std::size_t take;
    if (repair_budget_ > 0) {
        // Repair: the oldest unseen run, ids (last_seen, repair_ceiling],
        // clipped to SCB. The buffer front starts right after last_seen.
        take = 0;
        while (take < buffer_.size() && take < scb_ && buffer_[take].id <= repair_ceiling_) ++take;
    } else {
        take = std::min<std::size_t>(scb_, buffer_.size());
    }
    w.messages.assign(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(take));
    return w;
}

std::optional<OutboundRequest> Client::prepare_send() {
    if (outstanding_) throw Error("client: a request is already outstanding (stop-and-wait)");
    if (buffer_.empty()) {
        retransmit_pending_ = false;
        return std::nullopt;  // idle: nothing to send, nothing to repair
    }

    OutboundRequest out;
    if (repair_budget_ > 0)
        out.kind = SendKind::Repair;
    else
        out.kind = retransmit_pending_ ? SendKind::Retransmit : SendKind::Fresh;

    if (mode_ == Mode::Coded) {
        const CodingWindow window = current_window();
        const auto t0 = std::chrono::steady_clock::now();
        Combination c = encode(window, coefficients_);
        const auto t1 = std::chrono::steady_clock::now();
        stats_.code_time_ns +=
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        ++stats_.coded_sends;

        out.window_oldest = c.id_oldest;
        out.window_newest = c.id_newest;
        out.request.mode = Mode::Coded;
        out.request.coding_header = render_header(c);
        out.request.body = std::move(c.payload);
    } else {
        // Uncoded: stop-and-wait sends the buffer head; a timeout resend
        // is byte-identical because the head has not changed.
        const NativeMessage& head = buffer_.front();
        out.window_oldest = head.id;
        out.window_newest = head.id;
        out.request.mode = Mode::Uncoded;
        out.request.message_id = head.id;
        out.request.body = head.payload;
    }

    if (out.kind == SendKind::Repair) --repair_budget_;
    switch (out.kind) {
        case SendKind::Fresh: ++stats_.fresh_sends; break;
        case SendKind::Repair: ++stats_.repair_sends; break;
        case SendKind::Retransmit: ++stats_.retransmit_sends; break;
    }
    ++stats_.transmissions;
    stats_.request_bytes += out.request.wire_bytes();
    ++stats_.per_message_transmissions[out.window_newest];
    outstanding_ = true;
    retransmit_pending_ = false;
    return out;
}

void Client::on_response(std::uint32_t seen_newest, std::uint32_t unseen_newest) {
    if (seen_newest > unseen_newest)
        throw ProtocolError("client: ack with seen_newest > unseen_newest");
    if (!outstanding_ || seen_newest < last_seen_) {
        ++stats_.stale_acks;
        return;
    }
    while (!buffer_.empty() && buffer_.front().id <= seen_newest) buffer_.pop_front();
    last_seen_ = seen_newest;
    repair_budget_ = unseen_newest - seen_newest;
    repair_ceiling_ = unseen_newest;
    outstanding_ = false;
    retransmit_pending_ = false;
}

void Client::on_timeout() {
    if (!outstanding_) return;  // stale timer
    outstanding_ = false;
    retransmit_pending_ = true;
    ++stats_.timeouts;
}

}  // namespace ncrest
