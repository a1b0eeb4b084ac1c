#include "ncrest/server.hpp"

#include <chrono>

#include "ncrest/errors.hpp"

namespace ncrest {

HandleResult ServerSession::handle(const WireRequest& req) {
    ++stats_.arrivals;
    if (busy_ || busy_schedule_.count(stats_.arrivals)) {
        // Busy: the request is neither stored nor acknowledged; the client
        // will retransmit after its timeout.
        ++stats_.busy_refusals;
        return {HandleStatus::Refused, "", 0, 0};
    }
    HandleResult result =
        (mode_ == Mode::Coded) ? handle_coded(req) : handle_uncoded(req);
    if (result.status == HandleStatus::Responded) {
        ++stats_.requests_handled;
        ++stats_.responses_sent;
        stats_.response_bytes += result.response_body.size();
    }
    return result;
}

HandleResult ServerSession::handle_coded(const WireRequest& req) {
    Combination c;
    try {
        c = parse_header(req.coding_header);
    } catch (const ProtocolError& e) {
        ++stats_.protocol_errors;
        return {HandleStatus::Error, std::string("{\"error\":\"") + e.what() + "\"}", 0, 0};
    }
    c.payload = req.body;

    std::vector<NativeMessage> decoded;
    const auto t0 = std::chrono::steady_clock::now();
    InsertOutcome outcome;
    try {
        outcome = decoder_.insert(c);
        decoded = decoder_.extract_decoded();
    } catch (const ProtocolError& e) {
        ++stats_.protocol_errors;
        return {HandleStatus::Error, std::string("{\"error\":\"") + e.what() + "\"}", 0, 0};
    }
    const auto t1 = std::chrono::steady_clock::now();
    stats_.decode_time_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    ++stats_.decode_samples;
    if (outcome == InsertOutcome::Dependent) ++stats_.dependent_insertions;

    for (auto& m : decoded) deliver(std::move(m));
    decoder_.prune_below(c.id_oldest);

    const auto [seen, unseen] = decoder_.classify_seen();
    return {HandleStatus::Responded, render_response(seen, unseen), seen, unseen};
}

HandleResult ServerSession::handle_uncoded(const WireRequest& req) {
    const std::uint32_t id = req.message_id;
    if (id == 0) {
        ++stats_.protocol_errors;
        return {HandleStatus::Error, "{\"error\":\"uncoded request without message id\"}", 0, 0};
    }
    if (received_ids_.count(id)) {
        // Duplicate (its ack was lost): acknowledge again, deliver once.
        ++stats_.duplicate_uncoded;
    } else {
        received_ids_.insert(id);
        deliver(NativeMessage{id, req.body});
    }
    return {HandleStatus::Responded, render_response(id, id), id, id};
}

void ServerSession::deliver(NativeMessage m) {
    // Hand up in id order; decoding can finish out of order when SCB is
    // smaller than the unseen run.
    reorder_.emplace(m.id, std::move(m));
    for (auto it = reorder_.begin(); it != reorder_.end() && it->first == next_expected_;) {
        sink_.push_back(std::move(it->second));
        it = reorder_.erase(it);
        ++next_expected_;
    }
}

}  // namespace ncrest
