#include "ncrest/http_transport.hpp"

#include <charconv>
#include <chrono>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "ncrest/errors.hpp"
#include "ncrest/harness.hpp"
#include "ncrest/random.hpp"

namespace ncrest {

struct HttpEndpoint::Impl {
    ServerSession session;
    std::mutex mutex;
    httplib::Server server;
    std::thread thread;
    int port = -1;

    explicit Impl(Mode mode) : session(mode) {
        server.Post(kResourcePath, [this](const httplib::Request& req, httplib::Response& res) {
            WireRequest wr;
            if (req.has_header(kCodingHeaderField)) {
                wr.mode = Mode::Coded;
                wr.coding_header = req.get_header_value(kCodingHeaderField);
            } else {
                wr.mode = Mode::Uncoded;
                const std::string id = req.get_header_value(kMessageIdField);
                std::uint32_t v = 0;
                const auto [p, ec] = std::from_chars(id.data(), id.data() + id.size(), v);
                wr.message_id = (ec == std::errc() && p == id.data() + id.size()) ? v : 0;
            }
            wr.body.assign(req.body.begin(), req.body.end());

            HandleResult result;
            {
                std::unique_lock<std::mutex> lock(mutex, std::try_to_lock);
                if (!lock.owns_lock()) {
                    res.status = 503;  // busy with another request
                    return;
                }
                result = session.handle(wr);
            }
            switch (result.status) {
                case HandleStatus::Responded:
                    res.status = 200;
                    res.set_content(result.response_body, "application/json");
                    break;
                case HandleStatus::Refused:
                    // No acknowledgement semantics: the client channel maps
                    // any non-200 onto a timeout.
                    res.status = 503;
                    break;
                case HandleStatus::Error:
                    res.status = 400;
                    res.set_content(result.response_body, "application/json");
                    break;
            }
        });
    }

    void start(int fixed_port) {
        if (fixed_port > 0) {
            if (!server.bind_to_port("127.0.0.1", fixed_port))
                throw TransportError("http: cannot bind 127.0.0.1:" + std::to_string(fixed_port));
            port = fixed_port;
        } else {
            port = server.bind_to_any_port("127.0.0.1");
            if (port <= 0) throw TransportError("http: cannot bind an ephemeral port");
        }
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    void stop() {
        if (thread.joinable()) {
            server.stop();
            thread.join();
        }
    }

    ~Impl() { stop(); }
};

HttpEndpoint::HttpEndpoint(Mode mode) : impl_(std::make_unique<Impl>(mode)) { impl_->start(0); }

HttpEndpoint::HttpEndpoint(Mode mode, int port) : impl_(std::make_unique<Impl>(mode)) {
    impl_->start(port);
}

HttpEndpoint::~HttpEndpoint() = default;

int HttpEndpoint::port() const { return impl_->port; }
void HttpEndpoint::stop() { impl_->stop(); }
ServerSession& HttpEndpoint::session() { return impl_->session; }
std::mutex& HttpEndpoint::session_mutex() { return impl_->mutex; }

struct HttpChannel::Impl {
    httplib::Client client;
    LossSchedule schedule;

    Impl(const std::string& host, int port, LossSchedule s, std::int64_t timeout_ms)
        : client(host, port), schedule(std::move(s)) {
        client.set_connection_timeout(std::chrono::milliseconds(timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(timeout_ms));
        client.set_keep_alive(false);
    }
};

HttpChannel::HttpChannel(const std::string& host, int port, LossSchedule schedule,
                         std::int64_t timeout_ms)
    : impl_(std::make_unique<Impl>(host, port, std::move(schedule), timeout_ms)) {}

HttpChannel::~HttpChannel() = default;

LossSchedule& HttpChannel::schedule() { return impl_->schedule; }

PostResult HttpChannel::post(const WireRequest& req) {
    if (impl_->schedule.next_request_lost()) return {PostResult::Kind::RequestLost, 0, ""};

    httplib::Headers headers;
    if (req.mode == Mode::Coded)
        headers.emplace(kCodingHeaderField, req.coding_header);
    else
        headers.emplace(kMessageIdField, std::to_string(req.message_id));
    const std::string body(req.body.begin(), req.body.end());

    auto res = impl_->client.Post(kResourcePath, headers, body, "application/octet-stream");
    if (!res) return {PostResult::Kind::NoAck, 0, httplib::to_string(res.error())};
    if (res->status != 200) return {PostResult::Kind::NoAck, res->status, res->body};
    return {PostResult::Kind::Acked, res->status, res->body};
}

RunMetrics run_http(const ExperimentConfig& cfg) {
    cfg.validate();
    HttpEndpoint endpoint(cfg.mode);
    {
        std::lock_guard<std::mutex> lock(endpoint.session_mutex());
        endpoint.session().set_busy_schedule(cfg.busy_ordinals);
    }
    HttpChannel channel("127.0.0.1", endpoint.port(), LossSchedule(cfg.p, cfg.alpha, cfg.seed),
                        cfg.timeout_ms);

    std::mt19937 payload_rng = make_stream(cfg.seed, Stream::Payload);
    std::mt19937 coeff_rng = make_stream(cfg.seed, Stream::Coefficients);
    Client client(cfg.mode, cfg.scb, uniform_coefficients(coeff_rng));

    const auto start = std::chrono::steady_clock::now();
    const auto wall_ms = [&start] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };
    const auto arrival_due = [&](std::uint32_t index) {
        return start + std::chrono::milliseconds(static_cast<std::int64_t>(index) *
                                                 cfg.arrival_interval_ms);
    };
    std::uint32_t arrived = 0;
    const auto release_arrivals = [&] {
        while (arrived < cfg.n_messages && arrival_due(arrived) <= std::chrono::steady_clock::now()) {
            const std::uint32_t len =
                draw_uniform(payload_rng, cfg.payload_min, cfg.payload_max);
            client.push_message(make_payload(arrived + 1, len, payload_rng));
            ++arrived;
        }
    };
    const auto is_complete = [&] {
        std::lock_guard<std::mutex> lock(endpoint.session_mutex());
        return endpoint.session().complete(cfg.n_messages);
    };

    std::int64_t completion = 0;
    while (true) {
        if (wall_ms() > cfg.effective_time_ceiling())
            throw RunAbortedError("http run exceeded its time ceiling");
        if (is_complete()) {
            completion = wall_ms();
            break;
        }
        release_arrivals();
        if (!client.can_send()) {
            if (arrived >= cfg.n_messages)
                throw RunAbortedError("http run stalled: nothing to send but incomplete");
            std::this_thread::sleep_until(arrival_due(arrived));
            continue;
        }
        auto out = client.prepare_send();
        const auto sent_at = std::chrono::steady_clock::now();
        const PostResult res = channel.post(out->request);
        if (res.kind == PostResult::Kind::Acked) {
            if (is_complete()) {
                completion = wall_ms();
                break;
            }
            if (channel.schedule().next_response_lost()) {
                // Ack withheld in-path: wait the timeout out, then retransmit.
                std::this_thread::sleep_until(sent_at + std::chrono::milliseconds(cfg.timeout_ms));
                client.on_timeout();
                continue;
            }
            const auto [seen, unseen] = parse_response(res.body);
            client.on_response(seen, unseen);
            continue;
        }
        // RequestLost or NoAck: the client learns nothing until T_o.
        std::this_thread::sleep_until(sent_at + std::chrono::milliseconds(cfg.timeout_ms));
        client.on_timeout();
    }
    endpoint.stop();

    RunMetrics m;
    const ClientStats& cs = client.stats();
    const ServerStats& ss = endpoint.session().stats();
    m.total_request_transmissions = cs.transmissions;
    m.additional_messages = static_cast<std::int64_t>(cs.transmissions) - cfg.n_messages;
    m.total_request_bytes = cs.request_bytes;
    m.native_payload_bytes = cs.native_payload_bytes;
    m.additional_bytes = static_cast<std::int64_t>(cs.request_bytes) -
                         static_cast<std::int64_t>(cs.native_payload_bytes);
    m.completion_time_ms = completion;
    m.avg_decode_time_ms =
        ss.decode_samples ? static_cast<double>(ss.decode_time_ns) / 1e6 / ss.decode_samples : 0.0;
    m.avg_code_time_ms =
        cs.coded_sends ? static_cast<double>(cs.code_time_ns) / 1e6 / cs.coded_sends : 0.0;
    m.response_bytes = ss.response_bytes;
    m.responses_sent = ss.responses_sent;
    m.busy_refusals = ss.busy_refusals;
    m.dependent_arrivals = ss.dependent_insertions;
    m.timeouts = cs.timeouts;
    m.stale_acks = cs.stale_acks;
    m.duplicate_uncoded = ss.duplicate_uncoded;
    return m;
}

}  // namespace ncrest
