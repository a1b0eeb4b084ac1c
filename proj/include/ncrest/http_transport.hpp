#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ncrest/server.hpp"
#include "ncrest/transport.hpp"

namespace ncrest {

// Real HTTP/1.1 endpoint serving POST /api/sensors on 127.0.0.1. One
// service context: requests are handled strictly one at a time, and a
// request arriving while another is being processed is refused (503,
// which the client channel treats as "no acknowledgement").
//
// Throws TransportError when the socket cannot be bound.
class HttpEndpoint {
  public:
    explicit HttpEndpoint(Mode mode);        // ephemeral port
    HttpEndpoint(Mode mode, int port);       // fixed port
    ~HttpEndpoint();

    int port() const;
    void stop();

    // The shared session. Lock session_mutex() while the server is live.
    ServerSession& session();
    std::mutex& session_mutex();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct PostResult {
    enum class Kind {
        RequestLost,  // dropped in-path before reaching the server
        NoAck,        // refused (503), error status, or socket failure
        Acked,        // 200 with a response body
    };
    Kind kind = Kind::NoAck;
    int status = 0;
    std::string body;
};

// Client side of the HTTP channel with in-path loss injection: the
// request-direction draw happens before anything touches the wire (a lost
// request never reaches the server); the response-direction draw is the
// caller's job so it can skip it once the run is complete.
class HttpChannel {
  public:
    HttpChannel(const std::string& host, int port, LossSchedule schedule,
                std::int64_t timeout_ms);
    ~HttpChannel();

    PostResult post(const WireRequest& req);
    LossSchedule& schedule();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ncrest
