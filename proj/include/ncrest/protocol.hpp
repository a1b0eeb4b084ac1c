#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "ncrest/rlnc.hpp"

namespace ncrest {

// Resource every request is POSTed to.
inline constexpr const char* kResourcePath = "/api/sensors";
// Request header field carrying the coding header in coded mode.
inline constexpr const char* kCodingHeaderField = "X-NC";
// Request header field carrying the message id in uncoded mode.
inline constexpr const char* kMessageIdField = "X-ID";

enum class Mode { Coded, Uncoded };

// One POST to /api/sensors, either a coded combination (coding_header
// set, body = combined bytes) or a native message (message_id set,
// body = original payload).
struct WireRequest {
    Mode mode = Mode::Uncoded;
    std::string coding_header;  // rendered coding header (coded mode)
    std::uint32_t message_id = 0;  // uncoded mode
    Bytes body;

    // Bytes this request occupies beyond plain payload transport: the
    // rendered header value. Feeds the additional-bytes metric.
    std::size_t header_bytes() const;
    std::size_t wire_bytes() const { return body.size() + header_bytes(); }
};

// "ID_oldest,ID_newest;len_1,...,len_k;coeff_1,...,coeff_k" — three
// semicolon-separated sections of comma-separated decimal integers, no
// whitespace. Canonical: render(parse(x)) == x for valid x.
std::string render_header(const Combination& c);

// Strict inverse of render_header, header fields only (the payload is
// carried in the request body and attached by the caller). Throws
// ProtocolError with the offending position/section on malformed input.
Combination parse_header(const std::string& text);

// {"Number":"s,u"}, compact {"Number":"s"} when s == u.
std::string render_response(std::uint32_t seen_newest, std::uint32_t unseen_newest);

// Inverse of render_response; the compact form expands to (s, s).
std::pair<std::uint32_t, std::uint32_t> parse_response(const std::string& body);

}  // namespace ncrest
