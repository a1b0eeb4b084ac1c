#include "ncrest/protocol.hpp"

#include <charconv>
#include <limits>

#include <json.hpp>

#include "ncrest/errors.hpp"

namespace ncrest {

namespace {

// Strict decimal parse of one comma-separated section entry.
std::uint64_t parse_uint(const std::string& text, std::size_t begin, std::size_t end,
                         const char* what) {
    if (begin == end)
        throw ProtocolError(std::string("coding header: empty ") + what + " at position " +
                            std::to_string(begin));
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end)
        throw ProtocolError(std::string("coding header: malformed ") + what + " at position " +
                            std::to_string(begin));
    return value;
}

std::vector<std::uint64_t> parse_section(const std::string& text, std::size_t begin,
                                         std::size_t end, const char* what) {
    std::vector<std::uint64_t> values;
    std::size_t item_begin = begin;
    for (std::size_t i = begin; i <= end; ++i) {
        if (i == end || text[i] == ',') {
            values.push_back(parse_uint(text, item_begin, i, what));
            item_begin = i + 1;
        }
    }
    return values;
}

}  // namespace

std::size_t WireRequest::header_bytes() const {
    if (mode == Mode::Coded) return coding_header.size();
    return std::to_string(message_id).size();
}

std::string render_header(const Combination& c) {
    c.validate();
    std::string out = std::to_string(c.id_oldest) + "," + std::to_string(c.id_newest) + ";";
    for (std::size_t i = 0; i < c.lengths.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c.lengths[i]);
    }
    out += ";";
    for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c.coefficients[i]);
    }
    return out;
}

Combination parse_header(const std::string& text) {
    const std::size_t first = text.find(';');
    if (first == std::string::npos)
        throw ProtocolError("coding header: missing first ';' separator");
    const std::size_t second = text.find(';', first + 1);
    if (second == std::string::npos)
        throw ProtocolError("coding header: missing second ';' separator");
    if (text.find(';', second + 1) != std::string::npos)
        throw ProtocolError("coding header: more than three sections");

    const auto ids = parse_section(text, 0, first, "id");
    if (ids.size() != 2) throw ProtocolError("coding header: id section must hold exactly 2 ids");
    if (ids[0] == 0 || ids[1] == 0) throw ProtocolError("coding header: ids must be >= 1");
    if (ids[0] > ids[1]) throw ProtocolError("coding header: id_oldest > id_newest");
    if (ids[1] > std::numeric_limits<std::uint32_t>::max())
        throw ProtocolError("coding header: id out of range");

    Combination c;
    c.id_oldest = static_cast<std::uint32_t>(ids[0]);
    c.id_newest = static_cast<std::uint32_t>(ids[1]);
    const std::size_t arity = c.arity();

    const auto lengths = parse_section(text, first + 1, second, "length");
    if (lengths.size() != arity)
        throw ProtocolError("coding header: length-list arity " + std::to_string(lengths.size()) +
                            " != " + std::to_string(arity));
    for (std::uint64_t len : lengths) {
        if (len == 0 || len > std::numeric_limits<std::uint32_t>::max())
            throw ProtocolError("coding header: length out of range");
        c.lengths.push_back(static_cast<std::uint32_t>(len));
    }

    const auto coeffs = parse_section(text, second + 1, text.size(), "coefficient");
    if (coeffs.size() != arity)
        throw ProtocolError("coding header: coefficient-list arity " +
                            std::to_string(coeffs.size()) + " != " + std::to_string(arity));
    for (std::uint64_t v : coeffs) {
        if (v > 255)
            throw ProtocolError("coding header: coefficient " + std::to_string(v) + " > 255");
        c.coefficients.push_back(static_cast<gf256::Element>(v));
    }
    return c;
}

std::string render_response(std::uint32_t seen_newest, std::uint32_t unseen_newest) {
    if (seen_newest > unseen_newest)
        throw ProtocolError("response: seen_newest > unseen_newest");
    std::string value = std::to_string(seen_newest);
    if (unseen_newest != seen_newest) value += "," + std::to_string(unseen_newest);
    return nlohmann::json{{"Number", value}}.dump();
}

std::pair<std::uint32_t, std::uint32_t> parse_response(const std::string& body) {
    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || doc.size() != 1 || !doc.contains("Number") ||
        !doc["Number"].is_string())
        throw ProtocolError("response: expected {\"Number\": \"...\"}");
    const std::string value = doc["Number"].get<std::string>();

    const std::size_t comma = value.find(',');
    std::uint64_t s = 0, u = 0;
    const char* end_s = value.data() + (comma == std::string::npos ? value.size() : comma);
    auto res = std::from_chars(value.data(), end_s, s);
    if (res.ec != std::errc() || res.ptr != end_s || value.empty())
        throw ProtocolError("response: malformed seen_newest");
    if (comma == std::string::npos) {
        u = s;  // compact form means seen_newest == unseen_newest
    } else {
        const char* begin_u = value.data() + comma + 1;
        const char* end_u = value.data() + value.size();
        res = std::from_chars(begin_u, end_u, u);
        if (res.ec != std::errc() || res.ptr != end_u || begin_u == end_u)
            throw ProtocolError("response: malformed unseen_newest");
    }
    if (s > u) throw ProtocolError("response: seen_newest > unseen_newest");
    if (u > std::numeric_limits<std::uint32_t>::max())
        throw ProtocolError("response: value out of range");
    return {static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(u)};
}

}  // namespace ncrest
