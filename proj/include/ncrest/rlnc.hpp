#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ncrest/gf256.hpp"

namespace ncrest {

using Bytes = std::vector<std::uint8_t>;

// One original request payload. IDs start at 1 and are strictly
// increasing per client session; 0 is the "nothing seen yet" sentinel in
// acknowledgements.
struct NativeMessage {
    std::uint32_t id = 0;
    Bytes payload;

    std::uint32_t length() const { return static_cast<std::uint32_t>(payload.size()); }
    bool operator==(const NativeMessage&) const = default;
};

// The oldest unacknowledged run of messages a combination may span,
// capped by the subset coding buffer (SCB) value.
struct CodingWindow {
    std::vector<NativeMessage> messages;  // contiguous, ascending ids
    std::uint32_t max_size = 0;           // SCB
};

// One random linear combination plus the metadata the receiver needs to
// place it in the decoding matrix and prune padding afterwards.
struct Combination {
    std::uint32_t id_oldest = 0;
    std::uint32_t id_newest = 0;
    std::vector<std::uint32_t> lengths;        // one per id in [id_oldest, id_newest]
    std::vector<gf256::Element> coefficients;  // same arity
    Bytes payload;                             // combined bytes, length == max(lengths)

    std::size_t arity() const { return id_newest - id_oldest + 1; }
    // Structural checks (arity, id ordering, payload size). Throws
    // ProtocolError when violated.
    void validate() const;
};

// Supplies one coding coefficient per call.
using CoefficientSource = std::function<gf256::Element()>;

// Production source: uniform over [1, 255]. Zero is excluded so every
// combination genuinely involves its whole window, in particular the
// newest message.
CoefficientSource uniform_coefficients(std::mt19937& rng);

// Scripted source for tests; throws if more coefficients are requested
// than were provided.
CoefficientSource scripted_coefficients(std::vector<gf256::Element> values);

// Combine the window into one coded payload. Shorter messages are
// zero-padded to the longest one; the lengths list lets the decoder strip
// that padding again. Throws EmptyWindowError on an empty window.
Combination encode(const CodingWindow& window, const CoefficientSource& draw);

enum class InsertOutcome { Independent, Dependent };

// Server-side decoding state: an augmented matrix [coefficients | payload
// bytes] kept in reduced row echelon form, the known per-id lengths, and
// the set of ids already decoded and handed up.
//
// Single-owner mutable; one decoder per server session.
class Decoder {
  public:
    // Places the combination into the decoding matrix. Dependent
    // combinations leave the state completely unchanged (they are
    // discarded rather than buffered). Throws ProtocolError for malformed
    // or stale combinations.
    InsertOutcome insert(const Combination& c);

    // (seen_newest, unseen_newest) per the seen-packet rule: an id is seen
    // iff it is a pivot column or already delivered; seen_newest is the
    // maximal *prefix* of seen ids (so the client-side deletion rule stays
    // safe); unseen_newest is the newest id involved but not seen, clamped
    // to be non-decreasing across inserts.
    std::pair<std::uint32_t, std::uint32_t> classify_seen() const;

    // Returns every not-yet-delivered message whose matrix row has become
    // a singleton, padding stripped, in ascending id order.
    std::vector<NativeMessage> extract_decoded();

    // Drops delivered messages below id_oldest from the matrix (column and
    // singleton row). Undelivered ids are never pruned, so the floor stops
    // rising at the first one.
    void prune_below(std::uint32_t id_oldest);

    std::uint32_t live_floor() const { return live_floor_; }
    std::size_t live_columns() const { return n_ids_; }
    std::size_t rank() const { return matrix_.n_rows(); }
    const std::set<std::uint32_t>& delivered() const { return delivered_; }

  private:
    std::vector<std::size_t> current_pivots() const;
    std::uint32_t seen_prefix_newest(const std::vector<std::size_t>& pivots) const;

    gf256::Matrix matrix_{0, 0};       // [n_ids_ coeff cols | payload_width_ cols]
    std::size_t n_ids_ = 0;
    std::size_t payload_width_ = 0;
    std::uint32_t live_floor_ = 1;     // id of coefficient column 0
    std::map<std::uint32_t, std::uint32_t> lengths_;
    std::set<std::uint32_t> delivered_;
    std::uint32_t unseen_high_water_ = 0;
};

}  // namespace ncrest
