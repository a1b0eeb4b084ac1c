#include "ncrest/rlnc.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "ncrest/errors.hpp"
#include "ncrest/random.hpp"

namespace ncrest {

void Combination::validate() const {
    if (id_oldest == 0 || id_newest == 0)
        throw ProtocolError("combination: ids must be >= 1");
    if (id_oldest > id_newest)
        throw ProtocolError("combination: id_oldest > id_newest");
    const std::size_t n = arity();
    if (lengths.size() != n)
        throw ProtocolError("combination: length-list arity " + std::to_string(lengths.size()) +
                            " != " + std::to_string(n));
    if (coefficients.size() != n)
        throw ProtocolError("combination: coefficient-list arity " +
                            std::to_string(coefficients.size()) + " != " + std::to_string(n));
    std::uint32_t max_len = 0;
    for (std::uint32_t len : lengths) {
        if (len == 0) throw ProtocolError("combination: zero message length");
        max_len = std::max(max_len, len);
    }
    if (payload.size() != max_len)
        throw ProtocolError("combination: payload size " + std::to_string(payload.size()) +
                            " != max length " + std::to_string(max_len));
}

CoefficientSource uniform_coefficients(std::mt19937& rng) {
    return [&rng]() { return static_cast<gf256::Element>(draw_uniform(rng, 1, 255)); };
}

CoefficientSource scripted_coefficients(std::vector<gf256::Element> values) {
    auto state = std::make_shared<std::pair<std::vector<gf256::Element>, std::size_t>>(
        std::move(values), 0);
    return [state]() {
        if (state->second >= state->first.size())
            throw Error("scripted coefficient source exhausted");
        return state->first[state->second++];
    };
}

Combination encode(const CodingWindow& window, const CoefficientSource& draw) {
    if (window.messages.empty()) throw EmptyWindowError();
    if (window.max_size != 0 && window.messages.size() > window.max_size)
        throw Error("rlnc: window exceeds its SCB cap");

    Combination c;
    c.id_oldest = window.messages.front().id;
    c.id_newest = window.messages.back().id;
    std::uint32_t max_len = 0;
    for (std::size_t k = 0; k < window.messages.size(); ++k) {
        const NativeMessage& m = window.messages[k];
        if (m.id != c.id_oldest + k) throw Error("rlnc: window ids must be contiguous ascending");
        c.lengths.push_back(m.length());
        max_len = std::max(max_len, m.length());
    }
    c.payload.assign(max_len, 0);
    for (const NativeMessage& m : window.messages) {
        const gf256::Element coeff = draw();
        c.coefficients.push_back(coeff);
        for (std::size_t j = 0; j < m.payload.size(); ++j)
            c.payload[j] = gf256::add(c.payload[j], gf256::mul(coeff, m.payload[j]));
    }
    return c;
}

InsertOutcome Decoder::insert(const Combination& c) {
    c.validate();
    if (c.id_newest < live_floor_)
        throw ProtocolError("combination entirely below the live floor (id_newest " +
                            std::to_string(c.id_newest) + " < " + std::to_string(live_floor_) +
                            ")");
    // Ids already pruned were delivered and their columns are gone; a
    // combination may only reference them with a zero coefficient.
    for (std::uint32_t id = c.id_oldest; id < live_floor_; ++id)
        if (c.coefficients[id - c.id_oldest] != 0)
            throw ProtocolError("combination references pruned message " + std::to_string(id));

    const std::uint32_t ceil = live_floor_ + static_cast<std::uint32_t>(n_ids_) - 1;
    const std::uint32_t effective_oldest = std::max(c.id_oldest, live_floor_);
    if (effective_oldest > ceil + 1)
        throw ProtocolError("combination leaves an id gap at " + std::to_string(effective_oldest));

    // Work on a scratch copy so a dependent combination leaves the state
    // untouched even when it would have widened the column span.
    gf256::Matrix scratch = matrix_;
    std::size_t new_n_ids = n_ids_;
    std::size_t new_payload_width = payload_width_;
    if (c.id_newest > ceil) {
        const std::size_t grow = c.id_newest - ceil;
        scratch.insert_cols(new_n_ids, grow, true);  // right edge of the coefficient block
        new_n_ids += grow;
    }
    if (c.payload.size() > new_payload_width) {
        const std::size_t grow = c.payload.size() - new_payload_width;
        scratch.insert_cols(new_n_ids + new_payload_width, grow, false);
        new_payload_width += grow;
    }

    std::vector<gf256::Element> row(new_n_ids + new_payload_width, 0);
    for (std::uint32_t id = effective_oldest; id <= c.id_newest; ++id)
        row[id - live_floor_] = c.coefficients[id - c.id_oldest];
    std::copy(c.payload.begin(), c.payload.end(), row.begin() + static_cast<std::ptrdiff_t>(new_n_ids));

    const std::size_t rank_before = scratch.n_rows();
    scratch.append_row(std::move(row));
    const gf256::PivotReport report = scratch.reduce();
    if (report.rank <= rank_before) return InsertOutcome::Dependent;

    matrix_ = std::move(scratch);
    n_ids_ = new_n_ids;
    payload_width_ = new_payload_width;
    for (std::uint32_t id = effective_oldest; id <= c.id_newest; ++id) {
        const std::uint32_t len = c.lengths[id - c.id_oldest];
        auto [it, inserted] = lengths_.emplace(id, len);
        if (!inserted && it->second != len)
            throw ProtocolError("combination restates length of message " + std::to_string(id) +
                                " as " + std::to_string(len) + " (was " +
                                std::to_string(it->second) + ")");
    }

    // Advance the unseen high-water mark so acknowledgements stay
    // monotone even if a later pivot shuffle shrinks the raw unseen set.
    const auto pivots = current_pivots();
    std::vector<bool> seen(n_ids_, false);
    for (std::size_t col : pivots) seen[col] = true;
    for (std::size_t i = 0; i < n_ids_; ++i)
        if (!seen[i] && !delivered_.count(live_floor_ + static_cast<std::uint32_t>(i)))
            unseen_high_water_ =
                std::max(unseen_high_water_, live_floor_ + static_cast<std::uint32_t>(i));
    return InsertOutcome::Independent;
}

std::vector<std::size_t> Decoder::current_pivots() const {
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < matrix_.n_rows(); ++r) {
        const auto row = matrix_.row(r);
        for (std::size_t c = 0; c < n_ids_; ++c) {
            if (row[c] != 0) {
                pivots.push_back(c);
                break;
            }
        }
    }
    return pivots;
}

std::uint32_t Decoder::seen_prefix_newest(const std::vector<std::size_t>& pivots) const {
    std::vector<bool> seen(n_ids_, false);
    for (std::size_t col : pivots) seen[col] = true;
    for (std::uint32_t id : delivered_)
        if (id >= live_floor_ && id < live_floor_ + n_ids_) seen[id - live_floor_] = true;
    std::size_t prefix = 0;
    while (prefix < n_ids_ && seen[prefix]) ++prefix;
    // Ids below the floor were all delivered, so the prefix starts there.
    return live_floor_ - 1 + static_cast<std::uint32_t>(prefix);
}

std::pair<std::uint32_t, std::uint32_t> Decoder::classify_seen() const {
    const auto pivots = current_pivots();
    const std::uint32_t seen_newest = seen_prefix_newest(pivots);

    std::vector<bool> seen(n_ids_, false);
    for (std::size_t col : pivots) seen[col] = true;
    std::uint32_t unseen_newest = 0;
    for (std::size_t i = 0; i < n_ids_; ++i) {
        const std::uint32_t id = live_floor_ + static_cast<std::uint32_t>(i);
        if (!seen[i] && !delivered_.count(id)) unseen_newest = std::max(unseen_newest, id);
    }
    unseen_newest = std::max(unseen_newest, unseen_high_water_);
    unseen_newest = std::max(unseen_newest, seen_newest);
    return {seen_newest, unseen_newest};
}

std::vector<NativeMessage> Decoder::extract_decoded() {
    std::vector<NativeMessage> out;
    for (std::size_t r = 0; r < matrix_.n_rows(); ++r) {
        const auto row = matrix_.row(r);
        std::size_t nonzero = 0;
        std::size_t col = 0;
        for (std::size_t c = 0; c < n_ids_; ++c) {
            if (row[c] != 0) {
                ++nonzero;
                col = c;
            }
        }
        if (nonzero != 1 || row[col] != 1) continue;
        const std::uint32_t id = live_floor_ + static_cast<std::uint32_t>(col);
        if (delivered_.count(id)) continue;
        const auto len_it = lengths_.find(id);
        if (len_it == lengths_.end())
            throw ProtocolError("decodable message " + std::to_string(id) +
                                " has no known length, cannot prune padding");
        NativeMessage m;
        m.id = id;
        const std::size_t len = std::min<std::size_t>(len_it->second, payload_width_);
        m.payload.assign(row.begin() + static_cast<std::ptrdiff_t>(n_ids_),
                         row.begin() + static_cast<std::ptrdiff_t>(n_ids_ + len));
        out.push_back(std::move(m));
        delivered_.insert(id);
    }
    // Rows are kept sorted by pivot column, so `out` is already ascending.
    return out;
}

void Decoder::prune_below(std::uint32_t id_oldest) {
    while (n_ids_ > 0 && live_floor_ < id_oldest && delivered_.count(live_floor_)) {
        // The delivered id's row is a singleton on column 0; RREF keeps
        // that column zero everywhere else, so dropping both is safe.
        for (std::size_t r = 0; r < matrix_.n_rows(); ++r) {
            if (matrix_.row(r)[0] != 0) {
                matrix_.erase_row(r);
                break;
            }
        }
        matrix_.erase_col(0);
        lengths_.erase(live_floor_);
        ++live_floor_;
        --n_ids_;
    }
}

}  // namespace ncrest
