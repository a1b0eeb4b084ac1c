#include <doctest.h>

#include <random>

#include "ncrest/errors.hpp"
#include "ncrest/rlnc.hpp"
#include "oracles.hpp"

using namespace ncrest;

namespace {

NativeMessage msg(std::uint32_t id, Bytes payload) { return NativeMessage{id, std::move(payload)}; }

Bytes random_payload(std::mt19937& rng, std::size_t len) {
    Bytes b(len);
    for (auto& v : b) v = static_cast<std::uint8_t>(rng());
    return b;
}

CodingWindow window_of(std::vector<NativeMessage> msgs, std::uint32_t cap = 0) {
    CodingWindow w;
    w.messages = std::move(msgs);
    w.max_size = cap;
    return w;
}

// The four-message exchange from the reference scenario: combinations
// p1+2p2, p1+4p2+5p3+p4, then repairs 2p3+3p4 and 5p3+6p4.
struct ScenarioFixture {
    std::vector<NativeMessage> msgs;
    Combination c1, c2, r1, r2;

    ScenarioFixture() {
        std::mt19937 rng(21);
        for (std::uint32_t id = 1; id <= 4; ++id)
            msgs.push_back(msg(id, random_payload(rng, 199 + id)));
        c1 = encode(window_of({msgs[0], msgs[1]}), scripted_coefficients({1, 2}));
        c2 = encode(window_of({msgs[0], msgs[1], msgs[2], msgs[3]}),
                    scripted_coefficients({1, 4, 5, 1}));
        r1 = encode(window_of({msgs[2], msgs[3]}), scripted_coefficients({2, 3}));
        r2 = encode(window_of({msgs[2], msgs[3]}), scripted_coefficients({5, 6}));
    }
};

}  // namespace

TEST_CASE("encode: identity combination of a single message") {
    NativeMessage p3 = msg(3, {0x10, 0x20, 0x30});
    const Combination c = encode(window_of({p3}), scripted_coefficients({1}));
    CHECK(c.id_oldest == 3);
    CHECK(c.id_newest == 3);
    CHECK(c.lengths == std::vector<std::uint32_t>{3});
    CHECK(c.coefficients == std::vector<gf256::Element>{1});
    CHECK(c.payload == p3.payload);
}

TEST_CASE("encode: repair combination matches the by-hand sum") {
    std::mt19937 rng(3);
    NativeMessage p3 = msg(3, random_payload(rng, 200));
    NativeMessage p4 = msg(4, random_payload(rng, 200));
    const Combination c = encode(window_of({p3, p4}), scripted_coefficients({2, 3}));
    for (std::size_t j = 0; j < 200; ++j)
        REQUIRE(c.payload[j] == (oracles::mul_shift_reduce(2, p3.payload[j]) ^
                                 oracles::mul_shift_reduce(3, p4.payload[j])));
}

TEST_CASE("encode: shorter messages are zero-padded") {
    NativeMessage pa = msg(1, {0xAA, 0xBB, 0xCC});
    NativeMessage pb = msg(2, {0x11, 0x22});
    const Combination c = encode(window_of({pa, pb}), scripted_coefficients({1, 1}));
    CHECK(c.payload.size() == 3);
    CHECK(c.payload[0] == (0xAA ^ 0x11));
    CHECK(c.payload[1] == (0xBB ^ 0x22));
    // Byte 2 of pb is padding (zero), so only pa contributes.
    CHECK(c.payload[2] == 0xCC);
    CHECK(c.lengths == std::vector<std::uint32_t>{3, 2});
}

TEST_CASE("encode: empty window refused") {
    CHECK_THROWS_AS(encode(window_of({}), scripted_coefficients({})), EmptyWindowError);
}

TEST_CASE("encode: production coefficients stay in [1,255]") {
    std::mt19937 rng(5);
    auto draw = uniform_coefficients(rng);
    for (int i = 0; i < 1000; ++i) CHECK(draw() != 0);
}

TEST_CASE("decoder_insert outcomes") {
    ScenarioFixture fx;
    Decoder d;
    CHECK(d.insert(fx.c1) == InsertOutcome::Independent);
    CHECK(d.rank() == 1);
    CHECK(d.insert(fx.c1) == InsertOutcome::Dependent);
    CHECK(d.rank() == 1);

    CHECK(d.insert(fx.c2) == InsertOutcome::Independent);
    // Repairs r1 and r2 are independent of each other because the minor
    // [[2,3],[5,6]] has determinant 2*6 ^ 3*5 = 12 ^ 15 = 3 != 0.
    CHECK(oracles::det_leibniz({{2, 3}, {5, 6}}) == 3);
    CHECK(d.insert(fx.r1) == InsertOutcome::Independent);
    CHECK(d.insert(fx.r2) == InsertOutcome::Independent);
    CHECK(d.rank() == 4);
}

TEST_CASE("dependent insert leaves state unchanged") {
    ScenarioFixture fx;
    Decoder d;
    d.insert(fx.c1);
    d.insert(fx.c2);
    const auto ack_before = d.classify_seen();
    const auto rank_before = d.rank();
    // A random recombination of c1 alone is dependent.
    Combination dup = fx.c1;
    CHECK(d.insert(dup) == InsertOutcome::Dependent);
    CHECK(d.classify_seen() == ack_before);
    CHECK(d.rank() == rank_before);
    CHECK(d.extract_decoded().empty());
}

TEST_CASE("classify_seen on the worked example") {
    ScenarioFixture fx;
    Decoder d;
    CHECK(d.classify_seen() == std::pair<std::uint32_t, std::uint32_t>{0, 0});

    d.insert(fx.c1);
    // Single combination p1+2p2: pivot at p1, p2 involved but unseen.
    CHECK(d.classify_seen() == std::pair<std::uint32_t, std::uint32_t>{1, 2});

    d.insert(fx.c2);
    CHECK(d.classify_seen() == std::pair<std::uint32_t, std::uint32_t>{2, 4});

    d.insert(fx.r1);
    d.insert(fx.r2);
    d.extract_decoded();
    CHECK(d.classify_seen() == std::pair<std::uint32_t, std::uint32_t>{4, 4});
}

TEST_CASE("extract_decoded") {
    ScenarioFixture fx;
    Decoder d;
    d.insert(fx.c1);
    d.insert(fx.c2);
    // Rank 2 < 4 unknowns: the ack can be generated but nothing decodes.
    CHECK(d.extract_decoded().empty());

    d.insert(fx.r1);
    d.insert(fx.r2);
    const auto decoded = d.extract_decoded();
    REQUIRE(decoded.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(decoded[i].id == fx.msgs[i].id);
        CHECK(decoded[i].payload == fx.msgs[i].payload);  // padding pruned
    }
}

TEST_CASE("extract_decoded: identity combination decodes immediately") {
    NativeMessage p1 = msg(1, {9, 8, 7});
    Decoder d;
    d.insert(encode(window_of({p1}), scripted_coefficients({1})));
    const auto decoded = d.extract_decoded();
    REQUIRE(decoded.size() == 1);
    CHECK(decoded[0] == p1);
}

TEST_CASE("prune_below") {
    ScenarioFixture fx;

    SUBCASE("delivered prefix is pruned") {
        Decoder d;
        d.insert(encode(window_of({fx.msgs[0]}), scripted_coefficients({1})));
        d.insert(encode(window_of({fx.msgs[1]}), scripted_coefficients({1})));
        d.extract_decoded();
        d.prune_below(3);
        CHECK(d.live_floor() == 3);
        CHECK(d.live_columns() == 0);
        CHECK(d.classify_seen() == std::pair<std::uint32_t, std::uint32_t>{2, 2});
    }

    SUBCASE("prune at the floor is a no-op") {
        Decoder d;
        d.insert(fx.c1);
        d.prune_below(1);
        CHECK(d.live_floor() == 1);
        CHECK(d.live_columns() == 2);
    }

    SUBCASE("undelivered ids are never pruned") {
        Decoder d;
        // p1 decodes; p2 is involved but unseen.
        d.insert(encode(window_of({fx.msgs[0]}), scripted_coefficients({1})));
        d.insert(fx.c1);  // p1 + 2 p2
        d.extract_decoded();
        CHECK(d.delivered().count(1) == 1);
        d.prune_below(3);
        CHECK(d.live_floor() == 2);  // stopped at undelivered p2
        CHECK(d.live_columns() == 1);
        // Decoding still completes once p2's own combination arrives.
        d.insert(encode(window_of({fx.msgs[1]}), scripted_coefficients({7})));
        const auto decoded = d.extract_decoded();
        REQUIRE(decoded.size() == 1);
        CHECK(decoded[0] == fx.msgs[1]);
    }
}

TEST_CASE("stale and gapped combinations are protocol errors") {
    ScenarioFixture fx;
    Decoder d;
    d.insert(encode(window_of({fx.msgs[0]}), scripted_coefficients({1})));
    d.extract_decoded();
    d.prune_below(2);

    Combination below = encode(window_of({fx.msgs[0]}), scripted_coefficients({3}));
    CHECK_THROWS_AS(d.insert(below), ProtocolError);

    Combination gapped = encode(window_of({fx.msgs[2], fx.msgs[3]}), scripted_coefficients({1, 1}));
    CHECK_THROWS_AS(d.insert(gapped), ProtocolError);  // id 2 never covered

    Combination malformed = fx.c1;
    malformed.lengths.pop_back();
    CHECK_THROWS_AS(d.insert(malformed), ProtocolError);
}

TEST_CASE("roundtrip: random windows decode byte-identically, 10^3 cases") {
    std::mt19937 rng(31);
    auto draw = uniform_coefficients(rng);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + rng() % 8;
        std::vector<NativeMessage> msgs;
        for (std::size_t i = 0; i < k; ++i)
            msgs.push_back(msg(static_cast<std::uint32_t>(i + 1),
                               random_payload(rng, 1 + rng() % 300)));
        Decoder d;
        std::size_t independent = 0;
        while (independent < k) {
            const Combination c = encode(window_of(msgs), draw);
            if (d.insert(c) == InsertOutcome::Independent) ++independent;
        }
        const auto decoded = d.extract_decoded();
        REQUIRE(decoded.size() == k);
        for (std::size_t i = 0; i < k; ++i) REQUIRE(decoded[i] == msgs[i]);
    }
}

TEST_CASE("acks are monotone and seen count matches rank plus deliveries") {
    std::mt19937 rng(37);
    auto draw = uniform_coefficients(rng);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 2 + rng() % 6;
        std::vector<NativeMessage> msgs;
        for (std::size_t i = 0; i < k; ++i)
            msgs.push_back(msg(static_cast<std::uint32_t>(i + 1), random_payload(rng, 1 + rng() % 40)));
        Decoder d;
        std::uint32_t prev_seen = 0, prev_unseen = 0;
        for (int step = 0; step < 12; ++step) {
            // Random contiguous window starting anywhere below the frontier.
            const std::size_t a = rng() % k;
            const std::size_t b = a + rng() % (k - a);
            std::vector<NativeMessage> win(msgs.begin() + a, msgs.begin() + b + 1);
            Combination c = encode(window_of(win), draw);
            if (c.id_oldest > d.live_floor() + d.live_columns()) continue;  // would gap
            d.insert(c);
            d.extract_decoded();
            const auto [s, u] = d.classify_seen();
            REQUIRE(s <= u);
            REQUIRE(s >= prev_seen);
            REQUIRE(u >= prev_unseen);
            prev_seen = s;
            prev_unseen = u;

            // Seen live ids = pivots + delivered within the live range.
            std::size_t delivered_live = 0;
            for (std::uint32_t id : d.delivered())
                if (id >= d.live_floor()) ++delivered_live;
            // Delivered ids are always pivots of singleton rows, so the
            // seen set size equals the rank here.
            CHECK(delivered_live <= d.rank());
        }
    }
}

TEST_CASE("a combination inside the seen span never increases rank") {
    ScenarioFixture fx;
    Decoder d;
    // Deliver p1 and p2 individually: both seen (and delivered).
    d.insert(encode(window_of({fx.msgs[0]}), scripted_coefficients({1})));
    d.insert(encode(window_of({fx.msgs[1]}), scripted_coefficients({1})));
    d.extract_decoded();
    const auto rank = d.rank();
    // Any combination spanning only {p1, p2} is now dependent.
    std::mt19937 rng(41);
    auto draw = uniform_coefficients(rng);
    for (int i = 0; i < 20; ++i) {
        const Combination c = encode(window_of({fx.msgs[0], fx.msgs[1]}), draw);
        CHECK(d.insert(c) == InsertOutcome::Dependent);
    }
    CHECK(d.rank() == rank);
}

TEST_CASE("two random combinations over a 2-message window collide with rate ~1/255") {
    std::mt19937 rng(43);
    auto draw = uniform_coefficients(rng);
    const int trials = 10000;
    int dependent = 0;
    for (int i = 0; i < trials; ++i) {
        // Dependence of (a1,b1), (a2,b2) is a zero 2x2 determinant.
        const std::uint8_t a1 = draw(), b1 = draw(), a2 = draw(), b2 = draw();
        const std::uint8_t det = gf256::add(gf256::mul(a1, b2), gf256::mul(b1, a2));
        if (det == 0) ++dependent;
    }
    const double p_hat = static_cast<double>(dependent) / trials;
    const double p_expected = 1.0 / 255.0;
    const double sigma = std::sqrt(p_expected * (1 - p_expected) / trials);
    CHECK(p_hat <= p_expected + 3 * sigma);
    CHECK(p_hat >= p_expected - 3 * sigma);
}
