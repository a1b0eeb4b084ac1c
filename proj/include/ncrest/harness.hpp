#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncrest/protocol.hpp"
#include "ncrest/transport.hpp"

namespace ncrest {

// Eq-style reference for the expected number of additional request
// messages without coding: N/(1-p) - N. Throws DomainError outside the
// domain.
double theory_additional_uncoded(std::uint32_t n, double p);

// With coding: N/(1-(alpha*p)) - N — only request-direction losses cost
// additional transmissions. Equals the uncoded value at alpha = 1.
double theory_additional_coded(std::uint32_t n, double p, double alpha);

enum class Transport { Simulated, Http };

struct ExperimentConfig {
    Mode mode = Mode::Coded;
    Transport transport = Transport::Simulated;
    std::uint32_t n_messages = 100;
    double p = 0.0;
    double alpha = 0.5;
    std::uint32_t scb = 5;
    std::int64_t timeout_ms = 15000;
    std::int64_t arrival_interval_ms = 1000;
    std::uint32_t payload_min = 199;
    std::uint32_t payload_max = 204;
    std::uint64_t seed = 1;
    std::uint32_t repetitions = 1;
    std::int64_t latency_ms = 5;
    // 0 means the default guard of 10^4 * timeout.
    std::int64_t time_ceiling_ms = 0;
    // Arrival ordinals (1-based) the server refuses as busy.
    std::set<std::uint64_t> busy_ordinals;

    std::int64_t effective_time_ceiling() const {
        return time_ceiling_ms > 0 ? time_ceiling_ms : 10000 * timeout_ms;
    }
    double theory_additional() const;
    void validate() const;  // throws DomainError
};

struct RunMetrics {
    std::uint64_t total_request_transmissions = 0;
    std::int64_t additional_messages = 0;  // transmissions - N
    std::uint64_t total_request_bytes = 0;
    std::uint64_t native_payload_bytes = 0;
    std::int64_t additional_bytes = 0;     // request bytes - native payload bytes
    std::int64_t completion_time_ms = 0;   // virtual (sim) or wall (http)
    double avg_decode_time_ms = 0.0;       // GJE + extraction per coded request
    double avg_code_time_ms = 0.0;         // encode per coded send
    std::uint64_t response_bytes = 0;
    std::uint64_t responses_sent = 0;
    std::uint64_t busy_refusals = 0;
    std::uint64_t dependent_arrivals = 0;
    std::uint64_t timeouts = 0;
    std::uint64_t stale_acks = 0;
    std::uint64_t duplicate_uncoded = 0;

    bool operator==(const RunMetrics&) const = default;

    // Everything except the wall-clock codec timings, which are physical
    // measurements and therefore not reproducible bit for bit.
    bool deterministic_fields_equal(const RunMetrics& o) const;
};

// Overrides for scripted runs (protocol-conformance traces): explicit
// arrival instants, payloads, coefficients and loss sequences.
struct SimScript {
    std::vector<std::int64_t> arrival_times_ms;  // one per message, index = id-1
    std::vector<Bytes> payloads;                 // optional, same indexing
    CoefficientSource coefficients;              // optional override
    std::optional<LossSchedule> schedule;        // optional override
};

RunMetrics run_simulated(const ExperimentConfig& cfg, const SimScript* script = nullptr,
                         TraceLog* trace = nullptr);
RunMetrics run_http(const ExperimentConfig& cfg);

// Dispatches on cfg.transport. Throws RunAbortedError when the virtual
// time ceiling is exceeded.
RunMetrics run_experiment(const ExperimentConfig& cfg);

// Deterministic JSON-shaped payload of exactly target_len bytes.
Bytes make_payload(std::uint32_t id, std::uint32_t target_len, std::mt19937& rng);

struct GridRow {
    ExperimentConfig config;      // repetitions == 1; seed = the seed actually used
    std::uint32_t rep = 0;
    bool ok = false;
    std::string error;
    RunMetrics metrics;
    double theory_additional = 0.0;

    bool operator==(const GridRow&) const = default;
};

using Dataset = std::vector<GridRow>;

// One row per (config, repetition). Failed rows carry the error text and
// the grid keeps going.
Dataset run_grid(const std::vector<ExperimentConfig>& configs);

std::string dataset_to_csv(const Dataset& rows);
Dataset dataset_from_csv(const std::string& csv);  // lossless inverse

// Mean/stderr summaries per configuration, grouped the way the reference
// tables are laid out.
std::string summary_tables(const Dataset& rows);

// Line-based key=value config files; comma-separated values expand to a
// cross product of configurations (except busy_ordinals, whose commas
// list the ordinals themselves).
std::vector<ExperimentConfig> parse_config_file(const std::string& text);

}  // namespace ncrest
