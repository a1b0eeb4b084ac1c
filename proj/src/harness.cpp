#include "ncrest/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ncrest/errors.hpp"
#include "ncrest/random.hpp"
#include "ncrest/server.hpp"

namespace ncrest {

double theory_additional_uncoded(std::uint32_t n, double p) {
    if (p < 0.0 || p >= 1.0) throw DomainError("theory: p must be in [0, 1)");
    return n / (1.0 - p) - n;
}

double theory_additional_coded(std::uint32_t n, double p, double alpha) {
    if (p < 0.0 || alpha < 0.0) throw DomainError("theory: p and alpha must be >= 0");
    if (alpha * p >= 1.0) throw DomainError("theory: alpha*p must be < 1");
    return n / (1.0 - alpha * p) - n;
}

double ExperimentConfig::theory_additional() const {
    return mode == Mode::Uncoded ? theory_additional_uncoded(n_messages, p)
                                 : theory_additional_coded(n_messages, p, alpha);
}

void ExperimentConfig::validate() const {
    if (p < 0.0 || p >= 1.0) throw DomainError("config: p must be in [0, 1)");
    if (alpha < 0.0 || alpha > 1.0) throw DomainError("config: alpha must be in [0, 1]");
    if (scb < 1) throw DomainError("config: scb must be >= 1");
    if (payload_min < 1 || payload_max > 65536 || payload_min > payload_max)
        throw DomainError("config: payload range must sit inside [1, 65536]");
    if (timeout_ms <= 0) throw DomainError("config: timeout must be positive");
    if (arrival_interval_ms < 0 || latency_ms < 0)
        throw DomainError("config: intervals must be non-negative");
    if (repetitions < 1) throw DomainError("config: repetitions must be >= 1");
}

bool RunMetrics::deterministic_fields_equal(const RunMetrics& o) const {
    RunMetrics a = *this;
    RunMetrics b = o;
    a.avg_decode_time_ms = b.avg_decode_time_ms = 0.0;
    a.avg_code_time_ms = b.avg_code_time_ms = 0.0;
    return a == b;
}

Bytes make_payload(std::uint32_t id, std::uint32_t target_len, std::mt19937& rng) {
    static constexpr char kCharset[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    const std::string prefix = "{\"id\":" + std::to_string(id) + ",\"data\":\"";
    const std::string suffix = "\"}";
    Bytes out;
    out.reserve(target_len);
    if (target_len >= prefix.size() + suffix.size()) {
        out.insert(out.end(), prefix.begin(), prefix.end());
        const std::size_t fill = target_len - prefix.size() - suffix.size();
        for (std::size_t i = 0; i < fill; ++i)
            out.push_back(static_cast<std::uint8_t>(kCharset[draw_uniform(rng, 0, 61)]));
        out.insert(out.end(), suffix.begin(), suffix.end());
    } else {
        // Too short to be JSON-shaped; still honor the exact length.
        for (std::uint32_t i = 0; i < target_len; ++i)
            out.push_back(static_cast<std::uint8_t>(kCharset[draw_uniform(rng, 0, 61)]));
    }
    return out;
}

namespace {

// One simulated run: a single-threaded event loop over the virtual clock
// driving the client and server state machines through the lossy channel.
class SimRun {
  public:
    SimRun(const ExperimentConfig& cfg, const SimScript* script, TraceLog* trace)
        : cfg_(cfg),
          script_(script),
          trace_(trace),
          payload_rng_(make_stream(cfg.seed, Stream::Payload)),
          coeff_rng_(make_stream(cfg.seed, Stream::Coefficients)),
          channel_(script && script->schedule ? *script->schedule
                                              : LossSchedule(cfg.p, cfg.alpha, cfg.seed),
                   cfg.latency_ms),
          client_(cfg.mode, cfg.scb,
                  script && script->coefficients ? script->coefficients
                                                 : uniform_coefficients(coeff_rng_)),
          server_(cfg.mode) {
        server_.set_busy_schedule(cfg.busy_ordinals);
    }

    RunMetrics run() {
        if (cfg_.n_messages == 0) return collect();
        for (std::uint32_t i = 0; i < cfg_.n_messages; ++i) {
            const std::int64_t at =
                (script_ && !script_->arrival_times_ms.empty())
                    ? script_->arrival_times_ms[i]
                    : static_cast<std::int64_t>(i) * cfg_.arrival_interval_ms;
            clock_.schedule(at, [this, i] { on_arrival(i); });
        }
        const std::int64_t ceiling = cfg_.effective_time_ceiling();
        while (!done_) {
            if (!clock_.run_next())
                throw RunAbortedError("simulation stalled: event queue drained at t=" +
                                      std::to_string(clock_.now()) + "ms before completion");
            if (clock_.now() > ceiling)
                throw RunAbortedError("virtual time ceiling " + std::to_string(ceiling) +
                                      "ms exceeded (delivered " +
                                      std::to_string(server_.sink().size()) + "/" +
                                      std::to_string(cfg_.n_messages) + ")");
        }
        return collect();
    }

  private:
    void emit(TraceEvent ev, SendKind kind = SendKind::Fresh, std::uint32_t oldest = 0,
              std::uint32_t newest = 0, std::uint64_t bytes = 0, std::uint32_t seen = 0,
              std::uint32_t unseen = 0) {
        if (!trace_) return;
        trace_->push_back(TraceRecord{clock_.now(), ev, kind, oldest, newest, bytes, seen, unseen});
    }

    void on_arrival(std::uint32_t index) {
        if (done_) return;
        Bytes payload;
        if (script_ && index < script_->payloads.size()) {
            payload = script_->payloads[index];
        } else {
            const std::uint32_t len = draw_uniform(payload_rng_, cfg_.payload_min, cfg_.payload_max);
            payload = make_payload(index + 1, len, payload_rng_);
        }
        client_.push_message(std::move(payload));
        emit(TraceEvent::Arrival, SendKind::Fresh, index + 1, index + 1);
        pump();
    }

    void pump() {
        if (done_ || client_.has_outstanding() || !client_.can_send()) return;
        auto out = client_.prepare_send();
        if (!out) return;
        ++epoch_;
        const std::int64_t sent_at = clock_.now();
        emit(TraceEvent::Send, out->kind, out->window_oldest, out->window_newest,
             out->request.wire_bytes());
        clock_.schedule(sent_at + cfg_.timeout_ms, [this, e = epoch_] { on_timeout(e); });
        const DeliveryOutcome d = channel_.send_request(sent_at);
        if (!d.delivered) {
            emit(TraceEvent::RequestLost, out->kind, out->window_oldest, out->window_newest);
            return;
        }
        clock_.schedule(d.deliver_at, [this, e = epoch_, req = std::move(out->request)] {
            on_server_rx(req, e);
        });
    }

    void on_server_rx(const WireRequest& req, std::uint64_t epoch) {
        if (done_) return;
        emit(TraceEvent::RequestDelivered);
        const HandleResult r = server_.handle(req);
        if (r.status == HandleStatus::Refused) {
            emit(TraceEvent::Busy);
            return;  // nothing stored, nothing acked; the timeout will fire
        }
        if (r.status == HandleStatus::Error) return;  // no ack either
        emit(TraceEvent::Response, SendKind::Fresh, 0, 0, r.response_body.size(), r.seen_newest,
             r.unseen_newest);
        if (server_.complete(cfg_.n_messages)) {
            done_ = true;
            completion_time_ = clock_.now();
            emit(TraceEvent::Complete);
            return;
        }
        const DeliveryOutcome d = channel_.send_response(clock_.now());
        if (!d.delivered) {
            emit(TraceEvent::ResponseLost);
            return;
        }
        clock_.schedule(d.deliver_at, [this, e = epoch, body = r.response_body] {
            on_client_rx(body, e);
        });
    }

    void on_client_rx(const std::string& body, std::uint64_t epoch) {
        if (done_) return;
        if (epoch != epoch_ || !client_.has_outstanding()) {
            // Response to a request the client already gave up on.
            ++transport_stale_;
            emit(TraceEvent::StaleAck);
            return;
        }
        const auto [seen, unseen] = parse_response(body);
        emit(TraceEvent::ResponseDelivered, SendKind::Fresh, 0, 0, body.size(), seen, unseen);
        client_.on_response(seen, unseen);
        pump();
    }

    void on_timeout(std::uint64_t epoch) {
        if (done_ || epoch != epoch_ || !client_.has_outstanding()) return;  // superseded
        client_.on_timeout();
        emit(TraceEvent::Timeout);
        pump();
    }

    RunMetrics collect() const {
        RunMetrics m;
        const ClientStats& cs = client_.stats();
        const ServerStats& ss = server_.stats();
        m.total_request_transmissions = cs.transmissions;
        m.additional_messages =
            static_cast<std::int64_t>(cs.transmissions) - cfg_.n_messages;
        m.total_request_bytes = cs.request_bytes;
        m.native_payload_bytes = cs.native_payload_bytes;
        m.additional_bytes = static_cast<std::int64_t>(cs.request_bytes) -
                             static_cast<std::int64_t>(cs.native_payload_bytes);
        m.completion_time_ms = completion_time_;
        m.avg_decode_time_ms =
            ss.decode_samples ? static_cast<double>(ss.decode_time_ns) / 1e6 / ss.decode_samples
                              : 0.0;
        m.avg_code_time_ms =
            cs.coded_sends ? static_cast<double>(cs.code_time_ns) / 1e6 / cs.coded_sends : 0.0;
        m.response_bytes = ss.response_bytes;
        m.responses_sent = ss.responses_sent;
        m.busy_refusals = ss.busy_refusals;
        m.dependent_arrivals = ss.dependent_insertions;
        m.timeouts = cs.timeouts;
        m.stale_acks = cs.stale_acks + transport_stale_;
        m.duplicate_uncoded = ss.duplicate_uncoded;
        return m;
    }

    ExperimentConfig cfg_;
    const SimScript* script_;
    TraceLog* trace_;
    std::mt19937 payload_rng_;
    std::mt19937 coeff_rng_;
    SimChannel channel_;
    Client client_;
    ServerSession server_;
    VirtualClock clock_;
    std::uint64_t epoch_ = 0;
    std::uint64_t transport_stale_ = 0;
    bool done_ = false;
    std::int64_t completion_time_ = 0;
};

}  // namespace

RunMetrics run_simulated(const ExperimentConfig& cfg, const SimScript* script, TraceLog* trace) {
    cfg.validate();
    SimRun run(cfg, script, trace);
    return run.run();
}

RunMetrics run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    return cfg.transport == Transport::Simulated ? run_simulated(cfg) : run_http(cfg);
}

// ---------------------------------------------------------------------------
// Grid, CSV, tables

namespace {

const char* mode_name(Mode m) { return m == Mode::Coded ? "coded" : "uncoded"; }
const char* transport_name(Transport t) {
    return t == Transport::Simulated ? "sim" : "http";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return out;
}

const std::vector<std::string> kCsvColumns = {
    "mode", "transport", "n", "p", "alpha", "scb", "timeout_ms", "arrival_interval_ms",
    "payload_min", "payload_max", "latency_ms", "time_ceiling_ms", "busy_ordinals", "seed", "rep",
    "ok", "error", "total_request_transmissions", "additional_messages", "total_request_bytes",
    "native_payload_bytes", "additional_bytes", "completion_time_ms", "avg_decode_time_ms",
    "avg_code_time_ms", "response_bytes", "responses_sent", "busy_refusals",
    "dependent_arrivals", "timeouts", "stale_acks", "duplicate_uncoded", "theory_additional"};

std::string csv_header() {
    std::string h;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        if (i) h += ",";
        h += kCsvColumns[i];
    }
    return h;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            parts.push_back(line.substr(begin, i - begin));
            begin = i + 1;
        }
    }
    return parts;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DomainError(std::string("csv: malformed ") + what + " '" + s + "'");
    return v;
}

std::int64_t to_i64(const std::string& s, const char* what) {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DomainError(std::string("csv: malformed ") + what + " '" + s + "'");
    return v;
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError(std::string("csv: malformed ") + what + " '" + s + "'");
    }
}

}  // namespace

Dataset run_grid(const std::vector<ExperimentConfig>& configs) {
    Dataset rows;
    for (const ExperimentConfig& cfg : configs) {
        for (std::uint32_t rep = 0; rep < std::max<std::uint32_t>(1, cfg.repetitions); ++rep) {
            GridRow row;
            row.config = cfg;
            row.config.repetitions = 1;
            row.config.seed = rep == 0 ? cfg.seed : rep_seed(cfg.seed, rep);
            row.rep = rep;
            try {
                row.theory_additional = cfg.theory_additional();
                row.metrics = run_experiment(row.config);
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string dataset_to_csv(const Dataset& rows) {
    std::string out = csv_header() + "\n";
    for (const GridRow& r : rows) {
        const ExperimentConfig& c = r.config;
        const RunMetrics& m = r.metrics;
        std::string busy;
        for (std::uint64_t b : c.busy_ordinals) {
            if (!busy.empty()) busy += ";";
            busy += std::to_string(b);
        }
        std::vector<std::string> f = {
            mode_name(c.mode),
            transport_name(c.transport),
            std::to_string(c.n_messages),
            format_double(c.p),
            format_double(c.alpha),
            std::to_string(c.scb),
            std::to_string(c.timeout_ms),
            std::to_string(c.arrival_interval_ms),
            std::to_string(c.payload_min),
            std::to_string(c.payload_max),
            std::to_string(c.latency_ms),
            std::to_string(c.time_ceiling_ms),
            busy,
            std::to_string(c.seed),
            std::to_string(r.rep),
            r.ok ? "1" : "0",
            sanitize(r.error),
            std::to_string(m.total_request_transmissions),
            std::to_string(m.additional_messages),
            std::to_string(m.total_request_bytes),
            std::to_string(m.native_payload_bytes),
            std::to_string(m.additional_bytes),
            std::to_string(m.completion_time_ms),
            format_double(m.avg_decode_time_ms),
            format_double(m.avg_code_time_ms),
            std::to_string(m.response_bytes),
            std::to_string(m.responses_sent),
            std::to_string(m.busy_refusals),
            std::to_string(m.dependent_arrivals),
            std::to_string(m.timeouts),
            std::to_string(m.stale_acks),
            std::to_string(m.duplicate_uncoded),
            format_double(r.theory_additional),
        };
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out += ",";
            out += f[i];
        }
        out += "\n";
    }
    return out;
}

Dataset dataset_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw DomainError("csv: empty input");
    if (line != csv_header()) throw DomainError("csv: unexpected header row");
    Dataset rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != kCsvColumns.size())
            throw DomainError("csv: row has " + std::to_string(f.size()) + " fields, expected " +
                              std::to_string(kCsvColumns.size()));
        GridRow r;
        ExperimentConfig& c = r.config;
        std::size_t i = 0;
        const std::string mode = f[i++];
        if (mode == "coded")
            c.mode = Mode::Coded;
        else if (mode == "uncoded")
            c.mode = Mode::Uncoded;
        else
            throw DomainError("csv: unknown mode '" + mode + "'");
        const std::string transport = f[i++];
        if (transport == "sim")
            c.transport = Transport::Simulated;
        else if (transport == "http")
            c.transport = Transport::Http;
        else
            throw DomainError("csv: unknown transport '" + transport + "'");
        c.n_messages = static_cast<std::uint32_t>(to_u64(f[i++], "n"));
        c.p = to_double(f[i++], "p");
        c.alpha = to_double(f[i++], "alpha");
        c.scb = static_cast<std::uint32_t>(to_u64(f[i++], "scb"));
        c.timeout_ms = to_i64(f[i++], "timeout_ms");
        c.arrival_interval_ms = to_i64(f[i++], "arrival_interval_ms");
        c.payload_min = static_cast<std::uint32_t>(to_u64(f[i++], "payload_min"));
        c.payload_max = static_cast<std::uint32_t>(to_u64(f[i++], "payload_max"));
        c.latency_ms = to_i64(f[i++], "latency_ms");
        c.time_ceiling_ms = to_i64(f[i++], "time_ceiling_ms");
        for (const std::string& b : split(f[i], ';'))
            if (!b.empty()) c.busy_ordinals.insert(to_u64(b, "busy ordinal"));
        ++i;
        c.seed = to_u64(f[i++], "seed");
        c.repetitions = 1;
        r.rep = static_cast<std::uint32_t>(to_u64(f[i++], "rep"));
        r.ok = f[i++] == "1";
        r.error = f[i++];
        RunMetrics& m = r.metrics;
        m.total_request_transmissions = to_u64(f[i++], "total_request_transmissions");
        m.additional_messages = to_i64(f[i++], "additional_messages");
        m.total_request_bytes = to_u64(f[i++], "total_request_bytes");
        m.native_payload_bytes = to_u64(f[i++], "native_payload_bytes");
        m.additional_bytes = to_i64(f[i++], "additional_bytes");
        m.completion_time_ms = to_i64(f[i++], "completion_time_ms");
        m.avg_decode_time_ms = to_double(f[i++], "avg_decode_time_ms");
        m.avg_code_time_ms = to_double(f[i++], "avg_code_time_ms");
        m.response_bytes = to_u64(f[i++], "response_bytes");
        m.responses_sent = to_u64(f[i++], "responses_sent");
        m.busy_refusals = to_u64(f[i++], "busy_refusals");
        m.dependent_arrivals = to_u64(f[i++], "dependent_arrivals");
        m.timeouts = to_u64(f[i++], "timeouts");
        m.stale_acks = to_u64(f[i++], "stale_acks");
        m.duplicate_uncoded = to_u64(f[i++], "duplicate_uncoded");
        r.theory_additional = to_double(f[i++], "theory_additional");
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

struct Aggregate {
    std::vector<double> add_msgs, add_bytes, completion_ms, resp_bytes, decode_ms;
    double theory = 0.0;
    std::size_t failures = 0;
};

std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace

std::string summary_tables(const Dataset& rows) {
    // Group key: everything that identifies a curve except p.
    using Key = std::tuple<std::string, std::string, std::uint32_t, double, std::uint32_t>;
    std::map<Key, std::map<double, Aggregate>> groups;
    for (const GridRow& r : rows) {
        const Key key{mode_name(r.config.mode), transport_name(r.config.transport),
                      r.config.n_messages, r.config.alpha, r.config.scb};
        Aggregate& agg = groups[key][r.config.p];
        if (!r.ok) {
            ++agg.failures;
            continue;
        }
        agg.add_msgs.push_back(static_cast<double>(r.metrics.additional_messages));
        agg.add_bytes.push_back(static_cast<double>(r.metrics.additional_bytes));
        agg.completion_ms.push_back(static_cast<double>(r.metrics.completion_time_ms));
        agg.resp_bytes.push_back(static_cast<double>(r.metrics.response_bytes));
        agg.decode_ms.push_back(r.metrics.avg_decode_time_ms);
        agg.theory = r.theory_additional;
    }

    std::ostringstream out;
    for (const auto& [key, by_p] : groups) {
        const auto& [mode, transport, n, alpha, scb] = key;
        out << "== " << mode << " transport=" << transport << " n=" << n;
        if (mode == "coded") out << " alpha=" << alpha << " scb=" << scb;
        else out << " alpha=" << alpha;
        out << " ==\n";
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%6s %12s %8s %10s %14s %14s %12s %8s\n", "p",
                      "add_msgs", "stderr", "theory", "add_bytes", "resp_bytes", "completion_s",
                      "dec_ms");
        out << buf;
        for (const auto& [p, agg] : by_p) {
            const auto [m_msgs, se_msgs] = mean_stderr(agg.add_msgs);
            const auto [m_bytes, se_bytes] = mean_stderr(agg.add_bytes);
            (void)se_bytes;
            const auto [m_compl, se_compl] = mean_stderr(agg.completion_ms);
            (void)se_compl;
            const auto [m_resp, se_resp] = mean_stderr(agg.resp_bytes);
            (void)se_resp;
            const auto [m_dec, se_dec] = mean_stderr(agg.decode_ms);
            (void)se_dec;
            std::snprintf(buf, sizeof(buf), "%6.2f %12.2f %8.2f %10.2f %14.1f %14.1f %12.1f %8.4f",
                          p, m_msgs, se_msgs, agg.theory, m_bytes, m_resp, m_compl / 1000.0,
                          m_dec);
            out << buf;
            if (agg.failures) out << "   [" << agg.failures << " failed]";
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

std::vector<ExperimentConfig> parse_config_file(const std::string& text) {
    std::map<std::string, std::vector<std::string>> values;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // Trim.
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "busy_ordinals") {
            values[key] = {value};  // semicolon-separated list, never expanded
        } else {
            values[key] = split(value, ',');
        }
    }

    std::vector<ExperimentConfig> configs{ExperimentConfig{}};
    auto expand = [&configs](const std::string& key, const std::vector<std::string>& vals,
                             auto&& apply) {
        std::vector<ExperimentConfig> next;
        for (const ExperimentConfig& base : configs) {
            for (const std::string& v : vals) {
                ExperimentConfig c = base;
                apply(c, v, key);
                next.push_back(std::move(c));
            }
        }
        configs = std::move(next);
    };

    for (const auto& [key, vals] : values) {
        expand(key, vals, [](ExperimentConfig& c, const std::string& v, const std::string& k) {
            if (k == "mode") {
                if (v == "coded") c.mode = Mode::Coded;
                else if (v == "uncoded") c.mode = Mode::Uncoded;
                else throw DomainError("config: unknown mode '" + v + "'");
            } else if (k == "transport") {
                if (v == "sim" || v == "simulated") c.transport = Transport::Simulated;
                else if (v == "http") c.transport = Transport::Http;
                else throw DomainError("config: unknown transport '" + v + "'");
            } else if (k == "n") c.n_messages = static_cast<std::uint32_t>(to_u64(v, "n"));
            else if (k == "p") c.p = to_double(v, "p");
            else if (k == "alpha") c.alpha = to_double(v, "alpha");
            else if (k == "scb") c.scb = static_cast<std::uint32_t>(to_u64(v, "scb"));
            else if (k == "timeout_ms") c.timeout_ms = to_i64(v, "timeout_ms");
            else if (k == "arrival_interval_ms")
                c.arrival_interval_ms = to_i64(v, "arrival_interval_ms");
            else if (k == "payload_min")
                c.payload_min = static_cast<std::uint32_t>(to_u64(v, "payload_min"));
            else if (k == "payload_max")
                c.payload_max = static_cast<std::uint32_t>(to_u64(v, "payload_max"));
            else if (k == "seed") c.seed = to_u64(v, "seed");
            else if (k == "reps") c.repetitions = static_cast<std::uint32_t>(to_u64(v, "reps"));
            else if (k == "latency_ms") c.latency_ms = to_i64(v, "latency_ms");
            else if (k == "time_ceiling_ms") c.time_ceiling_ms = to_i64(v, "time_ceiling_ms");
            else if (k == "busy_ordinals") {
                for (const std::string& b : split(v, ';'))
                    if (!b.empty()) c.busy_ordinals.insert(to_u64(b, "busy ordinal"));
            } else {
                throw DomainError("config: unknown key '" + k + "'");
            }
        });
    }
    for (const ExperimentConfig& c : configs) c.validate();
    return configs;
}

}  // namespace ncrest
